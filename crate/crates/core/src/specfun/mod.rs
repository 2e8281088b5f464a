//! Special-function kernel: gamma, zeta, eta and the real-order
//! polylogarithm on [-1, 1], plus the quadrature routines behind them.

mod gamma;
mod polylog;
pub mod quadrature;
mod zeta;

pub use gamma::gamma;
pub use polylog::{polylog, polylog_integral_oracle, Order, PolylogValue, MAX_ERROR, SERIES_RADIUS};
pub use zeta::{eta, zeta};

