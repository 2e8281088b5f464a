//! Thermodynamics of a harmonically trapped ideal Bose gas with
//! Wigner-Dunkl deformed statistics.
//!
//! Energies and temperatures are in units of the trap quantum (k_B = 1).

pub mod dunkl;
pub mod error;
pub mod exact_spectrum;
pub mod roots;
pub mod specfun;
pub mod thermo;

pub use dunkl::{Fugacity, GasSpec, ReducedTemperature};
pub use error::{Error, Result};
