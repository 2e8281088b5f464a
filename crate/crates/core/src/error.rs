use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
///
/// Divergences are reported as values of this type, never as infinities, so
/// that callers can tell a missing phase transition apart from a numerical
/// failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The quantity is infinite at the requested point.
    #[error("divergence: {0}")]
    Divergence(String),

    /// The requested temperature lies on the other side of the transition.
    #[error("phase error: t = {t} is below t_c = {t_c}; use the condensed branch")]
    Phase { t: f64, t_c: f64 },

    /// There is no condensation transition for this dimension.
    #[error("no transition: g_d(1, theta) diverges for d = {d} <= 1")]
    NoTransition { d: f64 },

    /// A series, quadrature or root search failed to reach its tolerance.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A truncated level sum could not certify its tail.
    #[error(
        "truncation error: tail bound {tail_bound:e} exceeds tolerance at n_max = {n_max}; \
         try n_max >= {suggested_n_max}"
    )]
    Truncation {
        n_max: u64,
        tail_bound: f64,
        suggested_n_max: u64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn divergence(msg: impl Into<String>) -> Self {
        Error::Divergence(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    /// True for errors caused by the inputs rather than by the numerics.
    pub fn is_domain_like(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Divergence(_) | Error::Phase { .. } | Error::NoTransition { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
