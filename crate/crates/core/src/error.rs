use thiserror::Error;

/// Errors produced by the bound calculators, integrators and constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the set where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive integration hit its refinement limit before reaching the
    /// requested tolerance.
    #[error("integration failed to converge: estimate {estimate:e}, error estimate {error_estimate:e}")]
    Integration { estimate: f64, error_estimate: f64 },

    /// The requested combination (weight kind, method, ...) is not supported.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Malformed user input (configuration, method names).
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
