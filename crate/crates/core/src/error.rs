use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request is valid but exceeds what the configured backend can do.
    #[error("capability error: {0}")]
    Capability(String),

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    /// Two independent evaluation routes disagreed beyond tolerance.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    /// A sampling estimator could not produce a value (e.g. no accepted samples).
    #[error("estimation failed: {0}")]
    Estimation(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }
}

pub(crate) fn check_dimension(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::domain(format!("dimension must be >= {min}, got {n}")));
    }
    Ok(())
}

pub(crate) fn check_finite(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::domain(format!("{name} must be finite, got {x}")));
    }
    Ok(())
}
