use thiserror::Error;

/// Failures raised by the library.
///
/// The variants are grouped by cause so callers (the CLI in particular) can
/// map them onto distinct exit statuses.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// Array lengths or index ranges do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// The requested tail model does not apply to the coefficient kind.
    #[error("invalid tail model: {0}")]
    InvalidTailModel(String),
    /// An iterative procedure failed to reach its tolerance.
    #[error("convergence failure: {0}")]
    Convergence(String),
    /// A kernel or covariance matrix could not be factorized, even with jitter.
    #[error("factorization failure: {0}")]
    Factorization(String),
    /// A numerical result was NaN or infinite.
    #[error("non-finite value: {0}")]
    NonFinite(String),
}

impl Error {
    /// True for errors caused by invalid input rather than numerical trouble.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Dimension(_) | Error::InvalidTailModel(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn finite(value: f64, what: &str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(format!("{what} evaluated to {value}")))
    }
}
