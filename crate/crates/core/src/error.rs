use thiserror::Error;

use crate::statements::InequalityReport;

/// Errors raised by the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("argument outside supported domain: {0}")]
    Domain(String),

    #[error("no sign change found: {0}")]
    SearchFailure(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("continuation failed: {0}")]
    ContinuationFailure(String),

    #[error("singular continuation path: {0}")]
    SingularPath(String),

    #[error("quadrature did not reach tolerance (best estimate {best}, error {error})")]
    Accuracy { best: f64, error: f64 },

    #[error("numerical failure: {message}")]
    Numerical {
        message: String,
        partial: Option<Box<InequalityReport>>,
    },
}

impl Error {
    /// Short machine-readable kind, used for CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::Domain(_) => "domain-error",
            Error::SearchFailure(_) => "search-failure",
            Error::InvalidParams(_) => "invalid-params",
            Error::Internal(_) => "internal-error",
            Error::ContinuationFailure(_) => "continuation-failure",
            Error::SingularPath(_) => "singular-path",
            Error::Accuracy { .. } => "accuracy-failure",
            Error::Numerical { .. } => "numerical-failure",
        }
    }

    /// True for errors caused by the caller's input rather than by the numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::Domain(_) | Error::InvalidParams(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
