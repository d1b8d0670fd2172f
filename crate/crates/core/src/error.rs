use thiserror::Error;

/// Errors raised by the library and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid problem spec `{spec}`: {reason}")]
    ProblemSpec { spec: String, reason: String },

    #[error("operation not applicable: {0}")]
    NotApplicable(String),

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Usage errors are caused by bad input rather than by the environment.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Csv(_) | Error::Json(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
