use thiserror::Error;

/// Errors raised across the bench.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates the admissibility constraints of the operation
    /// it was handed to. The message names the violated constraint.
    #[error("admissibility: {0}")]
    Admissibility(String),

    /// An argument is outside the mathematical domain of a function
    /// (e.g. log-gamma of a non-positive number).
    #[error("domain: {0}")]
    Domain(String),

    /// A requested computation exceeds the configured size budget.
    #[error("size budget exceeded: {0}")]
    SizeBudget(String),

    /// An integral was recognized as divergent before evaluation.
    #[error("divergent integral: {0}")]
    Divergent(String),

    /// Input data failed a structural precondition (grid mismatch,
    /// non-finite samples, bad kernel, ...).
    #[error("precondition: {0}")]
    Precondition(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
