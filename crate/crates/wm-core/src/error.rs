use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A shape, tableau or argument failed a structural precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A path of values is not generic (simultaneous or degenerate crossings)
    /// and could not be repaired within the perturbation budget.
    #[error("non-generic path: {0}")]
    NonGenericPath(String),

    /// A numerical routine failed to converge or lost certification.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A leading-term system has no solution of the supported pattern.
    #[error("unsupported tie pattern: {0}")]
    TiePattern(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
