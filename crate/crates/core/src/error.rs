use thiserror::Error;

/// Library-wide error type.
///
/// The CLI maps these onto its exit-code contract: parse/validation/dimension
/// problems are input errors (exit 1), `NotNullHomologous` is the mathematical
/// "no integer solution" verdict (exit 2), and `Internal` marks a broken
/// invariant that should never be reachable from valid input (exit 3).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("not null-homologous: {0}")]
    NotNullHomologous(String),

    #[error("internal invariant violation: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub fn not_null_homologous(msg: impl Into<String>) -> Self {
        Error::NotNullHomologous(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
