use thiserror::Error;

/// Errors surfaced by state construction, geometry, and the radiation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A custom-state document could not be read, parsed, or normalized.
    #[error("state file: {0}")]
    StateFile(String),

    /// The requested operation has no defined result for these arguments.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// A numerical identity that the implementation relies on was violated.
    #[error("internal consistency violation: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
