use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A builder or verifier refused because a stated precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("node cap of {cap} exceeded after visiting {visited} configurations")]
    Capped { cap: usize, visited: usize },

    #[error("{what} exceeds the configured limit of {limit}")]
    LimitExceeded { what: String, limit: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
