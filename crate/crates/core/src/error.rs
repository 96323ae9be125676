use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("singular input: {0}")]
    Singular(String),

    #[error("vector is not decomposable")]
    NotDecomposable,

    /// An enumeration needed more work than the configured cap allows.
    #[error("budget exceeded: {what} needs more than {limit}")]
    Budget { what: String, limit: u64 },

    #[error("integer overflow in {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn budget(what: impl Into<String>, limit: u64) -> Self {
        Error::Budget { what: what.into(), limit }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
