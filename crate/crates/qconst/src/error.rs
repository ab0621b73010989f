//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by library operations.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated an operation's contract.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A computation would exceed a configured resource limit.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A result is undefined because it conditions on a zero-probability event.
    #[error("degenerate result: {0}")]
    Degenerate(String),

    /// A text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
