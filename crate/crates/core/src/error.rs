use thiserror::Error;

use crate::composition::{RunFormViolation, SemiPellViolation};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a semi-m-Pell composition: {0}")]
    NotSemiPell(SemiPellViolation),

    #[error("not a one-place m-power composition: {0}")]
    InvalidRunForm(RunFormViolation),

    /// An exhaustive search or listing was asked to run past its size guard.
    #[error("{what} {size} exceeds the guard of {limit}")]
    ResourceGuard {
        what: &'static str,
        size: u64,
        limit: u64,
    },

    #[error("cache file line {line}: {message}")]
    CacheFormat { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
