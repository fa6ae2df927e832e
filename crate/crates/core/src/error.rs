use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The sieve would need more memory than the configured budget allows.
    #[error(
        "sieving to {limit} needs about {required} bytes, over the memory budget of {budget} bytes"
    )]
    Capacity {
        limit: u64,
        required: u64,
        budget: u64,
    },

    #[error("sieve limit {limit} exceeds the largest supported limit {max}")]
    LimitTooLarge { limit: u64, max: u64 },

    /// A query reached past the end of a prime table or outside a message range.
    #[error("{what} = {value} is out of range (allowed maximum {max})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        max: u64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("corrupt bitstream: {0}")]
    Corrupt(String),

    /// Exhaustive or brute-force work requested beyond its runtime budget.
    #[error("{what} = {value} exceeds the budget of {budget}")]
    Budget {
        what: &'static str,
        value: u64,
        budget: u64,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
