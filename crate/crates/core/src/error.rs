use std::io;

use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A required parameter is missing, out of range, or inconsistent.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A numeric argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation would exceed the caller-supplied budget.
    #[error("resource limit exceeded: {what} needs {count} items, cap is {cap}")]
    Resource {
        what: &'static str,
        count: String,
        cap: u64,
    },

    /// Maximum-likelihood fitting could not produce an estimate.
    #[error("fit error: {0}")]
    Fit(String),

    /// Input text could not be decoded.
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
