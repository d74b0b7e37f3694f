use thiserror::Error;

/// Errors raised by the numeric routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A value that is positive in exact arithmetic lost its sign to rounding.
    #[error("precision exhausted: {0}")]
    Precision(String),
    /// A decimal string could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// An API was used outside its contract (e.g. non-adjacent split ranges).
    #[error("usage error: {0}")]
    Usage(String),
    /// A result would overflow the supported exponent range.
    #[error("range error: {0}")]
    Range(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
