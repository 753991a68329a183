//! Crate-wide error type.

use std::fmt;
use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    Domain(String),
    /// A mode or grid index exceeds the stored range.
    Index(String),
    /// A computation met or produced a non-finite value.
    NonFinite(String),
    /// An exhaustive enumeration was requested beyond its size cap.
    TooLarge(String),
    /// A named parameter was missing, unknown, or out of range.
    InvalidParam(String),
    /// A corpus function name is not registered.
    UnknownFunction(String),
    /// File-system failure, with the offending path.
    Io { path: PathBuf, source: std::io::Error },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Index(msg) => write!(f, "index error: {msg}"),
            Error::NonFinite(msg) => write!(f, "non-finite value: {msg}"),
            Error::TooLarge(msg) => write!(f, "size cap exceeded: {msg}"),
            Error::InvalidParam(msg) => write!(f, "invalid parameter: {msg}"),
            Error::UnknownFunction(name) => write!(f, "unknown function `{name}`"),
            Error::Io { path, source } => write!(f, "i/o error at {}: {source}", path.display()),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

impl Error {
    /// True for errors caused by bad caller input rather than by execution.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::NonFinite(_) | Error::Io { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
