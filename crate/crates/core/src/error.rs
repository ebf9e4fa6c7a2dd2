//! Error type shared by all modules, with a coarse class used for CLI exit codes.

use std::fmt;

/// Coarse failure class; the CLI maps these to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Invalid configuration or arguments (exit 2).
    Config,
    /// A requested computation would exceed a configured cap (exit 3).
    Resource,
    /// An assertion or suite check failed (exit 1).
    Assertion,
}

#[derive(Debug)]
pub enum Error {
    /// Unsupported parameter value (weight, parity, k-range, ...).
    Config(String),
    /// Input outside the precondition domain of an operation.
    Domain(String),
    /// A table or cache does not cover the requested range.
    Range(String),
    /// Memory or enumeration cap exceeded.
    Resource(String),
    /// Quadrature or series evaluation failed to converge.
    Numerical(String),
    /// Underlying I/O failure (cache files, reports).
    Io(std::io::Error),
    /// A cache file exists but is malformed or does not match the request.
    Cache(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Config(_) | Error::Domain(_) | Error::Range(_) | Error::Cache(_) => {
                ErrorClass::Config
            }
            Error::Resource(_) => ErrorClass::Resource,
            Error::Numerical(_) | Error::Io(_) => ErrorClass::Assertion,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Config(m) => write!(f, "configuration error: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Range(m) => write!(f, "range error: {m}"),
            Error::Resource(m) => write!(f, "resource error: {m}"),
            Error::Numerical(m) => write!(f, "numerical error: {m}"),
            Error::Io(e) => write!(f, "io error: {e}"),
            Error::Cache(m) => write!(f, "cache error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
