//! Crate-wide error type with a stable mapping to process exit codes.

use thiserror::Error;

/// Errors produced by any laboratory operation.
///
/// Each variant corresponds to one exit-status category of the CLI, so the
/// first failing check determines the process exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// Configuration or usage problem (bad key, unparsable value, bad flag).
    #[error("config error: {0}")]
    Config(String),

    /// An operation precondition was violated by the caller.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A verified inequality or invariant failed.
    #[error("check failed: {0}")]
    CheckFailed(String),

    /// Numerical breakdown: singular solve, non-PSD Gram, non-finite value.
    #[error("numerical failure: {0}")]
    Numeric(String),

    /// Filesystem or serialization failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit-status category used by the CLI (0 is success).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            Error::Precondition(_) => 2,
            Error::CheckFailed(_) => 3,
            Error::Numeric(_) => 4,
            Error::Io(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
