use thiserror::Error;

use crate::format::FormatError;

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status when an object fails validation or a hypothesis.
pub const EXIT_INVALID: i32 = 1;
/// Exit status for malformed invocations and input files.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Format(#[from] FormatError),

    #[error(transparent)]
    Kernel(#[from] lierinehart::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use lierinehart::Error as E;
        match self {
            CliError::Usage(_) | CliError::Format(_) => EXIT_USAGE,
            CliError::Kernel(E::DimensionMismatch { .. } | E::UnknownBuiltin(_) | E::DegreeCap { .. }) => EXIT_USAGE,
            CliError::Kernel(_) => EXIT_INVALID,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
