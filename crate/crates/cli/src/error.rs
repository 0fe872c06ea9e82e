use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_PARTIAL: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] csmoute_core::Error),
    /// Bad configuration or arguments.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// Some benchmark cells failed; the rest were written.
    #[error("{failed} cell(s) failed; see failures.csv")]
    Partial { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_infeasible() => EXIT_INFEASIBLE,
            CliError::Core(csmoute_core::Error::Undefined(_)) => EXIT_INFEASIBLE,
            CliError::Core(_) | CliError::Config(_) | CliError::Io { .. } => EXIT_INPUT,
            CliError::Partial { .. } => EXIT_PARTIAL,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
