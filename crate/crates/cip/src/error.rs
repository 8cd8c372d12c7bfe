use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Process exit status shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitStatus {
    /// Success.
    Ok = 0,
    /// Unexpected failure.
    Internal = 1,
    /// Bad flags or malformed input data.
    InvalidArgs = 2,
    /// Filesystem or decoder failure.
    Io = 3,
}

/// Errors surfaced by the command-line front end.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cip_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("malformed {what}: {reason}")]
    Format { what: &'static str, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_status(&self) -> ExitStatus {
        match self {
            CliError::Core(_) | CliError::Usage(_) | CliError::Format { .. } => {
                ExitStatus::InvalidArgs
            }
            CliError::Io { .. } | CliError::Image { .. } => ExitStatus::Io,
            CliError::Internal(_) => ExitStatus::Internal,
        }
    }
}
