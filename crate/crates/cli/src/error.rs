use std::path::PathBuf;

use frft_core::FrftError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Core(#[from] FrftError),
    #[error("verification failed: {failed} of {total} checks")]
    Verification { failed: usize, total: usize },
}

impl CliError {
    /// Process exit status: 1 usage, 2 data or format, 3 verification.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } | CliError::Format { .. } | CliError::Data(_) | CliError::Core(_) => 2,
            CliError::Verification { .. } => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        CliError::Format { path: path.into(), message: message.into() }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
