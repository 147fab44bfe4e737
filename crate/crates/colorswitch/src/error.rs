use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config key `{key}`: {message}")]
    Config { key: String, message: String },
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
    #[error("no accepted shots at p = {point}")]
    NoAcceptedShots { point: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("fit: {0}")]
    Fit(String),
    #[error(transparent)]
    Core(#[from] colorswitch_core::Error),
}

impl CliError {
    pub const USAGE: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const NO_ACCEPTED: i32 = 3;

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn format(path: &Path, message: impl ToString) -> Self {
        CliError::Format {
            path: path.to_path_buf(),
            message: message.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => Self::VALIDATION,
            CliError::NoAcceptedShots { .. } => Self::NO_ACCEPTED,
            _ => Self::USAGE,
        }
    }
}
