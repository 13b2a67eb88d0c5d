use std::fmt::Display;
use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("differential check failed: {0}")]
    CheckFailed(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => 2,
            CliError::Validation(_) => 3,
            CliError::Parameter(_) => 4,
            CliError::CheckFailed(_) => 5,
        }
    }

    pub fn param(e: impl Display) -> Self {
        CliError::Parameter(e.to_string())
    }

    pub fn invalid(e: impl Display) -> Self {
        CliError::Validation(e.to_string())
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
