use std::fmt;

use thiserror::Error;

/// Process exit status for each error kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Usage = 1,
    Data = 2,
    Internal = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, bad config, missing paths.
    #[error("usage: {0}")]
    Usage(String),
    /// Input content rejected by a stage.
    #[error("stage `{stage}`: {message}")]
    Data { stage: String, message: String },
    /// Output or invariant failure not caused by the input.
    #[error("stage `{stage}`: internal error: {message}")]
    Internal { stage: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::Usage,
            CliError::Data { .. } => ExitCode::Data,
            CliError::Internal { .. } => ExitCode::Internal,
        }
    }

    pub fn usage(msg: impl fmt::Display) -> Self {
        CliError::Usage(msg.to_string())
    }

    pub fn data(stage: impl Into<String>, err: impl fmt::Display) -> Self {
        CliError::Data {
            stage: stage.into(),
            message: err.to_string(),
        }
    }

    pub fn internal(stage: impl Into<String>, err: impl fmt::Display) -> Self {
        CliError::Internal {
            stage: stage.into(),
            message: err.to_string(),
        }
    }

    pub fn stage(&self) -> Option<&str> {
        match self {
            CliError::Usage(_) => None,
            CliError::Data { stage, .. } | CliError::Internal { stage, .. } => Some(stage),
        }
    }
}

/// Attaches a stage name to library errors.
pub trait StageExt<T> {
    fn data_in(self, stage: &str) -> Result<T, CliError>;
    fn internal_in(self, stage: &str) -> Result<T, CliError>;
}

impl<T, E: fmt::Display> StageExt<T> for Result<T, E> {
    fn data_in(self, stage: &str) -> Result<T, CliError> {
        self.map_err(|e| CliError::data(stage, e))
    }

    fn internal_in(self, stage: &str) -> Result<T, CliError> {
        self.map_err(|e| CliError::internal(stage, e))
    }
}
