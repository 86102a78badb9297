use thiserror::Error;

/// Failures that end a command. Each maps to a stable exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("probes are inconsistent with any quadratic form: {0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Inconsistent(_) => 4,
        }
    }
}

impl From<gleason_core::Error> for CliError {
    fn from(e: gleason_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}
