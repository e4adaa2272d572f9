use thiserror::Error;

/// Failures of a CLI run, each with a fixed process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("theorem check failed: {0}")]
    Theorem(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("numerically ambiguous: {0}")]
    Ambiguous(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Theorem(_) => 1,
            CliError::Config(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Ambiguous(_) => 4,
        }
    }
}

impl From<dtto_core::Error> for CliError {
    fn from(e: dtto_core::Error) -> Self {
        if e.is_precondition() {
            CliError::Precondition(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("i/o: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
