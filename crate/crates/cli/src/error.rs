use monocms_core::Error;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    TooLarge(Error),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn from_parse(e: Error) -> Self {
        CliError::Parse(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 2,
            CliError::Parse(_) => 3,
            CliError::TooLarge(_) => 4,
            CliError::Io { .. } | CliError::Core(_) | CliError::Internal(_) => 1,
        }
    }
}
