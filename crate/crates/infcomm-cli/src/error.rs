use std::path::PathBuf;

use thiserror::Error;

/// Failures of a CLI command, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("invalid input: {0}")]
    Input(infcomm::Error),
    #[error("refused: {0}")]
    Refused(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Input(_) => 2,
            CliError::Refused(_) => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<infcomm::Error> for CliError {
    fn from(e: infcomm::Error) -> Self {
        use infcomm::Error as E;
        match e {
            E::InvalidGamma { .. } | E::InvalidK | E::InvalidDelta(_) => CliError::Usage(e.to_string()),
            E::OracleBound { .. } => CliError::Refused(e.to_string()),
            other => CliError::Input(other),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
