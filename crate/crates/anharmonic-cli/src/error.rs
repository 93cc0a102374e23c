use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Domain(#[from] anharmonic::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{failed} of {total} acceptance criteria failed")]
    Validation { failed: usize, total: usize },
}

impl CliError {
    /// 0 success, 1 usage, 2 domain (and failed validation), 3 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) | CliError::Validation { .. } => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub fn stdout(source: std::io::Error) -> Self {
        CliError::Io {
            path: "<stdout>".into(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
