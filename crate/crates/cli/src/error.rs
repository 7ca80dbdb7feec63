use std::path::PathBuf;

/// Process exit codes.
pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NO_CONVERGENCE: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] lifshitz::Error),

    #[error("{0}")]
    Input(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    NotConverged(String),

    #[error("replay differs from the recorded run: {0}")]
    ReplayMismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_input_error() => EXIT_INPUT,
            CliError::Core(lifshitz::Error::NoConvergence { .. }) => EXIT_NO_CONVERGENCE,
            CliError::Core(_) => EXIT_INTERNAL,
            CliError::Input(_) | CliError::Read { .. } => EXIT_INPUT,
            CliError::NotConverged(_) => EXIT_NO_CONVERGENCE,
            CliError::Write { .. } | CliError::ReplayMismatch(_) => EXIT_INTERNAL,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
