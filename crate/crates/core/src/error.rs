use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error in {source_name}, line {line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no convergence: {message} (partial value {partial:e})")]
    NoConvergence { message: String, partial: f64 },

    #[error("no sign change of {signal} between {d_lo:e} m and {d_hi:e} m")]
    NoSignChange {
        signal: String,
        d_lo: f64,
        d_hi: f64,
    },

    #[error("free energy is not repulsive anywhere in [{d_lo:e}, {d_hi:e}] m")]
    NoRepulsion { d_lo: f64, d_hi: f64 },

    #[error("ambiguous: {0}")]
    Ambiguous(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DOMAIN",
            Error::Parse { .. } => "PARSE",
            Error::Invariant(_) => "INVARIANT",
            Error::InvalidInput(_) => "INVALID_INPUT",
            Error::NoConvergence { .. } => "NO_CONVERGENCE",
            Error::NoSignChange { .. } => "NO_SIGN_CHANGE",
            Error::NoRepulsion { .. } => "NO_REPULSION",
            Error::Ambiguous(_) => "AMBIGUOUS",
            Error::Io { .. } => "IO",
        }
    }

    /// True for errors caused by bad user input rather than numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Parse { .. }
                | Error::Invariant(_)
                | Error::InvalidInput(_)
                | Error::Io { .. }
        )
    }
}
