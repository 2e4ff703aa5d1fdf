use thiserror::Error;

/// Errors raised by the numerical core.
///
/// Each variant names the violated precondition so that callers (and the CLI)
/// can surface it verbatim.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular evaluation: source and target coincide (|x - y| = {0})")]
    Singular(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("inadmissible strengths at node {node}: {detail}")]
    Inadmissible { node: usize, detail: String },

    #[error("frequency {frequency} exceeds the Nyquist budget {limit}")]
    Nyquist { frequency: f64, limit: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("shape mismatch: {0}")]
    Mismatch(String),

    #[error("too large for dense assembly: {0}")]
    TooLarge(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("format error: {0}")]
    Format(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
