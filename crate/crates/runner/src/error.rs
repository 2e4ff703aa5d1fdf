use gmig_core::Error;
use thiserror::Error as ThisError;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for I/O failures (unreadable files, unwritable output).
pub const EXIT_IO: i32 = 1;
/// Exit code for an invalid configuration.
pub const EXIT_CONFIG: i32 = 2;
/// Exit code for a numerical failure during a run.
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, ThisError)]
pub enum RunError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("stage {stage} failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Error,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl RunError {
    pub fn stage(stage: &'static str) -> impl FnOnce(Error) -> RunError {
        move |source| RunError::Stage { stage, source }
    }

    /// Process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => EXIT_CONFIG,
            RunError::Io(_) => EXIT_IO,
            RunError::Stage { source, .. } => match source {
                Error::Config(_) | Error::Nyquist { .. } | Error::Inadmissible { .. } | Error::InvalidGrid(_) => {
                    EXIT_CONFIG
                }
                Error::Io(_) | Error::Format(_) => EXIT_IO,
                _ => EXIT_NUMERICAL,
            },
        }
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for RunError {
    fn from(e: serde_json::Error) -> Self {
        RunError::Io(e.to_string())
    }
}

impl From<csv::Error> for RunError {
    fn from(e: csv::Error) -> Self {
        RunError::Io(e.to_string())
    }
}
