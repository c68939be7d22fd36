use thiserror::Error;

/// Failures of the front end, split by the exit code they map to.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed map file: {0}")]
    MapFile(#[from] serde_json::Error),
    #[error(transparent)]
    Lib(#[from] gl3inv::Error),
}

impl CliError {
    /// Exit status for this error; every error is a usage or input problem.
    pub fn exit_code(&self) -> u8 {
        2
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
