use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] prc_core::Error),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Write { .. } => EXIT_DATA,
            CliError::Core(e) => match e {
                prc_core::Error::InvalidConfig(_) | prc_core::Error::BadDimension(_) => EXIT_USAGE,
                e if e.is_numeric() => EXIT_NUMERIC,
                _ => EXIT_DATA,
            },
        }
    }
}
