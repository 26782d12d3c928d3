//! File formats, generators and the verification driver behind the
//! `shade-lab` command.

pub mod formats;
pub mod generate;
pub mod oracle;
pub mod suite;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("{0}")]
    Parse(#[from] formats::ParseError),
    #[error(transparent)]
    Core(#[from] shade_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("JSON encoding failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl LabError {
    /// 2 for bad input or size caps, 3 for failures that indicate a bug.
    pub fn exit_code(&self) -> u8 {
        match self {
            LabError::Json(_) => 3,
            _ => 2,
        }
    }
}

pub fn read_file(path: &str) -> Result<String, LabError> {
    std::fs::read_to_string(path).map_err(|source| LabError::Io {
        path: path.to_owned(),
        source,
    })
}
