use std::path::PathBuf;

use dude_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("cannot read {path}: {source}")]
    ReadConfig {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse config: {0}")]
    Parse(#[source] serde_json::Error),
    #[error("{0}")]
    Validation(#[source] CoreError),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("bad sweep value `{value}` for `{param}`: {reason}")]
    Sweep {
        param: String,
        value: String,
        reason: String,
    },
    #[error("simulation failed: {0}")]
    Runtime(#[source] CoreError),
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(serde_json::Error),
}

impl SimError {
    /// Process exit code: 2 for configuration problems, 3 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            SimError::ReadConfig { .. }
            | SimError::Parse(_)
            | SimError::Validation(_)
            | SimError::UnknownPreset(_)
            | SimError::Sweep { .. } => 2,
            _ => 3,
        }
    }
}
