use std::path::PathBuf;

use thiserror::Error;

/// Errors produced across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed RIFF/WAVE data: {0}")]
    MalformedRiff(String),
    #[error("unsupported WAV encoding: {0}")]
    UnsupportedEncoding(String),
    #[error("signal contains no samples")]
    EmptySignal,
    #[error("invalid hop size {0}; must be at least 1")]
    InvalidHop(usize),
    #[error("invalid synthesis spec: {0}")]
    InvalidSpec(String),
    #[error("invalid frequency range: {0}")]
    InvalidRange(String),
    #[error("invalid scale count: {0}")]
    InvalidCount(String),
    #[error("invalid scale {0}; must be positive and finite")]
    InvalidScale(f64),
    #[error("invalid wavelet parameters: {0}")]
    InvalidParams(String),
    #[error("{levels} levels requested but signal of length {len} supports at most {max}")]
    TooManyLevels {
        levels: usize,
        len: usize,
        max: usize,
    },
    #[error("invalid filter bank: {0}")]
    InvalidBank(String),
    #[error("malformed matrix header: {0}")]
    MalformedHeader(String),
    #[error("matrix payload truncated: expected {expected} bytes, found {found}")]
    TruncatedPayload { expected: usize, found: usize },
    #[error("AUC needs at least one positive and one negative label")]
    DegenerateLabels,
    #[error("invalid labeled scores: {0}")]
    InvalidScores(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid benchmark setup: {0}")]
    InvalidBench(String),
    #[error("I/O failure on {path}: {source}")]
    IoFailure {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::IoFailure {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
