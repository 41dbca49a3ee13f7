use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the toolkit's library modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at {path}:{line}: {reason}")]
    Parse {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("duplicate image id `{0}`")]
    DuplicateId(String),

    #[error("empty vocabulary: no concept occurrences in the input records")]
    EmptyVocabulary,

    #[error("unsupported channel count {0} (expected 1 or 3)")]
    UnsupportedChannels(usize),

    #[error("degenerate image: {0}")]
    DegenerateImage(String),

    #[error("image {width}x{height} is smaller than the requested crop {crop}")]
    CropTooLarge {
        width: usize,
        height: usize,
        crop: usize,
    },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("id alignment failed: {0}")]
    IdMismatch(String),

    #[error("bad file format in {path}: {reason}")]
    Format { path: PathBuf, reason: String },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("degenerate basis: {0}")]
    DegenerateBasis(String),

    #[error("unknown concept id `{0}`")]
    UnknownConcept(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn format(path: impl Into<PathBuf>, reason: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            reason: reason.into(),
        }
    }
}
