use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("value {value} out of range [0, {l_max}]")]
    OutOfRange { value: u32, l_max: u32 },

    #[error("the pole set is empty")]
    EmptyPoleSet,

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("requested {requested} outputs but the dataset holds only {available} points")]
    TooFewPoints { requested: usize, available: usize },

    #[error("contradiction of pole {0} with itself is undefined")]
    SelfContradiction(usize),

    #[error("pole index {index} out of range for {count} poles")]
    PoleIndex { index: usize, count: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("image shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by bad user-supplied parameters rather than bad data.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::InvalidParameter { .. })
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}
