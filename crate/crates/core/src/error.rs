use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by ranking methods, numerical kernels and dataset I/O.
#[derive(Debug, Error)]
pub enum FsError {
    /// A caller-supplied argument is out of its documented range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    #[error("invalid parameter for {method}: {message}")]
    InvalidParam { method: String, message: String },

    #[error("{0} requires labels")]
    MissingLabels(String),

    #[error("{method} requires binary labels, got {classes} classes")]
    NotBinary { method: String, classes: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The dataset violates a `DataMatrix` / `LabelVector` invariant.
    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("parse error at {path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Numerical failure: zero matrix in power iteration, unbounded LP, ...
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl FsError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        FsError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, FsError>;
