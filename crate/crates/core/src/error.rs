use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the PRC/DPRC pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric (max |A - A^T| = {deviation:e})")]
    Asymmetric { deviation: f64 },
    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("degenerate line: endpoints coincide")]
    DegenerateLine,
    #[error("class model has no samples")]
    EmptyModel,
    #[error("no classes to classify against")]
    NoClasses,
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("class `{label}` has {count} samples, needs at least {needed}")]
    ClassTooSmall {
        label: String,
        count: usize,
        needed: usize,
    },
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: usize,
        message: String,
    },
    #[error("row {row} has {found} columns, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-finite value at row {row}, column {column}")]
    NonFiniteValue { row: usize, column: usize },
    #[error("model file schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("bad synthetic spec: {0}")]
    BadSpec(String),
}

impl Error {
    /// True for failures of the numerical kernels (as opposed to bad input data).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NonSquare { .. }
                | Error::Asymmetric { .. }
                | Error::NotPositiveDefinite { .. }
                | Error::DegenerateLine
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
