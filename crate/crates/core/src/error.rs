use std::path::PathBuf;

use thiserror::Error;

use crate::strings::StarReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("invalid convex set: {0}")]
    InvalidSet(String),

    #[error("set index {index} out of range for m={m}")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("invalid index vector: {0}")]
    InvalidIndexVector(String),

    #[error("invalid amalgamator: {0}")]
    InvalidAmalgamator(String),

    #[error("invalid star constraints: {0}")]
    InvalidStarConstraints(String),

    #[error("stage list has length {found}, string has length {expected}")]
    StageCount { expected: usize, found: usize },

    #[error("amalgamator emitted at iteration {iteration} violates M*: {report}")]
    StarViolation { iteration: usize, report: StarReport },

    #[error("Fejér certificate violated at iteration {iteration}: margin {margin:e} < {floor:e}")]
    CertificateViolation { iteration: usize, margin: f64, floor: f64 },

    #[error("perturbation direction failed at iteration {iteration}: {reason}")]
    Direction { iteration: usize, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}:{line}:{column}: {message}", path.display())]
    Syntax {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{}: {message}", path.display())]
    TraceFormat { path: PathBuf, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
