use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("need at least {need} polygons, got {got}")]
    TooFewPolygons { need: usize, got: usize },
    #[error("polygons {first} and {second} have overlapping interiors")]
    Overlap { first: usize, second: usize },
    #[error("no supporting line separates cover polygons {first} and {second}")]
    PairUncovered { first: usize, second: usize },
    #[error("no candidate line separates sets {first} and {second}")]
    NoSeparator { first: usize, second: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("instance hash mismatch: certificate was issued for {expected}, instance is {found}")]
    HashMismatch { expected: String, found: String },
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
