use thiserror::Error;

/// Errors produced by cover construction, bound evaluation, and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    DimensionZero,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinate {value} at index {index} outside {range}")]
    CoordinateOutOfRange {
        index: usize,
        value: f64,
        range: &'static str,
    },

    #[error("epsilon {0} outside required range {1}")]
    EpsilonOutOfRange(f64, &'static str),

    #[error("invalid bracket: {0}")]
    InvalidBracket(String),

    #[error("{context}: argument outside domain ({detail})")]
    Domain {
        context: &'static str,
        detail: String,
    },

    #[error("numerical domain error in {context}: value {value} outside (0,1)")]
    NumericalDomain { context: &'static str, value: f64 },

    #[error("leaf budget exceeded after {emitted} leaves")]
    BudgetExceeded { emitted: u64 },

    #[error("recursion depth {depth} exceeded guard {guard}; floating-point pathology suspected")]
    DepthGuardExceeded { depth: u32, guard: u32 },

    #[error("series did not converge within {max_terms} terms")]
    SeriesDiverged { max_terms: usize },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("point set too large for exact enumeration: {detail}")]
    ExactOracleTooLarge { detail: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
