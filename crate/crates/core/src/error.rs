use thiserror::Error;

/// Errors raised by the library. Variants map onto the CLI exit codes:
/// everything is "malformed input" except [`Error::ConsistencyFault`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate point {0}")]
    DuplicatePoint(String),

    #[error("figure is empty")]
    EmptyFigure,

    #[error("zero weight at point {0}")]
    ZeroWeight(String),

    #[error("dimension mismatch: expected {expected}D, found {found}D")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero vector is not allowed here")]
    ZeroVector,

    #[error("basis ({u0},{u1}), ({v0},{v1}) is not unimodular")]
    NotUnimodular { u0: i64, u1: i64, v0: i64, v1: i64 },

    #[error("(u,v)-representation failed: column {column} is {problem}")]
    Representation { column: i64, problem: &'static str },

    #[error("figure is not convex")]
    NotConvex,

    #[error("convex hull is degenerate (figure is collinear)")]
    DegenerateHull,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("arity mismatch: expected {expected} variable(s), found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no witness: {0}")]
    NoWitness(String),

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("alphabet symbol {0:?} is not an integer")]
    NonIntegerSymbol(String),

    #[error("internal consistency fault: {0}")]
    ConsistencyFault(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
