use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is not connected")]
    DisconnectedGraph,

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vector has length {found}, graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("divisor has degree {found}, expected {expected}")]
    BadDegree { expected: i64, found: i64 },

    #[error("divisor is not effective")]
    NotEffective,

    #[error("enumeration cap exceeded in {context}: needed {needed}, cap {cap}")]
    EnumerationCapExceeded {
        context: &'static str,
        needed: u128,
        cap: u64,
    },

    #[error("divisor coefficients too large for exact reduction (l1 norm {l1_norm})")]
    CoefficientOverflow { l1_norm: u128 },

    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
