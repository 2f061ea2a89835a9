use thiserror::Error;

use crate::C64;

/// Errors shared by every compiler and checker in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} needs {qubits} qubits, above the limit of {limit}")]
    ResourceLimit {
        what: &'static str,
        qubits: usize,
        limit: usize,
    },

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("degenerate instance: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("eigensolver stopped at residual {residual:.3e} (value {value})")]
    NotConverged {
        value: f64,
        residual: f64,
        vector: Box<Vec<C64>>,
    },

    #[error("search budget of {budget} nodes exhausted at depth {depth}")]
    BudgetExceeded { budget: usize, depth: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
