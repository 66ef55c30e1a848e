//! Crate-wide error type.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A generator index fell outside `1..=rank`.
    #[error("letter index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    /// A word failed a reducedness precondition.
    #[error("word is not {expected}: {detail}")]
    WordNotReduced {
        expected: &'static str,
        detail: String,
    },

    /// A word could not be parsed from its ASCII form.
    #[error("cannot parse word: {0}")]
    WordParse(String),

    /// An operation needed an invertible matrix.
    #[error("matrix is singular or numerically rank-deficient")]
    SingularMatrix,

    /// Matrix dimensions did not match the operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A loxodromic element was required: real eigenvalues with pairwise
    /// distinct moduli.
    #[error("not loxodromic: eigenvalue moduli {m1} and {m2} coincide within tolerance")]
    NotLoxodromic { m1: f64, m2: f64 },

    /// Spanning vectors were linearly dependent.
    #[error("degenerate span: vectors are linearly dependent (rank {rank} < {expected})")]
    DegenerateSpan { rank: usize, expected: usize },

    /// An iterative solver did not reach its tolerance.
    #[error("solver did not converge after {iterations} iterations (last step {last_step:e})")]
    NonConvergence { iterations: usize, last_step: f64 },

    /// Input violated a numeric invariant (positivity, determinant, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Exterior power degree out of range.
    #[error("compound degree {r} out of range 1..={max}")]
    DegreeOutOfRange { r: usize, max: usize },

    /// Matrix entries overflowed despite renormalization.
    #[error("numeric overflow while evaluating a word (pathological conditioning)")]
    Overflow,

    /// A representation failed validation.
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    /// I/O or serialization failure, flattened to a message.
    #[error("{0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(format!("json: {e}"))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
