//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Expression text violated the grammar. `position` is the 1-based
    /// character offset of the offending token.
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("operands live in different variable sets")]
    VarSetMismatch,

    #[error("missing assignment for variable `{0}`")]
    MissingAssignment(String),

    #[error("zero polynomial is not a valid input here")]
    ZeroPolynomial,

    #[error("all sampled fibers were infinite; map images look algebraically dependent")]
    DegenerateSample,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("unsupported modulus shape: {0}")]
    UnsupportedModulus(String),

    /// Malformed complex file; names the offending matrix entry.
    #[error("bad entry in map {map} at ({row},{col}): {message}")]
    MatrixEntry {
        map: usize,
        row: usize,
        col: usize,
        message: String,
    },

    /// A postcondition the mathematics guarantees failed to hold.  This
    /// always signals a bug or a violated precondition, never bad user input.
    #[error("internal contract violated: {0}")]
    InternalContract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
