//! Error type shared by the exact linear algebra layer.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("unknown ring tag {0:?} (expected \"q\", \"z\", or \"fp:P\")")]
    BadRingTag(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("cannot parse {entry:?} as an element of ring {ring}")]
    BadEntry { entry: String, ring: String },

    #[error("matrix has {got_rows}x{got_cols} entries, expected {rows}x{cols}")]
    BadShape {
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },

    #[error("rings disagree: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("invariant factor {factor} at position {index} is invalid: {reason}")]
    BadInvariantFactor {
        index: usize,
        factor: String,
        reason: String,
    },

    #[error("matrix does not define a module map: entry at row {row}, column {col} violates the relation of generator {col}")]
    NotWellDefined { row: usize, col: usize },

    #[error("map composition/shape mismatch: {0}")]
    Incompatible(String),

    #[error("{0}")]
    Unsupported(String),
}
