use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid order p = {0}: p must be at least 1")]
    InvalidOrder(i64),

    #[error("{a} and {b} are not coprime")]
    NonCoprime { a: i64, b: i64 },

    #[error("class k = 0 is degenerate: the simple knot is an unknot in a ball")]
    DegenerateClass,

    #[error(
        "labeling inconsistency in L({p},{q}) class {k}: order {order} times (1 - {rhs}) is not an integer"
    )]
    LabelingInconsistency {
        p: u64,
        q: u64,
        k: u64,
        order: u64,
        rhs: String,
    },

    #[error("not an L-space knot pattern: {0}")]
    NotLSpacePattern(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("invalid Alexander polynomial: {0}")]
    InvalidAlexander(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors that indicate a broken internal convention rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::LabelingInconsistency { .. } | Error::InvariantViolation(_)
        )
    }
}
