use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("permutation is odd, so it is not generated by {cycle_len}-cycles")]
    NotInGroup { cycle_len: usize },

    #[error("exhaustive search needs {states} states, bound is {bound}")]
    OracleBound { states: u64, bound: u64 },

    #[error("{what} is {value}, which exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: u64,
        bound: u64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("Raney number has a pole at n={n}, p={p}, r={r}")]
    Pole { n: u64, p: i64, r: i64 },

    #[error("division did not land on an integer: {0}")]
    NonIntegral(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
