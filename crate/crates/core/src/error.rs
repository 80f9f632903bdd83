use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("not a Latin square: {0}")]
    NotLatin(String),

    #[error("no two-sided identity element")]
    NoIdentity,

    #[error("element {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("order {order} exceeds the supported maximum of {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("invalid S-subgroup: {0}")]
    InvalidSSubgroup(String),

    #[error("not an S-loop: no non-trivial proper subgroup")]
    NotSLoop,

    #[error("S-elements must lie in the S-subgroup: f={f}, g={g}")]
    NotSElements { f: usize, g: usize },

    #[error("search cap exceeded: order {order} > cap {cap}")]
    SearchCapExceeded { order: usize, cap: usize },

    #[error("orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
