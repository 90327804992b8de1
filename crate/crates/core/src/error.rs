use thiserror::Error;

use crate::gf2::Gf2Vector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 1..={limit}")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    /// A row-finite generator broke the mirror rule `j in support(i) <=> i in support(j)`.
    #[error("symmetry violation: a({row},{col}) != a({col},{row})")]
    SymmetryViolation { row: usize, col: usize },

    #[error("zero-block violation: a({row},{col}) = 1 outside the band")]
    ZeroBlockViolation { row: usize, col: usize },

    /// The diagonal of a symmetric matrix was reported outside its range.
    /// Never expected; raised so that tests notice.
    #[error("internal theorem violation: {0}")]
    InternalTheoremViolation(String),

    #[error("prefix length {p} exceeds the {limit} variables coupled to the first row block")]
    PrefixTooLong { p: usize, limit: usize },

    #[error("cell size {size} exceeds the configured bound {bound}")]
    CellTooLarge { size: usize, bound: usize },

    /// `witness` is a vector `z` with `z^T A = 0` and `z . b = 1`, when one is available.
    #[error("system has no solution")]
    Unsolvable { witness: Option<Gf2Vector> },

    #[error("exact mode requires a periodic matrix")]
    ExactRequiresPeriodic,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid periodic spec: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}
