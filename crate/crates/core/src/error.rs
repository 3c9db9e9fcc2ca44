use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("tuples of arity 0 are not supported")]
    ZeroArity,

    #[error("index vector repeats position {0}")]
    RepeatedIndex(usize),

    #[error("position {position} is outside 1..={arity}")]
    IndexOutOfRange { position: usize, arity: usize },

    #[error("vertex {vertex} is outside the vertex set of size {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{what}: {requested} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("similarity undecided at this scale (intertwiner dimension {dimension} over {field})")]
    SimilarityUndecided { dimension: usize, field: String },

    #[error("partition is not graph-like: {0}")]
    NotGraphLike(String),

    #[error("partition is not a rainbow: {0}")]
    NotRainbow(String),

    #[error("not a coherent configuration: {0}")]
    NotCoherent(String),
    #[error("vertex set is not a non-empty union of cells")]
    NotUnionOfCells,

    #[error("closure violation: {0}")]
    ClosureViolation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("time budget exhausted")]
    BudgetExceeded,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
