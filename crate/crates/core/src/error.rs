use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root of unity order must be positive")]
    ZeroOrder,
    #[error("division by zero")]
    DivisionByZero,
    #[error("Coxeter number {0} is below 3")]
    CoxeterNumberTooSmall(u32),
    #[error("invalid rank {rank} for type {kind}")]
    InvalidRank { kind: char, rank: usize },
    #[error("graph {0} has no trivalent vertex")]
    NoTrivalentVertex(String),
    #[error("vertex {0} is not a valid choice here: {1}")]
    InvalidVertex(usize, String),
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),
    #[error("level {requested} exceeds the level cap {cap}")]
    LevelCapExceeded { requested: usize, cap: usize },
    #[error("singular Gram matrix: the subalgebra basis is degenerate")]
    SingularGram,
    #[error("element is not an idempotent vertex projection")]
    NotIdempotent,
    #[error("index {index} out of range (valid: {valid})")]
    OutOfRange { index: usize, valid: String },
    #[error("no stabilization up to level cap {cap}")]
    NotStabilized { cap: usize },
    #[error("hypothesis failure: {0}")]
    HypothesisFailure(String),
    #[error("fusion label {label} outside 0..={max}")]
    LabelOutOfRange { label: usize, max: usize },
    #[error("product V_{i} x V_{j} lies beyond the supertransitivity window {window}")]
    BeyondSupertransitivity { i: usize, j: usize, window: usize },
    #[error("value within 1e-20 of 4; needs higher precision")]
    NeedsHigherPrecision,
    #[error("unknown graph name '{0}'")]
    UnknownGraph(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
