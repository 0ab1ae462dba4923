use thiserror::Error;

/// Errors surfaced by the engine. Theorem violations are first-class values:
/// the verification harness reports them instead of panicking.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,

    #[error("group order cap ({cap}) exceeded during enumeration")]
    OrderCapExceeded { cap: usize },

    #[error("malformed group specification: {0}")]
    BadGroupSpec(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("group or field mismatch between modules: {0}")]
    AlgebraMismatch(String),

    #[error("field GF({p}^{m}) is not a splitting field: {detail}; enlarge the field degree")]
    NotSplittingField { p: u64, m: u32, detail: String },

    #[error("decomposition inconclusive after {tries} attempts (dim {dim})")]
    Inconclusive { tries: usize, dim: usize },

    #[error("node cap ({cap}) exceeded; the algebra is possibly tau-tilting infinite")]
    NodeCapExceeded { cap: usize },

    #[error("expected an indecomposable module: {0}")]
    DecomposableInput(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("scenario error: {0}")]
    Scenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
