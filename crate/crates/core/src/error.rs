use thiserror::Error;

/// Errors raised by the exact evaluators, the bundle pipeline and the sampler.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {0} is odd; every construction here needs an even dimension")]
    OddDimension(usize),

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("expected {expected} arguments, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("tuple of {found} vectors is too short, need at least {needed}")]
    TooFewVectors { needed: usize, found: usize },

    #[error("tuple is not hereditarily spanning")]
    NotHereditarilySpanning,

    #[error("flag level {level} out of range 1..={n}")]
    LevelOutOfRange { level: usize, n: usize },

    #[error("bracket of {found} flags exceeds dimension {n}")]
    TooManyFlags { n: usize, found: usize },

    #[error("naive deflation needs 2^{terms_log2} terms, over the budget of 2^{budget_log2}")]
    BudgetExceeded { terms_log2: usize, budget_log2: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("bundle validation failed: {0}")]
    InvalidBundle(String),

    #[error("chain is not closed; {0} boundary faces remain")]
    NotClosed(usize),

    #[error("section is not generic on simplex {simplex}")]
    NonGenericSection { simplex: usize },

    #[error("raw Euler value {0} is not an integer on a closed chain")]
    NonIntegral(String),

    #[error("matrix {index} is numerically singular (|det| = {det:e})")]
    NearSingular { index: usize, det: f64 },

    #[error("sample count must be at least 1")]
    NoSamples,

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
