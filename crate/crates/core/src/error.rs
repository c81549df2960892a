use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("vector of length {got} does not match dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed algebra: {0}")]
    Malformed(String),

    #[error("could not parse rational {0:?}")]
    ParseRational(String),

    #[error("weight {weight} needs {terms} canonical terms, above the cap of {cap}")]
    TermCap { weight: usize, terms: usize, cap: usize },

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("derived algebra has dimension {0}, expected 1")]
    DerivedDimension(usize),

    #[error("no block decomposition: {0}")]
    NotDecomposable(String),

    #[error("formula evaluates to the negative value {value} for {context}")]
    NegativeValue { value: String, context: String },

    #[error("matrix is singular")]
    Singular,
}
