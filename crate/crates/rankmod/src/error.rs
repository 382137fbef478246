use thiserror::Error;

/// Errors produced by constructors, metric operations, and code builders.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid multi-set: {0}")]
    InvalidMultiSet(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("words are over different multi-sets")]
    AlphabetMismatch,

    #[error("position {pos} out of range for a word of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },

    #[error("elements at positions {pos} and {pos}+1 are equal; adjacent transpositions swap distinct elements only")]
    EqualAdjacentElements { pos: usize },

    #[error("incompatible substitution vector: {0}")]
    IncompatibleTheta(String),

    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("entry {value} out of range (maximum {max})")]
    EntryOutOfRange { value: u64, max: u64 },

    #[error("invalid inversion vector: {0}")]
    InvalidInversionVector(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("invalid check sequence: {0}")]
    InvalidCheckSequence(String),

    #[error("no check sequence of length {n} at radius {t} exists with modulus <= {budget}")]
    NoCheckSequence { n: usize, t: u64, budget: u64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("enumeration budget exceeded: space has {size} elements, budget is {budget}")]
    BudgetExceeded { size: String, budget: u64 },

    #[error("certification failed: minimum distance {found} is below the design distance {design}")]
    CertificationFailed { found: u64, design: u64 },

    #[error("infeasible parameters: construction yields {achieved} codewords but {required} are required")]
    Infeasible { required: u64, achieved: u64 },

    #[error("index {index} out of range: space has {size} elements")]
    IndexOutOfRange { index: String, size: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid code file: {0}")]
    InvalidCodeFile(String),

    #[error("channel error: {0}")]
    Channel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
