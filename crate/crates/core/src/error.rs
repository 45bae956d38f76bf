use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrimeP(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("modulus is not a primitive polynomial: {0}")]
    ModulusNotPrimitive(String),
    #[error("polynomial is not primitive over the given field")]
    NotPrimitive,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {value} is out of range for a field of order {q}")]
    ElementOutOfRange { value: u64, q: u64 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range (valid: {valid})")]
    IndexOutOfRange { index: usize, valid: String },
    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("enumeration or construction too large: {0}")]
    TooLarge(String),
    #[error("invalid flag type: {0}")]
    InvalidType(String),
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("flag types differ")]
    TypeMismatch,
    #[error("a flag code needs at least two distinct flags (got {0})")]
    CodeTooSmall(usize),
    #[error("duplicate flag at position {0}")]
    DuplicateFlag(usize),
    #[error("{k} does not divide {n}")]
    NotDivisor { k: usize, n: usize },
    #[error("spread is not planar (n = {n}, k = {k})")]
    NotPlanar { n: usize, k: usize },
    #[error("matrix W_{index} is rank deficient")]
    RankDeficient { index: usize },
    #[error("type {0} is not a subtype of {1}")]
    TypeNotSubset(String, String),
    #[error("code is not disjoint")]
    NotDisjoint,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid channel configuration: {0}")]
    InvalidConfig(String),
    #[error("operation requires {0}")]
    Unsupported(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
