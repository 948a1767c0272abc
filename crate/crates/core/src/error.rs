use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field order {0}: expected a prime power in {{2,3,4,5,7,8,9}}")]
    UnsupportedOrder(u32),

    #[error("{what} has size {size}, exceeding the configured cap {cap}")]
    SizeCap { what: &'static str, size: u128, cap: u128 },

    #[error("value {value} out of range: {reason}")]
    OutOfRange { value: u64, reason: String },

    #[error("operation requires GF({expected}) but got GF({found})")]
    WrongField { expected: u32, found: u32 },

    #[error("multisets live in different geometries")]
    GeometryMismatch,

    #[error("multiset is empty")]
    EmptyMultiset,

    #[error("row {row} has length {found}, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },

    #[error("symbol {symbol} at row {row}, column {col} is not an element of GF({q})")]
    BadSymbol { row: usize, col: usize, symbol: u32, q: u32 },

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("shortening would leave a zero-dimensional code")]
    DimensionCollapse,

    #[error("code is degenerate: column {column} is identically zero")]
    DegenerateCode { column: usize },

    #[error("points of positive multiplicity do not span the ambient space")]
    NotSpanning,

    #[error("code is not projective")]
    NotProjective,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("minimum distance {0} is even")]
    EvenDistance(usize),

    #[error("dimension {k} too small, need at least {min}")]
    SmallK { k: usize, min: usize },

    #[error("locality parameter r={r} not supported here: {reason}")]
    BadR { r: usize, reason: String },

    #[error("dimension k={k} not supported here: {reason}")]
    BadK { k: usize, reason: String },

    #[error("lambda must be at least {min}, got {lambda}")]
    BadLambda { lambda: u64, min: u64 },

    #[error("input code or multiset is empty")]
    EmptyInput,

    #[error("no placement of subspaces found for the requested type")]
    NoPlacement,

    #[error("infeasible type: {0}")]
    InfeasibleType(String),

    #[error("search timed out; optimum lies in [{lower}, {}]", upper.map_or("?".to_string(), |u| u.to_string()))]
    Timeout { lower: usize, upper: Option<usize> },

    #[error("registry data corrupt: {0}")]
    DataCorrupt(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),

    #[error("code has dimension zero")]
    ZeroDimension,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }
}
