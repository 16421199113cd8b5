use thiserror::Error;

/// Errors raised across the library.
///
/// Truncation and horizon failures are kept distinct from definite negative
/// answers: callers must never read an `Err` as "false".
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("generator index {index} out of range for rank {rank}")]
    InvalidGenerator { index: usize, rank: usize },
    #[error("bound exceeded: {what} ({value} > {bound})")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },
    #[error("chamber exceeds truncation: {0}")]
    ExceedsTruncation(String),
    #[error("malformed building data: {0}")]
    MalformedBuilding(String),
    #[error("no apartment found within horizon: {0}")]
    NoApartmentWithinHorizon(String),
    #[error("chart coverage insufficient: {0}")]
    ChartCoverage(String),
    #[error("invalid direction: {0}")]
    InvalidDirection(String),
    #[error("horizon exhausted: {0}")]
    HorizonExhausted(String),
    #[error("stabilization cap reached: {0}")]
    Unstabilized(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
