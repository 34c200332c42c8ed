use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("order {0} is odd; pfaffians need even order")]
    OddOrder(usize),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error(
        "enumeration guard exceeded: {what} = {value} > {limit} (pass --unsafe-large to override)"
    )]
    Guard {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("invalid tableau: {}", .0.join("; "))]
    InvalidTableau(Vec<String>),
    #[error("unknown label {0} in word")]
    UnknownLabel(u32),
    #[error("equivalence mode mismatch: {0:?} vs {1:?}")]
    ModeMismatch(crate::combinat::Equivalence, crate::combinat::Equivalence),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
