use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not full row rank")]
    NotFullRowRank,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero vector has no primitivity")]
    ZeroVector,
    #[error("empty input")]
    EmptyInput,
    #[error("origin not interior / degenerate simplex")]
    Degenerate,
    #[error("index does not divide g")]
    IndexDoesNotDivide,
    #[error("singular facet system")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{what} out of range")]
    OutOfRange { what: &'static str },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("arithmetic overflow in fixed-width path")]
    Overflow,
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
