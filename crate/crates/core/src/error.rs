use thiserror::Error;

/// Errors raised by the exact, numeric and certificate layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("constant polynomial is not allowed here")]
    ConstantPolynomial,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),

    #[error("product H^{i} x H^{j} is not specified for basis vectors {bi} and {bj}")]
    UnspecifiedProduct {
        i: usize,
        j: usize,
        bi: usize,
        bj: usize,
    },

    #[error("invalid eigenvalue selection: {0}")]
    InvalidSelection(String),

    #[error("numerically degenerate: {0}")]
    Degenerate(String),

    #[error("form has the wrong symmetry type: {0}")]
    WrongSymmetry(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("loci are not transverse: {0}")]
    NotTransverse(String),

    #[error("size too small: {0}")]
    TooSmall(String),

    #[error("wrong ring variant: {0}")]
    WrongVariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
