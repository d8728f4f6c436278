use thiserror::Error;

/// Errors raised by the algebra kernel.
///
/// Every variant that concerns a specific tensor entry or file location
/// carries enough text to name it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("inconsistent values for equivalent keys: {0}")]
    Inconsistent(String),

    #[error("singular basis change: {0}")]
    Singular(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("Jacobi identity violated: {0}")]
    JacobiViolation(String),

    #[error("limit does not exist: {0}")]
    NoLimit(String),

    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("non-diagonal Cartan action: {0}")]
    NonDiagonalCartan(String),

    #[error("translation action is not nilpotent/commuting: {0}")]
    NotNilpotent(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("io error: {0}")]
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
        Error::Malformed(e.to_string())
    }
}
