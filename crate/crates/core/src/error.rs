use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic mismatch: {0} vs {1}")]
    FieldMismatch(u32, u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("map does not restrict: image of basis vector {0} leaves the codomain")]
    NotRestrictable(usize),
    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("cell {cell} has a face {face} that is not a valid cell id")]
    DanglingFace { cell: usize, face: usize },
    #[error("cell {cell} of dim {dim} lists face {face} of dim {face_dim}")]
    Gradation {
        cell: usize,
        dim: usize,
        face: usize,
        face_dim: usize,
    },
    #[error("boundary of boundary is nonzero on cell {0}")]
    BoundarySquare(usize),
    #[error("cells are not sorted by dimension at cell {0}")]
    CellOrder(usize),
    #[error("subcomplex is not closed: face {face} of cell {cell} missing")]
    NotClosed { cell: usize, face: usize },
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("chain of degree {got} where degree {expected} was expected")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("cell {0} is not simplicial")]
    NotSimplicial(usize),

    #[error("unsupported geometry: {0}")]
    Unsupported(String),
    #[error("invalid periodic data: {0}")]
    InvalidPeriodic(String),

    #[error("relation {sigma} <= {tau}: {reason}")]
    Relation {
        sigma: usize,
        tau: usize,
        reason: String,
    },
    #[error("square {sigma} <= {tau} does not commute")]
    Square { sigma: usize, tau: usize },
    #[error("invalid sheaf data: {0}")]
    InvalidSheaf(String),
    #[error("base is not a circle: {0}")]
    NotACircle(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
