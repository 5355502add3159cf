use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex index {index} out of range for a graph of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),

    #[error("generator needs at least one vertex")]
    EmptyGenerator,

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("{op} requires m >= {min}, got m = {m}")]
    MTooSmall {
        op: &'static str,
        m: usize,
        min: usize,
    },

    #[error("invalid copy pair ({i}, {j}) for m = {m}")]
    InvalidCopyPair { i: usize, j: usize, m: usize },

    #[error("{op} with m = {m} is outside the closed form's range (needs m >= {min})")]
    MOutOfTheoremRange {
        op: &'static str,
        m: usize,
        min: usize,
    },

    #[error("no closed form for {0}")]
    NoClosedForm(String),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("expected {expected} entries, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("base spectrum has total multiplicity {actual}, expected order {expected}")]
    SpectrumOrderMismatch { expected: usize, actual: usize },

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("invalid tolerances: {0}")]
    InvalidTolerances(String),

    #[error("{0} is not defined for this matrix kind")]
    UnsupportedKind(&'static str),

    #[error("integer overflow in exact determinant")]
    Overflow,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Errors caused by the mathematical domain (as opposed to malformed input
    /// or configuration).
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            Error::Parse(_) | Error::Io(_) | Error::InvalidTolerances(_)
        )
    }
}

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
