use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("Veronese with d=1 is an isomorphism; normal bundle is zero")]
    DegreeOne,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} index {index} out of range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        index: i64,
        lo: i64,
        hi: i64,
    },

    #[error("twist mismatch: {0}")]
    TwistMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("inhomogeneous parametrization")]
    InhomogeneousParametrization,

    #[error("parametrization has base point")]
    BasePoint,

    #[error("presentation not injective")]
    NotInjective,

    #[error("cokernel not locally free")]
    NotLocallyFree,

    #[error("kernel generators did not reach rank {expected} inside the scan window (found {found})")]
    ScanWindowExhausted { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that come from mathematically invalid input, as
    /// opposed to malformed text.
    pub fn is_math_input(&self) -> bool {
        !matches!(self, Error::Parse(_))
    }
}
