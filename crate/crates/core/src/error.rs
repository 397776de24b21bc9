use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("exponent vector has a negative entry: {0}")]
    NegativeEntry(String),

    #[error("malformed rational {0:?}")]
    InvalidRational(String),

    #[error("hyperplanes {first} and {second} coincide")]
    DuplicateHyperplane { first: usize, second: usize },

    #[error("degenerate specialization matrix: {0}")]
    Degenerate(String),

    #[error("size bound exceeded: {size} > {limit}")]
    SizeBound { size: usize, limit: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    /// A structural invariant failed to hold. Never caused by bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::ZeroVector => "zero_vector",
            Error::NegativeEntry(_) => "negative_entry",
            Error::InvalidRational(_) => "invalid_rational",
            Error::DuplicateHyperplane { .. } => "duplicate_hyperplane",
            Error::Degenerate(_) => "degenerate",
            Error::SizeBound { .. } => "size_bound",
            Error::InvalidInput(_) => "invalid_input",
            Error::Json(_) => "malformed_json",
            Error::Io(_) => "io",
            Error::Internal(_) => "internal",
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
