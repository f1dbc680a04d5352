use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero norm: {0}")]
    ZeroNorm(&'static str),

    #[error("dimension {len} is not a power of {dim}")]
    NotPowerOf { len: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("invalid register shape: {0}")]
    InvalidShape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid qudit list: {0}")]
    InvalidQuditList(String),

    #[error("dense materialization of side {side} exceeds cap {cap}")]
    SizeCap { side: usize, cap: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroNorm(_) => "zero_norm",
            Error::NotPowerOf { .. } => "not_power_of_dim",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotSquare { .. } => "not_square",
            Error::NotHermitian(_) => "not_hermitian",
            Error::NotPositive(_) => "not_positive",
            Error::InvalidShape(_) => "invalid_shape",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::InvalidQuditList(_) => "invalid_qudit_list",
            Error::SizeCap { .. } => "size_cap",
            Error::Parse { .. } => "parse",
            Error::Unsupported(_) => "unsupported",
            Error::Format(_) => "format",
            Error::Numerical(_) => "numerical",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
