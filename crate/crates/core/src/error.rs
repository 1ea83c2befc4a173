use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("operator sizes differ: {0}")]
    SizeMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("element does not belong to this algebra: {0}")]
    AlgebraMismatch(String),
    #[error("exponent must be at least 1, got {0}")]
    InvalidExponent(u32),
    #[error("Leibniz identity fails; build the algebra unvalidated to inspect it")]
    NotLeibniz,
    #[error("Lie set closure exceeded {cap} members")]
    CapExceeded { cap: usize },
    #[error("element {0} does not act nilpotently")]
    NotNilpotent(String),
    #[error("flag stalled at level {level} (dimension {dim} of {module_dim})")]
    FlagStalled { level: usize, dim: usize, module_dim: usize },
    #[error("no nonzero joint annihilator exists")]
    NoAnnihilator,
    #[error("subspace {which} is not an ideal")]
    NotAnIdeal { which: usize },
    #[error("ideal {which} is not nilpotent")]
    NotNilpotentIdeal { which: usize },
    #[error("characteristic is {0}, not zero")]
    CharacteristicNotZero(u64),
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub(crate) fn fields(left: impl ToString, right: impl ToString) -> Self {
        Error::FieldMismatch {
            left: left.to_string(),
            right: right.to_string(),
        }
    }
}
