use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("bad coefficient: {0}")]
    BadCoefficient(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("coalgebra mismatch: {0}")]
    CoalgebraMismatch(String),
    #[error("coalgebra must be positively graded (basis element `{0}` has negative degree)")]
    NotPositivelyGraded(String),
    #[error("expected concentrated data (degree 0, zero differential): {0}")]
    NotConcentrated(String),
    #[error("dimension cap exceeded: {0}")]
    TooLarge(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("truncation window too small: {0}")]
    Window(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unresolved reference: {0}")]
    Unresolved(String),
    #[error("invariance falsified: {0}")]
    Falsified(String),
}

pub type Result<T> = std::result::Result<T, Error>;
