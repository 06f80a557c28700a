use thiserror::Error;

/// Unified error type for the crate.
///
/// Domain failures (invalid parameters, poles, unstable branches, ...) are
/// distinguished from usage failures (bad files, bad JSON) so the CLI can map
/// them to different exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("unsupported dimension: n must be at least 3, got {0}")]
    UnsupportedDimension(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("pole in sub-expression: {0}")]
    Pole(String),

    #[error("specialization produced an identically zero denominator: {0}")]
    PoleUnderSpecialization(String),

    #[error("incompatible variable universes: {0}")]
    VariableMismatch(String),

    #[error("argument outside domain: {0}")]
    OutsideDomain(String),

    #[error("no such division point: {0}")]
    NoSuchDivisionPoint(String),

    #[error("geometry violation: {0}")]
    Geometry(String),

    #[error("branch not stable: {0}")]
    BranchNotStable(String),

    #[error("neighborhood too large: {0}")]
    NeighborhoodTooLarge(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
