use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("argument out of supported range: {0}")]
    OutOfRange(String),
    #[error("malformed point configuration: {0}")]
    MalformedConfiguration(String),
    #[error("enumeration cap exceeded: n = {n}, cap = {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("time {t} outside curve domain [{start}, {end}]")]
    OutsideDomain { t: f64, start: f64, end: f64 },
    #[error("curve is not admissible: {0}")]
    NotAdmissible(String),
    #[error("jump rates are unbounded on [{t0}, {t1}]")]
    UnboundedRates { t0: f64, t1: f64 },
    #[error("truncation defect {defect:e} exceeds tolerance {tolerance:e}")]
    TruncationDefect { defect: f64, tolerance: f64 },
    #[error("duplicate coordinate in planar configuration: {0}")]
    DuplicateCoordinate(String),
    #[error("contour containment violated: {0}")]
    Containment(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
