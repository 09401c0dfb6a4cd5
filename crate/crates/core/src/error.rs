use thiserror::Error;

use crate::arrangement::{CurveId, Dart};

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed arrangement: {0}")]
    Structure(String),
    #[error("invalid arrangement: {0}")]
    Invalid(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("outer face is a digon; reroot before counting")]
    OuterFaceIsDigon,
    #[error("curve {0} has no digon")]
    MissingDigonRegion(CurveId),
    #[error("curve {0} has no digon-free stretch of edges")]
    NoDigonFreeSubarc(CurveId),
    #[error("no digon between curves {0} and {1}")]
    NoSuchDigon(CurveId, CurveId),
    #[error("vertex {0} is not a touching point")]
    NotATouching(usize),
    #[error("face {0} is not a digon")]
    NotADigon(usize),
    #[error("query curve {0} is shared with the edge")]
    SharedCurveQuery(CurveId),
    #[error("edges share an endpoint")]
    NotIndependent,
    #[error("degenerate positions: {0}")]
    DegeneratePositions(String),
    #[error("dart {0} not found")]
    UnknownDart(Dart),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("surgery failed: {0}")]
    SurgeryFailed(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
