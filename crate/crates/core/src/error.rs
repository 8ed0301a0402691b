use thiserror::Error;

use crate::sites::Metric;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the three points are collinear")]
    CollinearInput,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("operation requires the {expected} metric, site set uses {found}")]
    MetricMismatch { expected: Metric, found: Metric },
    #[error("sites are not in general position: {0}")]
    GeneralPositionViolation(String),
    #[error("invalid site set: {0}")]
    InvalidSiteSet(String),
    #[error("inconsistent face labels: {0}")]
    InconsistentLabels(String),
    #[error("boundary site {site} of face {face} has a color of the face label")]
    ColorLeak { face: usize, site: usize },
    #[error("geometry mismatch: {0}")]
    GeometryMismatch(String),
    #[error("no corresponding unbounded edge: {0}")]
    CorrespondenceFailure(String),
    #[error("invalid order {k}: must lie in 1..={m}")]
    InvalidOrder { k: usize, m: usize },
    #[error("malformed diagram document: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
