use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("curve must be strictly convex: {0}")]
    ConvexityRequired(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("field is unbounded in region: {0}")]
    UnboundedField(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("estimator not applicable: {0}")]
    EstimatorInapplicable(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
