use alloc::string::String;

/// Failure modes shared by every solver stage.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("radius {r} outside the sampled range [{lo}, {hi}]")]
    OutOfRange { r: f64, lo: f64, hi: f64 },
    #[error("no horizon on this slice")]
    NoHorizon,
    #[error("surface not embeddable: {0}")]
    NotEmbeddable(String),
    #[error("mean curvature condition violated: {0}")]
    MeanCurvature(String),
    #[error("solver failed to converge: {0}")]
    NonConvergence(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("missing input: {0}")]
    Missing(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}
