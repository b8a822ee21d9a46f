use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arms belong to different distribution families")]
    FamilyMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("arm means are equal; the best arm is not identifiable")]
    ZeroGap,

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("bisection did not converge: bracket [{lo}, {hi}], residual {residual}")]
    NoConvergence { lo: f64, hi: f64, residual: f64 },

    #[error("arm variances differ; use the alpha-elimination strategy instead")]
    UnequalVariances,

    #[error("config error: {0}")]
    Config(String),

    #[error("strategy error: {0}")]
    Strategy(String),
}

pub type Result<T> = std::result::Result<T, Error>;
