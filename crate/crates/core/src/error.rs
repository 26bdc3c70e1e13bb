use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime below 65521")]
    InvalidPrime(u32),

    #[error("point counting over F_{0} is refused (only p <= 7 is enumerated)")]
    PointCountInfeasible(u32),

    #[error("point is not on the flag variety: {0}")]
    NotOnVariety(String),

    #[error("truncation did not stabilize up to T = {t_max}: {detail}")]
    NotStabilized { t_max: u32, detail: String },

    #[error("model error: {0}")]
    Model(String),

    #[error("unsupported expression: {0}")]
    Unsupported(String),

    #[error("resource budget exceeded: {0}")]
    Resource(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
