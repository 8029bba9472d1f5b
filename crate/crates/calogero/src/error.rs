use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported order: {0}")]
    UnsupportedOrder(f64),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("ill-conditioned evaluation: {0}")]
    IllConditioned(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("integration failed: {0}")]
    Integration(String),
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
