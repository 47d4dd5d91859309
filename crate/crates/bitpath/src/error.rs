use thiserror::Error;

/// Errors surfaced by the library. Budget errors mean the requested
/// computation is feasible but exceeds a configured cap; the closed-form
/// evaluator never hits them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{what} budget exceeded (limit {limit})")]
    Budget { what: &'static str, limit: u64 },
    #[error("{0}")]
    Domain(String),
    #[error("no reachable table row with 4 | k")]
    NoReachableRow,
    #[error("method disagreement: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
