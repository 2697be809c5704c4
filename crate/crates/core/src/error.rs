use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A caller violated a structural precondition (not a subgroup, not normal, ...).
    #[error("contract violated: {0}")]
    Contract(String),

    /// A prime range request that cannot contain any prime.
    #[error("empty prime range: limit {0} < 2")]
    EmptyRange(u64),

    /// A mathematical invariant that must always hold was observed to fail.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// A least-squares fit could not be formed from the supplied samples.
    #[error("fit unavailable: {0}")]
    FitUnavailable(String),

    /// Malformed input file contents.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}
