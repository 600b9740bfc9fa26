use thiserror::Error;

/// Errors surfaced by sieve construction, censuses and density evaluators.
#[derive(Debug, Error)]
pub enum Error {
    /// A request would exceed a configured memory or search budget.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An argument violates a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// An integer lies outside the range covered by the factor sieve.
    #[error("value {value} outside sieve range (limit {limit})")]
    OutOfRange { value: i64, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
