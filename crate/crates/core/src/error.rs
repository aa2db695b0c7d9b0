use thiserror::Error;

/// Unified error type for the whole crate.
///
/// Every fallible public operation returns `Result<T, Error>`. Variants carry
/// enough context to be actionable from the CLI without a backtrace.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    #[error("not symplectic: {0}")]
    NotSymplectic(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("contract violated: {0}")]
    ContractViolated(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
