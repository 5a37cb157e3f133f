use thiserror::Error;

/// Errors raised by the code, equivalence, mass and classification layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is rank deficient: expected rank {expected}, found {found}")]
    Rank { expected: usize, found: usize },
    #[error("enumeration of 3^{needed} vectors exceeds the cap of 3^{cap}")]
    Capacity { needed: usize, cap: usize },
    #[error("brute-force oracle limited to length {cap}, got {n}")]
    OracleCapacity { n: usize, cap: usize },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("parameters outside the mass formula regime: n={n}, k={k}")]
    Domain { n: usize, k: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("integrity check failed: {0}")]
    Integrity(String),
    #[error("classification of [{n},{k}] incomplete: mass residual {residual}")]
    Incomplete { n: usize, k: usize, residual: String },
    #[error("corrupt data: {0}")]
    Data(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
