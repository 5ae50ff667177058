use thiserror::Error;

/// Errors raised by the engine.
///
/// `AlgorithmFault` and `Consistency` are never expected in a correct build;
/// they mark a disagreement between two constructions or a broken
/// invariant of the pairing and are reported, never repaired.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("range error: {0}")]
    Range(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("algorithm fault: {0}")]
    AlgorithmFault(String),
    #[error("internal consistency fault: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
