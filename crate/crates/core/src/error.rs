use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated an operation's precondition (size mismatch, empty region, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A code or circuit document failed validation.
    #[error("validation failed: {0}")]
    Validation(String),

    /// No stabilizer element matches the operator on the region.
    #[error("cleaning obstruction: {reason}")]
    CleaningObstruction { reason: String, internal_inconsistency: bool },

    /// The exhaustive distance search would exceed its enumeration budget.
    #[error("exact distance infeasible: {0}")]
    DistanceInfeasible(String),

    /// A dense simulation or enumeration exceeds its resource budget.
    #[error("resource budget exceeded: {0}")]
    Budget(String),

    /// Experiment setup cannot be satisfied for this instance.
    #[error("setup error: {0}")]
    Setup(String),

    #[error("unsupported gate {0} (Clifford gates only)")]
    UnsupportedGate(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}
