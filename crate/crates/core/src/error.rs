use thiserror::Error;

/// Crate-wide error type. The three public variants map onto the CLI's
/// exit-code contract: input errors exit 2, verification and resolution
/// failures exit 3.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-contract input (unknown descriptor, guard
    /// exceeded, non-invertible matrix where invertibility is required, ...).
    #[error("input error: {0}")]
    Input(String),

    /// A computed object failed one of its checked invariants; the message
    /// names the worst node, offending entry or failed invariant.
    #[error("verification error: {0}")]
    Verification(String),

    /// Sampled data too coarse for the requested invariant (winding-number
    /// phase jumps of π or more).
    #[error("resolution error: {0}")]
    Resolution(String),

    /// A condition the library guarantees impossible for valid inputs.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }
}
