//! Library error type.

use crate::pattern::CopyMap;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A forbidden pattern copy was found where the caller assumed freeness.
    /// Carries the verified copy so pipelines can turn it into a success.
    #[error("found an induced copy of the forbidden pattern")]
    FoundCopy(Box<CopyMap>),

    /// An exhaustive search ran out of its configured budget; the true answer
    /// is unknown. Distinct from a verified negative.
    #[error("search budget exhausted: {0}")]
    SearchExhausted(String),

    /// A selection step the proof guarantees at formula-constant scale did
    /// not fire at the current (override) scale.
    #[error("bound did not fire: {0}")]
    BoundDidNotFire(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("certificate failed verification: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
