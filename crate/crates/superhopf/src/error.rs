use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mode conflict")]
    RingModeConflict,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A division that the theory guarantees to be exact left a remainder.
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("cocycle inconsistent: {0}")]
    CocycleInconsistent(String),
    #[error("trace not graded")]
    TraceNotGraded,
    #[error("not Frobenius for this trace")]
    NotFrobenius,
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("module not expressible: {0}")]
    NotExpressible(String),
    #[error("truncation overflow: level {level} exceeds {bound}")]
    Truncation { level: usize, bound: usize },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors that signal a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Internal(_) | Error::CocycleInconsistent(_) | Error::RingModeConflict
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
