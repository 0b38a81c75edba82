use bicrossx_exact::{ExactError, ExactMatrix};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("malformed permutation `{input}`: {reason}")]
    Permutation { input: String, reason: String },
    #[error("group closure exceeds the order bound {0}")]
    OrderBound(usize),
    #[error("subgroups do not factorize the group: {0}")]
    NotFactorization(String),
    #[error("matched-pair condition fails: {0}")]
    MatchedPair(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("unknown calculus `{0}`")]
    UnknownCalculus(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("splitting search exhausted on a component of dimension {}; supply a splitting vector", .component.rows())]
    SplittingExhausted { component: ExactMatrix },
    #[error("invariant failure: {0}")]
    Invariant(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

impl CoreError {
    /// True for failures that indicate a defect rather than bad input.
    pub fn is_internal(&self) -> bool { matches!(self, CoreError::Invariant(_) | CoreError::Exact(_) | CoreError::SplittingExhausted { .. }) }
}

pub type Result<T> = std::result::Result<T, CoreError>;
