use tdm_core::KernelError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("matroid is not connected")]
    NotConnected,
    #[error("not an exact 2-separation: {0}")]
    NotExactSeparation(String),
    #[error("2-sum needs ground sets meeting exactly in `{0}`")]
    BadOverlap(String),
    #[error("virtual element `{0}` is a loop or coloop")]
    Degenerate(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid tree of matroids: {0}")]
    InvalidTree(String),
    #[error("label `{0}` uses the reserved character `!`")]
    ReservedLabel(String),
    #[error("node set is not a connected subtree")]
    NotSubtree,
    #[error("no realistic minor witness found")]
    NoWitness,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, DecompError>;
