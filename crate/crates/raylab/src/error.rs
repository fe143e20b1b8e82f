use tdm_core::KernelError;
use tdm_treeglue::GlueError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RayError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Glue(#[from] GlueError),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid symbolic object: {0}")]
    InvalidSymbolic(String),
    #[error("`{0}` is not a real element of the ray")]
    UnknownElement(String),
    #[error("the ray is not nice: {0}")]
    NotNice(String),
    #[error("operation requires the ray of K4s: {0}")]
    NotQ(String),
    #[error("invalid planarity certificate: {0}")]
    Certificate(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, RayError>;
