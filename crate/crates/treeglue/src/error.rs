use tdm_core::KernelError;
use tdm_decomp::DecompError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlueError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error("`{0}` is a virtual element")]
    VirtualElement(String),
    #[error("`{0}` is not an element of the tree")]
    UnknownElement(String),
    #[error("`{0}` is both contracted and deleted")]
    ContractedAndDeleted(String),
    #[error("invalid precircuit: {0}")]
    InvalidPrecircuit(String),
    #[error("invalid boundary description: {0}")]
    InvalidPsi(String),
    #[error("invalid ray: {0}")]
    InvalidRay(String),
    #[error("{count} precircuits exceed the limit of {limit}")]
    TooManyPrecircuits { count: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, GlueError>;
