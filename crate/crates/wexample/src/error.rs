use thiserror::Error;

#[derive(Debug, Error)]
pub enum WError {
    #[error(transparent)]
    Kernel(#[from] tdm_core::KernelError),
    #[error(transparent)]
    Decomp(#[from] tdm_decomp::DecompError),
    #[error(transparent)]
    Word(#[from] tdm_raylab::RayError),
    #[error("depth {depth} exceeds the cap {cap}")]
    CapExceeded { depth: usize, cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("the circuit converges to {found}, not to {wanted}")]
    NotConvergent { wanted: String, found: String },
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
}

pub type Result<T> = std::result::Result<T, WError>;
