use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("element `{0}` is not in the ground set")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("ground set has {size} elements, more than the supported {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("ground set has {size} elements, above the exhaustive-check cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("the empty set is listed as a circuit")]
    EmptyCircuit,
    #[error("circuit family is not a clutter: {0} is contained in {1}")]
    NotClutter(String, String),
    #[error("circuit family does not satisfy circuit elimination")]
    NotAMatroid,
    #[error("contract and delete sets overlap in `{0}`")]
    Overlap(String),
    #[error("{0} is not a circuit")]
    NotACircuit(String),
    #[error("{0} is not a base")]
    NotABase(String),
    #[error("element `{0}` lies in the base")]
    InBase(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, KernelError>;
