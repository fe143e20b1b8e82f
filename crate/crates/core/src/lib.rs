//! Finite matroids in circuit-set representation: rank and duality, minors,
//! exhaustive axiom checks and the standard circuit lemmas.

pub mod axioms;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod lemmas;
pub mod matroid;
pub mod set;
pub mod text;

pub use axioms::{Axiom, AxiomReport, Verdict, Witness};
pub use error::{KernelError, Result};
pub use graph::Graph;
pub use matroid::{FiniteMatroid, GroundSet, DEFAULT_CAP};
pub use set::Set;
