//! Trees of matroids of overlap 1 as values: validation, duals and minors,
//! precircuits and Ψ-circuits, phantom precircuits and niceness of periodic rays.

pub mod error;
pub mod ops;
pub mod psi;
pub mod ray;
pub mod rays;

pub use error::{GlueError, Result};
pub use ops::{contract_tree, delete_tree, dual_tree, minor_tree, validate_matroid_tree, TreeReport};
pub use psi::{
    check_precircuit, enumerate_precircuits, enumerate_psi_circuits, is_phantom, phantom_edge, real_ground,
    PsiCircuits, PsiSpec,
};
pub use ray::{is_nice_ray, parse_ray, write_ray, RayNode, RaySpec};
pub use tdm_decomp::{glue_tree, MatroidTree, Precircuit};
