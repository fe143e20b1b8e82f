//! Rays of matroids of overlap 1 as symbolic objects: eventually periodic
//! prolonged circuits and cocircuits, the relations `∼` and `≃`, sets `Φ` of
//! circuit classes and the matroids `M_Φ`, the ray of K4s with its binary
//! conditions, and the collapse of plane rays to a single class.

pub mod error;
pub mod planar;
pub mod q;
pub mod relation;
pub mod search;
pub mod suite;
pub mod symbolic;
pub mod word;

pub use error::{RayError, Result};
pub use planar::{chord_planar_ray, planar_ray_collapse, q_planar_ray, CollapseReport, PlanarRay, PlaneNode};
pub use q::{
    binary_report, is_closed_under_f, mod3_words, q_circuit, q_class, q_cocircuit, q_phi, ternary_f, BinaryReport,
    Status,
};
pub use relation::{
    chain_simeq, cir_closed_check, finfix_check, in_phi_star, is_finite_phi_circuit, is_phi_circuit, simeq, truncate,
    PhiSet, TailGraph, Verdict,
};
pub use symbolic::{
    intersection_cardinality, is_omega_circuit, is_omega_cocircuit, sym_diff, tilde, Cardinality, Kind, Symbolic,
    SymbolicRayCircuit, SymbolicRayCocircuit, SymbolicSet,
};
pub use tdm_treeglue::{RayNode, RaySpec};
pub use suite::{cir_closed_suite, finfix_suite, SuiteReport};
pub use word::{parse_bits, BitWord, EPWord};
