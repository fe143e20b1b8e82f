//! The doubled binary tree `W`: truncations, the shape of their canonical
//! tree-decomposition, sign words induced by circuits along an end, τ-legality
//! and the partition remark for `M(K4)`.

pub mod deco;
pub mod error;
pub mod graph;
pub mod parity;
pub mod remark;
pub mod sign;

pub use deco::{verify_decomposition, verify_w_decomposition, w_decomposition, NodeKind, WDecomposition, WNode, WReport};
pub use error::{Result, WError};
pub use graph::{build_w, build_w_capped, build_w_with_cap, WGraph};
pub use parity::{check_bond_meetings, truncation_bonds, BondReport};
pub use remark::{check_remark, verify_parallel_edges_remark, RemarkCase, RemarkReport};
pub use sign::{induce_sign_word, is_tau_legal, parse_signs, Policy, Sign, SignWord, TauSpec, Turn, WCircuit};
