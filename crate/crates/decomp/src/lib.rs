//! 2-separations, 2-sums and adhesion-2 tree-decompositions of finite matroids.

pub mod deco;
pub mod error;
pub mod separation;
pub mod tree;

pub use deco::{
    canonical_decomposition, canonical_decomposition_with, canonical_precircuit, realistic_minor_witness,
    subtree_torso, torso, torso_tree, Decomposition, MinorWitness, SplitStrategy, TreeDecomposition,
};
pub use error::{DecompError, Result};
pub use separation::{
    connectivity_order, find_2_separations, is_connected, is_three_connected, shape, split_at, two_sum, Separation,
    Shape,
};
pub use tree::{glue_tree, glue_tree_in_order, virtual_label, MatroidTree, Precircuit};
