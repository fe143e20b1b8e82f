//! Named rays used by tests, the command line and the acceptance suite.

use tdm_core::{FiniteMatroid, Graph};

use crate::error::Result;
use crate::ray::{RayNode, RaySpec};

fn graph_node(vertices: usize, edges: &[(usize, usize, &str)], input: &str, output: &str) -> Result<RayNode> {
    let mut g = Graph::new(vertices);
    for (u, v, l) in edges {
        g.add_edge(*u, *v, *l);
    }
    RayNode::new(g.cycle_matroid()?, input, output)
}

/// One copy of K4 with elements `a, b0, b1, c0, c1, z`: `a` and `z` are disjoint
/// edges, `{a, b0, c0, z}` and `{a, b1, c1, z}` are 4-cycles, and `{b_v, c_(1-v), z}`
/// are triangles.
pub fn q_node() -> Result<RayNode> {
    graph_node(
        4,
        &[(0, 1, "a"), (0, 3, "b0"), (1, 2, "c0"), (1, 3, "b1"), (0, 2, "c1"), (2, 3, "z")],
        "a",
        "z",
    )
}

/// The ray of K4s: node `i` has elements `a_i, b0_i, b1_i, c0_i, c1_i` and shares
/// `a_(i+1)` with node `i + 1`.
pub fn q_ray() -> Result<RaySpec> {
    RaySpec::periodic(vec![q_node()?])
}

/// Every node a 4-element circuit `{a, x, y, z}`.
pub fn c4_ray() -> Result<RaySpec> {
    let m = FiniteMatroid::from_labels(&["a", "x", "y", "z"], &[vec!["a", "x", "y", "z"]])?;
    RaySpec::periodic(vec![RayNode::new(m, "a", "z")?])
}

/// Every node a triangle `{a, x, z}`.
pub fn triangle_ray() -> Result<RaySpec> {
    let m = FiniteMatroid::from_labels(&["a", "x", "z"], &[vec!["a", "x", "z"]])?;
    RaySpec::periodic(vec![RayNode::new(m, "a", "z")?])
}

/// A plane 4-cycle `x x' y' y` with the chord `x y'`; `in = xy` and `out = x'y'`
/// are disjoint edges on the outer face. Element names: `a = xy`, `z = x'y'`,
/// `p = xx'`, `q = y'y`, `r = xy'`.
pub fn chord_node() -> Result<RayNode> {
    graph_node(
        4,
        &[(0, 3, "a"), (1, 2, "z"), (0, 1, "p"), (2, 3, "q"), (0, 2, "r")],
        "a",
        "z",
    )
}

pub fn chord_ray() -> Result<RaySpec> {
    RaySpec::periodic(vec![chord_node()?])
}

/// All named rays.
pub fn named_rays() -> Result<Vec<(&'static str, RaySpec)>> {
    Ok(vec![
        ("Q", q_ray()?),
        ("C4", c4_ray()?),
        ("triangle", triangle_ray()?),
        ("chord", chord_ray()?),
    ])
}
