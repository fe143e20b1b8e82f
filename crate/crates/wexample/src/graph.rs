//! Truncations of the graph `W`: every vertex of the binary tree becomes two
//! non-adjacent vertices, adjacent tree vertices give all four edges between
//! their pairs, and the pair of the root is joined by one edge.

use std::collections::BTreeSet;

use tdm_core::graph::UnionFind;
use tdm_core::{FiniteMatroid, Graph};

use crate::error::{Result, WError};

/// Largest depth [`build_w`] accepts.
pub const DEFAULT_DEPTH_CAP: usize = 4;

/// Largest depth whose edges fit in a ground set of [`WGraph::matroid`]:
/// depth 3 has 57 edges, depth 4 has 121.
pub const MATROID_DEPTH_CAP: usize = 3;

/// The edge joining the two root vertices.
pub const ROOT_EDGE: &str = "r";

/// The edge between `(parent(t), x)` and `(t, y)` for a nonempty address `t`.
pub fn gadget_label(t: &str, x: u8, y: u8) -> String {
    format!("e{t}_{x}{y}")
}

/// The edge closing off the pair of a leaf `t` in [`build_w_capped`].
pub fn cap_label(t: &str) -> String {
    format!("cap{t}")
}

/// The four edges between the pair of `parent(t)` and the pair of `t`.
pub fn gadget(t: &str) -> [String; 4] {
    [
        gadget_label(t, 1, 1),
        gadget_label(t, 2, 2),
        gadget_label(t, 1, 2),
        gadget_label(t, 2, 1),
    ]
}

/// Addresses of the binary tree up to depth `d`, breadth first: `""`, `"0"`, `"1"`, `"00"`, ...
pub fn addresses(d: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut level = vec![String::new()];
    for _ in 0..d {
        level = level.iter().flat_map(|a| [format!("{a}0"), format!("{a}1")]).collect();
        out.extend(level.iter().cloned());
    }
    out
}

fn heap_index(t: &str) -> usize {
    let value = t.chars().fold(0usize, |acc, c| 2 * acc + usize::from(c == '1'));
    (1usize << t.len()) - 1 + value
}

/// A truncation of `W` at depth `d`, optionally with every leaf pair closed by an edge.
#[derive(Debug, Clone)]
pub struct WGraph {
    pub depth: usize,
    pub capped: bool,
    pub graph: Graph,
}

/// `W` on the tree vertices of depth at most `d`, for `d ≤` [`DEFAULT_DEPTH_CAP`].
pub fn build_w(d: usize) -> Result<WGraph> {
    build_w_with_cap(d, DEFAULT_DEPTH_CAP)
}

pub fn build_w_with_cap(d: usize, cap: usize) -> Result<WGraph> {
    if d > cap {
        return Err(WError::CapExceeded { depth: d, cap });
    }
    let tree = addresses(d);
    let mut g = Graph::new(2 * tree.len());
    g.add_edge(0, 1, ROOT_EDGE);
    for t in tree.iter().skip(1) {
        let p = &t[..t.len() - 1];
        for x in 1..=2u8 {
            for y in 1..=2u8 {
                g.add_edge(vertex(p, x), vertex(t, y), gadget_label(t, x, y));
            }
        }
    }
    Ok(WGraph {
        depth: d,
        capped: false,
        graph: g,
    })
}

/// [`build_w`] with an extra edge [`cap_label`] joining the pair of every leaf,
/// which stands in for the part of `W` beyond the truncation.
pub fn build_w_capped(d: usize) -> Result<WGraph> {
    let mut w = build_w(d)?;
    for t in addresses(d).iter().filter(|t| t.len() == d && d > 0) {
        w.graph.add_edge(vertex(t, 1), vertex(t, 2), cap_label(t));
    }
    w.capped = true;
    Ok(w)
}

/// Index of the vertex `(t, side)`, `side ∈ {1, 2}`.
pub fn vertex(t: &str, side: u8) -> usize {
    2 * heap_index(t) + usize::from(side - 1)
}

impl WGraph {
    /// `2 (2^(d+1) - 1)`.
    pub fn expected_vertices(d: usize) -> usize {
        2 * ((1 << (d + 1)) - 1)
    }

    /// `4 (2^(d+1) - 2) + 1`: one root edge and four edges per tree edge.
    pub fn expected_edges(d: usize) -> usize {
        4 * ((1 << (d + 1)) - 2) + 1
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        (0..self.graph.edge_count()).find(|e| self.graph.label(*e) == label)
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.graph.edge_count()).map(|e| self.graph.label(e).to_string()).collect()
    }

    /// Rank of an edge set in the cycle matroid: vertices touched minus components.
    pub fn rank(&self, edges: &BTreeSet<usize>) -> usize {
        let mut uf = UnionFind::new(self.graph.vertex_count());
        edges.iter().filter(|e| {
            let (u, v) = self.graph.ends(**e);
            uf.union(u, v)
        }).count()
    }

    /// Vertices incident with an edge of `edges`.
    pub fn touched(&self, edges: &BTreeSet<usize>) -> BTreeSet<usize> {
        edges
            .iter()
            .flat_map(|e| {
                let (u, v) = self.graph.ends(*e);
                [u, v]
            })
            .collect()
    }

    /// The cycle matroid, for depth at most [`MATROID_DEPTH_CAP`].
    pub fn matroid(&self) -> Result<FiniteMatroid> {
        if self.depth > MATROID_DEPTH_CAP {
            return Err(WError::CapExceeded {
                depth: self.depth,
                cap: MATROID_DEPTH_CAP,
            });
        }
        Ok(self.graph.cycle_matroid()?)
    }
}
