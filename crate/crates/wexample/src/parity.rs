//! Bonds of a truncation of `W` against circuits running to an end: with all
//! vertices of depth `d` joined to one extra vertex, every bond separating a
//! connected set of shallower vertices from the rest meets the truncated
//! circuit in an even number of edges, and in particular never in exactly one.

use std::collections::BTreeSet;

use tdm_core::graph::UnionFind;

use crate::error::{Result, WError};
use crate::graph::{addresses, build_w, vertex};
use crate::sign::WCircuit;

/// Largest depth [`truncation_bonds`] enumerates: depth 3 has 14 vertices above the leaves.
pub const BOND_DEPTH_CAP: usize = 3;

/// The bonds `δ(S)` of the truncation at depth `d` with the leaf vertices
/// joined to a vertex at infinity, over every nonempty `S` of vertices of
/// depth below `d` such that both `S` and its complement are connected.
pub fn truncation_bonds(d: usize) -> Result<Vec<BTreeSet<String>>> {
    if d == 0 {
        return Err(WError::Precondition("depth 0 has no vertex above the leaves".into()));
    }
    if d > BOND_DEPTH_CAP {
        return Err(WError::CapExceeded { depth: d, cap: BOND_DEPTH_CAP });
    }
    let w = build_w(d)?;
    let g = &w.graph;
    let inner: Vec<usize> = addresses(d - 1)
        .iter()
        .flat_map(|t| [vertex(t, 1), vertex(t, 2)])
        .collect();
    let leaves: Vec<usize> = addresses(d)
        .iter()
        .filter(|t| t.len() == d)
        .flat_map(|t| [vertex(t, 1), vertex(t, 2)])
        .collect();
    let infinity = g.vertex_count();
    let mut bonds = Vec::new();
    for mask in 1u64..(1 << inner.len()) {
        let in_s = |v: usize| inner.iter().position(|u| *u == v).is_some_and(|i| mask >> i & 1 == 1);
        let mut inside = UnionFind::new(infinity + 1);
        let mut outside = UnionFind::new(infinity + 1);
        let mut cut = BTreeSet::new();
        for e in 0..g.edge_count() {
            let (u, v) = g.ends(e);
            match (in_s(u), in_s(v)) {
                (true, true) => {
                    inside.union(u, v);
                }
                (false, false) => {
                    outside.union(u, v);
                }
                _ => {
                    cut.insert(g.label(e).to_string());
                }
            }
        }
        for l in &leaves {
            outside.union(*l, infinity);
        }
        let s: Vec<usize> = inner.iter().copied().filter(|v| in_s(*v)).collect();
        let rest: Vec<usize> = (0..infinity).filter(|v| !in_s(*v)).chain([infinity]).collect();
        let connected = |uf: &mut UnionFind, vs: &[usize]| {
            let root = uf.find(vs[0]);
            vs.iter().all(|v| uf.find(*v) == root)
        };
        if connected(&mut inside, &s) && connected(&mut outside, &rest) {
            bonds.push(cut);
        }
    }
    Ok(bonds)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BondReport {
    pub depth: usize,
    pub circuits: usize,
    pub bonds: usize,
    pub meetings: usize,
    /// `(circuit, bond)` pairs meeting in exactly one edge.
    pub single_edge: Vec<(String, Vec<String>)>,
    /// `(circuit, bond)` pairs meeting in an odd number of edges.
    pub odd: usize,
}

impl BondReport {
    pub fn passed(&self) -> bool {
        self.single_edge.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "depth: {}\ncircuits: {}\nbonds: {}\nmeetings: {}\nodd-meetings: {}\nsingle-edge-meetings: {}\n",
            self.depth,
            self.circuits,
            self.bonds,
            self.meetings,
            self.odd,
            self.single_edge.len()
        );
        for (x, b) in &self.single_edge {
            out.push_str(&format!("witness: {x} meets [{}] once\n", b.join(", ")));
        }
        out
    }
}

/// Checks that no bond of [`truncation_bonds`] meets the truncation of any of
/// `circuits` at depth `d` in exactly one edge.
pub fn check_bond_meetings(d: usize, circuits: &[WCircuit]) -> Result<BondReport> {
    let bonds = truncation_bonds(d)?;
    let mut report = BondReport {
        depth: d,
        circuits: circuits.len(),
        bonds: bonds.len(),
        meetings: 0,
        single_edge: Vec::new(),
        odd: 0,
    };
    for x in circuits {
        let edges = x.edges_up_to(d);
        for b in &bonds {
            let shared = edges.intersection(b).count();
            report.meetings += 1;
            if shared % 2 == 1 {
                report.odd += 1;
            }
            if shared == 1 {
                report.single_edge.push((x.render(), b.iter().cloned().collect()));
            }
        }
    }
    Ok(report)
}
