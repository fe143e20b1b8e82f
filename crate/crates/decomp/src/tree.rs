//! Finite trees of matroids of overlap 1 and their 2-sum gluing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use tdm_core::set::{self, Set};
use tdm_core::text::{self, Doc, Entry, ParseError};
use tdm_core::{FiniteMatroid, GroundSet};

use crate::error::{DecompError, Result};
use crate::separation::two_sum;

/// Label of the virtual element on the tree edge between nodes `a` and `b`.
pub fn virtual_label(a: &str, b: &str) -> String {
    if a <= b {
        format!("{a}!{b}")
    } else {
        format!("{b}!{a}")
    }
}

/// Neighbours of `t` in the tree with the given edges, as `(neighbour, edge index)`.
pub fn neighbours(edges: &[(usize, usize)], t: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, (a, b)) in edges.iter().enumerate() {
        if *a == t {
            out.push((*b, i));
        } else if *b == t {
            out.push((*a, i));
        }
    }
    out
}

/// Nodes of the component of `T - from` containing `to`.
pub fn side(edges: &[(usize, usize)], from: usize, to: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    seen.insert(to);
    let mut stack = vec![to];
    while let Some(t) = stack.pop() {
        for (u, _) in neighbours(edges, t) {
            if u != from && seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen
}

/// A finite tree of matroids; tree edge `i` joins `edges[i]` and carries the
/// shared element `edge_labels[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidTree {
    pub nodes: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub edge_labels: Vec<String>,
    pub matroids: Vec<FiniteMatroid>,
}

/// A connected set of nodes with one local circuit (a mask over that node's
/// ground set) per node, consistent on virtual elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precircuit {
    pub nodes: Vec<usize>,
    pub choice: Vec<Set>,
}

impl MatroidTree {
    pub fn single(id: &str, m: FiniteMatroid) -> Self {
        MatroidTree {
            nodes: vec![id.to_string()],
            edges: Vec::new(),
            edge_labels: Vec::new(),
            matroids: vec![m],
        }
    }

    /// Builds and validates a tree.
    pub fn new(
        nodes: Vec<String>,
        edges: Vec<(usize, usize)>,
        edge_labels: Vec<String>,
        matroids: Vec<FiniteMatroid>,
    ) -> Result<Self> {
        let t = MatroidTree {
            nodes,
            edges,
            edge_labels,
            matroids,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == id)
    }

    /// Neighbours of `t` as `(neighbour, edge index)`.
    pub fn neighbours(&self, t: usize) -> Vec<(usize, usize)> {
        neighbours(&self.edges, t)
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|(x, y)| (*x == a && *y == b) || (*x == b && *y == a))
    }

    /// Nodes of the component of `T - from` containing `to`.
    pub fn side(&self, from: usize, to: usize) -> BTreeSet<usize> {
        side(&self.edges, from, to)
    }

    pub fn is_virtual(&self, label: &str) -> bool {
        self.edge_labels.iter().any(|l| l == label)
    }

    /// Ground set of the tree: every non-virtual element of every node.
    pub fn ground_labels(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .matroids
            .iter()
            .flat_map(|m| m.ground().labels().iter().cloned())
            .filter(|l| !self.is_virtual(l))
            .collect();
        out.sort();
        out
    }

    /// Checks that the edges form a tree, each edge label is shared by exactly its
    /// two endpoints, and no other label occurs in two nodes.
    pub fn validate(&self) -> Result<()> {
        let n = self.nodes.len();
        if self.matroids.len() != n || self.edge_labels.len() != self.edges.len() {
            return Err(DecompError::InvalidTree("field lengths disagree".into()));
        }
        let ids: BTreeSet<&String> = self.nodes.iter().collect();
        if ids.len() != n {
            return Err(DecompError::InvalidTree("duplicate node id".into()));
        }
        if n > 0 && self.edges.len() != n - 1 {
            return Err(DecompError::InvalidTree("edge count is not nodes - 1".into()));
        }
        let mut uf = tdm_core::graph::UnionFind::new(n);
        for (a, b) in &self.edges {
            if *a >= n || *b >= n || a == b || !uf.union(*a, *b) {
                return Err(DecompError::InvalidTree("edges do not form a tree".into()));
            }
        }
        let mut owners: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (t, m) in self.matroids.iter().enumerate() {
            for l in m.ground().labels() {
                owners.entry(l.as_str()).or_default().push(t);
            }
        }
        for (i, (a, b)) in self.edges.iter().enumerate() {
            let l = self.edge_labels[i].as_str();
            let own = owners.get(l).cloned().unwrap_or_default();
            let mut want = vec![*a, *b];
            want.sort();
            if own != want {
                return Err(DecompError::InvalidTree(format!(
                    "edge label `{l}` must lie in exactly {} and {}",
                    self.nodes[*a], self.nodes[*b]
                )));
            }
        }
        for (l, own) in &owners {
            if own.len() > 1 && !self.is_virtual(l) {
                let (a, b) = (own[0], own[1]);
                return Err(DecompError::InvalidTree(if self.edge_between(a, b).is_some() {
                    format!(
                        "nodes {} and {} share `{l}` besides their edge element (overlap above 1)",
                        self.nodes[a], self.nodes[b]
                    )
                } else {
                    format!(
                        "non-adjacent nodes {} and {} share `{l}`",
                        self.nodes[a], self.nodes[b]
                    )
                }));
            }
        }
        Ok(())
    }

    /// Nodewise map, keeping the tree shape.
    pub fn map_nodes<F>(&self, mut f: F) -> Result<MatroidTree>
    where
        F: FnMut(usize, &FiniteMatroid) -> Result<FiniteMatroid>,
    {
        let mut ms = Vec::with_capacity(self.len());
        for (t, m) in self.matroids.iter().enumerate() {
            ms.push(f(t, m)?);
        }
        Ok(MatroidTree {
            nodes: self.nodes.clone(),
            edges: self.edges.clone(),
            edge_labels: self.edge_labels.clone(),
            matroids: ms,
        })
    }

    /// Underlying set of a precircuit: its non-virtual elements, as labels.
    pub fn underlying(&self, p: &Precircuit) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for (t, c) in p.nodes.iter().zip(&p.choice) {
            for l in self.matroids[*t].ground().names(*c) {
                if !self.is_virtual(l) {
                    out.insert(l.to_string());
                }
            }
        }
        out
    }

    /// Checks the precircuit conditions: connected support, local circuits, and
    /// `e(tt') ∈ o(t)` exactly when `t'` is in the support.
    pub fn check_precircuit(&self, p: &Precircuit) -> Result<()> {
        if p.nodes.is_empty() || p.nodes.len() != p.choice.len() {
            return Err(DecompError::InvalidTree("empty or misaligned precircuit".into()));
        }
        let support: BTreeSet<usize> = p.nodes.iter().copied().collect();
        if !self.is_connected_subset(&support) {
            return Err(DecompError::NotSubtree);
        }
        for (t, c) in p.nodes.iter().zip(&p.choice) {
            let m = &self.matroids[*t];
            if !m.is_circuit(*c) {
                return Err(DecompError::InvalidTree(format!("choice at {} is not a circuit", self.nodes[*t])));
            }
            for (u, e) in self.neighbours(*t) {
                let idx = m.ground().index_of(&self.edge_labels[e])?;
                if set::contains(*c, idx) != support.contains(&u) {
                    return Err(DecompError::InvalidTree(format!(
                        "virtual element {} at {} is inconsistent with the support",
                        self.edge_labels[e], self.nodes[*t]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_connected_subset(&self, s: &BTreeSet<usize>) -> bool {
        let Some(&start) = s.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::new();
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for (u, _) in self.neighbours(t) {
                if s.contains(&u) && seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen.len() == s.len()
    }
}

/// Glues a finite tree of matroids by iterated 2-sums in edge order.
pub fn glue_tree(t: &MatroidTree) -> Result<FiniteMatroid> {
    let order: Vec<usize> = (0..t.edges.len()).collect();
    glue_tree_in_order(t, &order)
}

/// Glues along the edges in the given order (a permutation of the edge indices).
pub fn glue_tree_in_order(t: &MatroidTree, order: &[usize]) -> Result<FiniteMatroid> {
    t.validate()?;
    if t.is_empty() {
        return Ok(FiniteMatroid::free(GroundSet::default()));
    }
    let mut sorted = order.to_vec();
    sorted.sort();
    if sorted != (0..t.edges.len()).collect::<Vec<_>>() {
        return Err(DecompError::InvalidTree("edge order is not a permutation".into()));
    }
    // comp[t] is the index of the glued piece holding node t.
    let mut comp: Vec<usize> = (0..t.len()).collect();
    let mut pieces: Vec<Option<FiniteMatroid>> = t.matroids.iter().cloned().map(Some).collect();
    for &e in order {
        let (a, b) = t.edges[e];
        let (ca, cb) = (comp[a], comp[b]);
        let ma = pieces[ca].take().ok_or_else(|| DecompError::Internal("piece missing".into()))?;
        let mb = pieces[cb].take().ok_or_else(|| DecompError::Internal("piece missing".into()))?;
        let glued = two_sum(&ma, &mb, &t.edge_labels[e])?;
        pieces[ca] = Some(glued);
        for c in comp.iter_mut() {
            if *c == cb {
                *c = ca;
            }
        }
    }
    pieces[comp[0]]
        .take()
        .ok_or_else(|| DecompError::Internal("no glued piece".into()))
}

/// Text form:
///
/// ```text
/// nodes: [t0, t1]
/// edges: [[t0, t1]]
/// edgeElement: {t0-t1: t0!t1}
/// matroids: {t0: {elements: [...], circuits: [...]}, t1: {...}}
/// ```
///
/// `edgeElement` may be omitted, in which case edge `{v, w}` carries `v!w`.
pub fn write_tree(t: &MatroidTree) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "nodes: {}", text::list(&t.nodes));
    let edges: Vec<Vec<&str>> = t
        .edges
        .iter()
        .map(|(a, b)| vec![t.nodes[*a].as_str(), t.nodes[*b].as_str()])
        .collect();
    let _ = writeln!(out, "edges: {}", text::nested_list(&edges));
    let ee: Vec<String> = t
        .edges
        .iter()
        .zip(&t.edge_labels)
        .map(|((a, b), l)| format!("{}-{}: {l}", t.nodes[*a], t.nodes[*b]))
        .collect();
    let _ = writeln!(out, "edgeElement: {{{}}}", ee.join(", "));
    let ms: Vec<String> = t
        .nodes
        .iter()
        .zip(&t.matroids)
        .map(|(id, m)| format!("{id}: {}", text::inline_matroid(m)))
        .collect();
    let _ = writeln!(out, "matroids: {{{}}}", ms.join(", "));
    out
}

pub fn tree_from_entries(entries: &[Entry], line: usize) -> std::result::Result<MatroidTree, ParseError> {
    let nodes = text::token_list(text::require(entries, "nodes", line)?)?;
    let edges_entry = text::require(entries, "edges", line)?;
    let raw_edges = text::nested_token_list(edges_entry)?;
    let index = |id: &str, l: usize| {
        nodes
            .iter()
            .position(|n| n == id)
            .ok_or_else(|| ParseError::new(l, format!("unknown node `{id}`")))
    };
    let mut edges = Vec::new();
    for e in &raw_edges {
        if e.len() != 2 {
            return Err(ParseError::new(edges_entry.line, "each edge needs two nodes"));
        }
        edges.push((index(&e[0], edges_entry.line)?, index(&e[1], edges_entry.line)?));
    }
    let mut edge_labels: Vec<String> = edges
        .iter()
        .map(|(a, b)| virtual_label(&nodes[*a], &nodes[*b]))
        .collect();
    if let Some(ee) = text::find(entries, "edgeElement") {
        let map = ee
            .value
            .as_map()
            .ok_or_else(|| ParseError::new(ee.line, "edgeElement must be a map"))?;
        for item in map {
            let (a, b) = item
                .key
                .split_once('-')
                .ok_or_else(|| ParseError::new(item.line, "edge keys look like `a-b`"))?;
            let (ia, ib) = (index(a, item.line)?, index(b, item.line)?);
            let pos = edges
                .iter()
                .position(|(x, y)| (*x == ia && *y == ib) || (*x == ib && *y == ia))
                .ok_or_else(|| ParseError::new(item.line, format!("`{}` is not an edge", item.key)))?;
            edge_labels[pos] = text::single_token(item)?.to_string();
        }
    }
    let ms_entry = text::require(entries, "matroids", line)?;
    let ms = ms_entry
        .value
        .as_map()
        .ok_or_else(|| ParseError::new(ms_entry.line, "matroids must be a map"))?;
    let mut matroids = Vec::new();
    for id in &nodes {
        let item = text::require(ms, id, ms_entry.line)?;
        let fields = item
            .value
            .as_map()
            .ok_or_else(|| ParseError::new(item.line, format!("matroid for `{id}` must be a map")))?;
        matroids.push(text::matroid_from_entries(fields, item.line)?);
    }
    let t = MatroidTree {
        nodes,
        edges,
        edge_labels,
        matroids,
    };
    t.validate().map_err(|e| ParseError::new(line, e.to_string()))?;
    Ok(t)
}

pub fn parse_tree(src: &str) -> std::result::Result<MatroidTree, ParseError> {
    let doc = Doc::parse(src)?;
    tree_from_entries(&doc.entries, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangles() -> MatroidTree {
        let a = FiniteMatroid::from_labels(&["a", "b", "p"], &[vec!["a", "b", "p"]]).unwrap();
        let b = FiniteMatroid::from_labels(&["c", "d", "p"], &[vec!["c", "d", "p"]]).unwrap();
        MatroidTree::new(vec!["t0".into(), "t1".into()], vec![(0, 1)], vec!["p".into()], vec![a, b]).unwrap()
    }

    #[test]
    fn glue_two_triangles() {
        let m = glue_tree(&triangles()).unwrap();
        assert_eq!(m.ground().labels(), &["a", "b", "c", "d"]);
        assert_eq!(m.circuits(), &[0b1111]);
    }

    #[test]
    fn text_round_trip() {
        let t = triangles();
        let s = write_tree(&t);
        assert_eq!(parse_tree(&s).unwrap(), t);
        assert_eq!(write_tree(&parse_tree(&s).unwrap()), s);
    }

    #[test]
    fn overlap_two_rejected() {
        let a = FiniteMatroid::from_labels(&["a", "q", "p"], &[vec!["a", "q", "p"]]).unwrap();
        let b = FiniteMatroid::from_labels(&["c", "q", "p"], &[vec!["c", "q", "p"]]).unwrap();
        let t = MatroidTree::new(vec!["t0".into(), "t1".into()], vec![(0, 1)], vec!["p".into()], vec![a, b]);
        assert!(matches!(t, Err(DecompError::InvalidTree(msg)) if msg.contains("overlap")));
    }
}
