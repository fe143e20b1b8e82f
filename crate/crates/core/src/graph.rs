//! Finite multigraphs with labelled edges, and their cycle matroids.

use crate::error::Result;
use crate::matroid::{FiniteMatroid, GroundSet};
use crate::set::{self, Set};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize, String)>,
}

impl Graph {
    pub fn new(vertices: usize) -> Self {
        Graph {
            vertices,
            edges: Vec::new(),
        }
    }

    /// Graph on vertices `0..n` with the given edges, each labelled `"{u}{v}"`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in pairs {
            g.add_edge(u, v, format!("{u}{v}"));
        }
        g
    }

    /// Adds an isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize, label: impl Into<String>) -> usize {
        assert!(u < self.vertices && v < self.vertices, "edge endpoint out of range");
        self.edges.push((u, v, label.into()));
        self.edges.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, String)] {
        &self.edges
    }

    pub fn ends(&self, e: usize) -> (usize, usize) {
        (self.edges[e].0, self.edges[e].1)
    }

    pub fn label(&self, e: usize) -> &str {
        &self.edges[e].2
    }

    fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for (i, (u, v, _)) in self.edges.iter().enumerate() {
            adj[*u].push((*v, i));
            if u != v {
                adj[*v].push((*u, i));
            }
        }
        adj
    }

    /// Edge-index sets of all cycles (loops, digons and longer cycles).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let adj = self.incidence();
        let mut out = Vec::new();
        for (i, (u, v, _)) in self.edges.iter().enumerate() {
            if u == v {
                out.push(vec![i]);
            }
        }
        let mut on_path = vec![false; self.vertices];
        let mut path_edges = Vec::new();
        for s in 0..self.vertices {
            on_path[s] = true;
            self.extend_cycles(s, s, &adj, &mut on_path, &mut path_edges, &mut out);
            on_path[s] = false;
        }
        out
    }

    // Enumerates paths from `s` through vertices larger than `s`; a path that can
    // return to `s` closes a cycle. Each cycle is found twice (once per direction)
    // and kept only when its first edge index is below its last.
    fn extend_cycles(
        &self,
        s: usize,
        at: usize,
        adj: &[Vec<(usize, usize)>],
        on_path: &mut [bool],
        path_edges: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for &(w, e) in &adj[at] {
            if w == at || path_edges.contains(&e) {
                continue;
            }
            if w == s {
                if !path_edges.is_empty() && path_edges[0] < e {
                    let mut c = path_edges.clone();
                    c.push(e);
                    out.push(c);
                }
                continue;
            }
            if w < s || on_path[w] {
                continue;
            }
            on_path[w] = true;
            path_edges.push(e);
            self.extend_cycles(s, w, adj, on_path, path_edges, out);
            path_edges.pop();
            on_path[w] = false;
        }
    }

    pub fn ground(&self) -> Result<GroundSet> {
        GroundSet::new(self.edges.iter().map(|e| e.2.clone()))
    }

    /// Cycle matroid: circuits are the edge sets of cycles.
    pub fn cycle_matroid(&self) -> Result<FiniteMatroid> {
        let ground = self.ground()?;
        let index: Vec<usize> = self
            .edges
            .iter()
            .map(|e| ground.index(&e.2).expect("label present"))
            .collect();
        let circuits: Vec<Set> = self
            .cycles()
            .iter()
            .map(|c| c.iter().fold(0, |acc, e| acc | set::bit(index[*e])))
            .collect();
        FiniteMatroid::new(ground, circuits)
    }

    /// Number of connected components among vertices that carry an edge, plus isolated vertices.
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices);
        for (u, v, _) in &self.edges {
            uf.union(*u, *v);
        }
        (0..self.vertices).filter(|v| uf.find(*v) == *v).count()
    }

    /// Connected, at least three vertices, and no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        if self.vertices < 3 || self.components() != 1 {
            return false;
        }
        (0..self.vertices).all(|x| self.connected_without(x))
    }

    fn connected_without(&self, x: usize) -> bool {
        let mut uf = UnionFind::new(self.vertices);
        for (u, v, _) in &self.edges {
            if *u != x && *v != x {
                uf.union(*u, *v);
            }
        }
        let roots: std::collections::BTreeSet<usize> =
            (0..self.vertices).filter(|v| *v != x).map(|v| uf.find(v)).collect();
        roots.len() == 1
    }
}

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
