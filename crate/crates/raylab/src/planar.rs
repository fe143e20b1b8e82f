//! Rays of plane graphs whose shared edges lie on a common outer face: every
//! prolonged circuit is `≃`-equivalent to the outer-face circuit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use tdm_core::graph::UnionFind;
use tdm_core::set::Set;
use tdm_core::Graph;
use tdm_treeglue::{RayNode, RaySpec};

use crate::error::{RayError, Result};
use crate::relation::sample_objects;
use crate::symbolic::{in_bit, out_bit, tilde, CircuitSide, Symbolic, SymbolicRayCircuit, SymbolicRayCocircuit};
use crate::word::EPWord;

/// A plane embedding of a node: the graph, its faces as edge-label cycles and
/// the index of the outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneNode {
    pub graph: Graph,
    pub faces: Vec<Vec<String>>,
    pub outer: usize,
}

/// A ray together with one certificate per template node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarRay {
    pub ray: RaySpec,
    pub prefix: Vec<PlaneNode>,
    pub cycle: Vec<PlaneNode>,
}

impl PlaneNode {
    pub fn new(graph: Graph, faces: &[&[&str]], outer: usize) -> Self {
        PlaneNode {
            graph,
            faces: faces.iter().map(|f| f.iter().map(|l| l.to_string()).collect()).collect(),
            outer,
        }
    }

    /// Checks that the graph realizes the node, is 2-connected, and that the
    /// faces form a sphere embedding with both shared edges on the outer face.
    pub fn check(&self, node: &RayNode) -> Result<()> {
        let bad = |m: String| Err(RayError::Certificate(m));
        let g = &self.graph;
        if g.cycle_matroid()? != node.matroid {
            return bad("the graph's cycle matroid differs from the node".into());
        }
        if !g.is_two_connected() {
            return bad("the graph is not 2-connected".into());
        }
        let index: BTreeMap<&str, usize> = (0..g.edge_count()).map(|e| (g.label(e), e)).collect();
        let mut uses = vec![0usize; g.edge_count()];
        let mut corners: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertex_count()];
        for (fi, face) in self.faces.iter().enumerate() {
            let mut edges = Vec::new();
            for l in face {
                match index.get(l.as_str()) {
                    Some(e) => edges.push(*e),
                    None => return bad(format!("face {fi} names unknown edge `{l}`")),
                }
            }
            if !is_cycle(g, &edges) {
                return bad(format!("face {fi} is not a cycle"));
            }
            for e in &edges {
                uses[*e] += 1;
            }
            for v in 0..g.vertex_count() {
                let at: Vec<usize> = edges.iter().copied().filter(|e| touches(g, *e, v)).collect();
                if at.len() == 2 {
                    corners[v].push((at[0], at[1]));
                }
            }
        }
        if let Some(e) = uses.iter().position(|u| *u != 2) {
            return bad(format!("edge `{}` lies on {} faces", g.label(e), uses[e]));
        }
        let euler = g.vertex_count() as i64 - g.edge_count() as i64 + self.faces.len() as i64;
        if euler != 2 {
            return bad(format!("Euler characteristic {euler}, not 2"));
        }
        for (v, cs) in corners.iter().enumerate() {
            let at: Vec<usize> = (0..g.edge_count()).filter(|e| touches(g, *e, v)).collect();
            let pos: BTreeMap<usize, usize> = at.iter().enumerate().map(|(i, e)| (*e, i)).collect();
            let mut uf = UnionFind::new(at.len());
            for (a, b) in cs {
                uf.union(pos[a], pos[b]);
            }
            let roots: BTreeSet<usize> = (0..at.len()).map(|i| uf.find(i)).collect();
            if roots.len() != 1 || cs.len() != at.len() {
                return bad(format!("the faces around vertex {v} do not form a single disc"));
            }
        }
        let Some(outer) = self.faces.get(self.outer) else {
            return bad("no outer face".into());
        };
        for l in [&node.input, &node.output] {
            if !outer.contains(l) {
                return bad(format!("`{l}` is not on the outer face"));
            }
        }
        Ok(())
    }

    fn outer_mask(&self, node: &RayNode) -> Result<Set> {
        Ok(node.matroid.ground().mask(self.faces[self.outer].iter())?)
    }
}

fn touches(g: &Graph, e: usize, v: usize) -> bool {
    let (a, b) = g.ends(e);
    a == v || b == v
}

fn is_cycle(g: &Graph, edges: &[usize]) -> bool {
    let distinct: BTreeSet<usize> = edges.iter().copied().collect();
    if distinct.len() != edges.len() || edges.len() < 2 {
        return false;
    }
    let mut degree = vec![0; g.vertex_count()];
    let mut uf = UnionFind::new(g.vertex_count());
    for e in edges {
        let (a, b) = g.ends(*e);
        degree[a] += 1;
        degree[b] += 1;
        uf.union(a, b);
    }
    let used: Vec<usize> = (0..g.vertex_count()).filter(|v| degree[*v] > 0).collect();
    used.iter().all(|v| degree[*v] == 2) && used.iter().map(|v| uf.find(*v)).collect::<BTreeSet<_>>().len() == 1
}

impl PlanarRay {
    pub fn new(ray: RaySpec, prefix: Vec<PlaneNode>, cycle: Vec<PlaneNode>) -> Result<Self> {
        if prefix.len() != ray.prefix.len() || cycle.len() != ray.cycle.len() {
            return Err(RayError::Certificate("one certificate per template node is required".into()));
        }
        Ok(PlanarRay { ray, prefix, cycle })
    }

    fn certificate(&self, k: usize) -> &PlaneNode {
        let p = self.ray.prefix.len();
        if k <= p {
            &self.prefix[k - 1]
        } else {
            &self.cycle[(k - 1 - p) % self.cycle.len()]
        }
    }

    pub fn check(&self) -> Result<()> {
        for (i, (node, cert)) in self
            .ray
            .prefix
            .iter()
            .chain(&self.ray.cycle)
            .zip(self.prefix.iter().chain(&self.cycle))
            .enumerate()
        {
            cert.check(node)
                .map_err(|e| RayError::Certificate(format!("template {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    /// The prolonged circuit using the outer face at every node from node 1.
    pub fn outer_circuit(&self) -> Result<SymbolicRayCircuit> {
        let r = &self.ray;
        let head = r.prefix.len() + 1;
        let masks: Vec<Set> = (1..=head + r.cycle.len())
            .map(|k| self.certificate(k).outer_mask(r.node(k)))
            .collect::<Result<_>>()?;
        let (u, v) = masks.split_at(head);
        Symbolic::new(1, EPWord::new(u.to_vec(), v.to_vec())?)
    }
}

/// Outcome of [`planar_ray_collapse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseReport {
    pub classes_checked: usize,
    pub collapsed: usize,
    /// Sampled circuits with no cocircuit `b` such that `o ∼ b ∼ o_outer`.
    pub failures: Vec<String>,
}

impl CollapseReport {
    pub fn all_collapse(&self) -> bool {
        self.failures.is_empty() && self.collapsed == self.classes_checked
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "classes-checked: {}", self.classes_checked);
        let _ = writeln!(out, "collapsed: {}", self.collapsed);
        for f in &self.failures {
            let _ = writeln!(out, "failure: {f}");
        }
        let _ = writeln!(out, "single-class: {}", self.all_collapse());
        out
    }
}

/// For every sampled prolonged circuit `o` (tails of period at most
/// `max_cycle`) builds a prolonged cocircuit `b` with `o ∼ b` and
/// `o_outer ∼ b`, so that `o ≃ o_outer`.
pub fn planar_ray_collapse(pr: &PlanarRay, max_cycle: usize) -> Result<CollapseReport> {
    let r = &pr.ray;
    if let Some(why) = r.niceness_failure()? {
        return Err(RayError::NotNice(why));
    }
    pr.check()?;
    let dual = r.dual()?;
    let outer = pr.outer_circuit()?;
    if let Some(why) = outer.failure(r)? {
        return Err(RayError::Certificate(format!("outer faces do not form a prolonged circuit: {why}")));
    }
    let samples = sample_objects::<CircuitSide>(r, max_cycle)?;
    let mut report = CollapseReport {
        classes_checked: samples.len(),
        collapsed: 0,
        failures: Vec::new(),
    };
    for o in &samples {
        match bridge(r, &dual, o, &outer)? {
            Some(b) if tilde(r, o, &b) && tilde(r, &outer, &b) && b.is_valid(r)? => report.collapsed += 1,
            _ => report.failures.push(o.render_inline(r)),
        }
    }
    Ok(report)
}

/// A prolonged cocircuit meeting `o` and `outer` only in shared elements from
/// the common threshold on.
fn bridge(
    r: &RaySpec,
    dual: &RaySpec,
    o: &SymbolicRayCircuit,
    outer: &SymbolicRayCircuit,
) -> Result<Option<SymbolicRayCocircuit>> {
    let (to, po) = o.window(r);
    let (tu, pu) = outer.window(r);
    let t = to.max(tu);
    let p = crate::word::lcm(po, pu);
    let mut letters = Vec::new();
    for k in 1..t + p {
        let node = dual.node(k);
        let shared = in_bit(node) | out_bit(node);
        let need = if k == 1 { out_bit(node) } else { shared };
        let avoid = (o.letter(k) | outer.letter(k)) & !shared;
        let pick = node
            .matroid
            .circuits()
            .iter()
            .copied()
            .filter(|d| d & need == need)
            .find(|d| k < t || d & avoid == 0);
        match pick {
            Some(d) => letters.push(d),
            None => return Ok(None),
        }
    }
    let cycle = letters.split_off(t - 1);
    Ok(Some(Symbolic::new(1, EPWord::new(letters, cycle)?)?))
}

fn graph(edges: &[(usize, usize, &str)]) -> Graph {
    let n = edges.iter().map(|(u, v, _)| u.max(v) + 1).max().unwrap_or(0);
    let mut g = Graph::new(n);
    for (u, v, l) in edges {
        g.add_edge(*u, *v, *l);
    }
    g
}

/// The chord ray with its embedding: the 4-cycle `a p z q` bounds the outer face.
pub fn chord_planar_ray() -> Result<PlanarRay> {
    let g = graph(&[(0, 3, "a"), (1, 2, "z"), (0, 1, "p"), (2, 3, "q"), (0, 2, "r")]);
    let cert = PlaneNode::new(g, &[&["p", "z", "r"], &["q", "a", "r"], &["a", "p", "z", "q"]], 2);
    PlanarRay::new(tdm_treeglue::rays::chord_ray()?, Vec::new(), vec![cert])
}

/// The ray of K4s with the embedding of K4 whose outer face is `{a, b0, b1}`.
/// Every face of K4 is a triangle and `a`, `z` are disjoint edges, so no face
/// carries both and the certificate is rejected.
pub fn q_planar_ray() -> Result<PlanarRay> {
    let g = graph(&[(0, 1, "a"), (0, 3, "b0"), (1, 2, "c0"), (1, 3, "b1"), (0, 2, "c1"), (2, 3, "z")]);
    let faces: &[&[&str]] = &[&["a", "b0", "b1"], &["a", "c0", "c1"], &["b0", "c1", "z"], &["b1", "c0", "z"]];
    let cert = PlaneNode::new(g, faces, 0);
    PlanarRay::new(tdm_treeglue::rays::q_ray()?, Vec::new(), vec![cert])
}

/// The ray of 4-circuits, each a plane 4-cycle with two faces.
pub fn c4_planar_ray() -> Result<PlanarRay> {
    let g = graph(&[(0, 1, "a"), (1, 2, "x"), (2, 3, "z"), (3, 0, "y")]);
    let face: &[&str] = &["a", "x", "z", "y"];
    let cert = PlaneNode::new(g, &[face, face], 0);
    PlanarRay::new(tdm_treeglue::rays::c4_ray()?, Vec::new(), vec![cert])
}
