//! The tree-decomposition of a truncation of `W` along the subdivided binary
//! tree, and its verification against the decomposition engine.
//!
//! The truncation is taken with every leaf pair closed by a cap edge (see
//! [`build_w_capped`]), which plays the part of the infinite rest of `W`
//! beyond that pair. Branch nodes `b{t}` sit at the tree vertices of depth
//! below `d` and subdivision nodes `s{t}` on the tree edges; the subdivision
//! nodes of the last level contain a cap edge and are flagged as boundary.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use tdm_core::{FiniteMatroid, Graph};
use tdm_decomp::{canonical_decomposition_with, shape, Shape, SplitStrategy};

use crate::error::{Result, WError};
use crate::graph::{addresses, build_w_capped, cap_label, gadget, WGraph, ROOT_EDGE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// A vertex of the binary tree.
    Branch,
    /// The subdivision vertex of a tree edge.
    Subdivision,
}

#[derive(Debug, Clone)]
pub struct WNode {
    pub id: String,
    pub kind: NodeKind,
    pub address: String,
    pub boundary: bool,
    /// Edge indices of the capped truncation.
    pub part: BTreeSet<usize>,
    pub torso: FiniteMatroid,
    pub virtuals: Vec<String>,
}

/// The decomposition with its torsos; `edges[i]` joins a node to one farther from the root.
#[derive(Debug, Clone)]
pub struct WDecomposition {
    pub graph: WGraph,
    pub nodes: Vec<WNode>,
    pub edges: Vec<(usize, usize)>,
}

/// The virtual element of the tree edge from `near` to `far`, `near` closer to the root.
pub fn virtual_element(near: &str, far: &str) -> String {
    format!("v_{near}_{far}")
}

fn branch_id(t: &str) -> String {
    format!("b{t}")
}

fn subdivision_id(t: &str) -> String {
    format!("s{t}")
}

fn circuit_names(m: &FiniteMatroid) -> BTreeSet<BTreeSet<String>> {
    m.circuits()
        .iter()
        .map(|c| m.ground().names(*c).into_iter().map(String::from).collect())
        .collect()
}

impl WDecomposition {
    pub fn index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    /// Nodes on `to`'s side of the tree edge between `from` and `to`.
    pub fn side(&self, from: usize, to: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([from, to]);
        let mut stack = vec![to];
        let mut out = BTreeSet::from([to]);
        while let Some(v) = stack.pop() {
            for u in self.neighbours(v) {
                if seen.insert(u) {
                    out.insert(u);
                    stack.push(u);
                }
            }
        }
        out
    }

    /// Recomputes every torso from the parts and the tree.
    pub fn refresh_torsos(&mut self) -> Result<()> {
        for v in 0..self.nodes.len() {
            let (torso, virtuals) = torso(self, v)?;
            self.nodes[v].torso = torso;
            self.nodes[v].virtuals = virtuals;
        }
        Ok(())
    }

    /// Edges of the truncation in the parts of `nodes`.
    pub fn part_union(&self, nodes: &BTreeSet<usize>) -> BTreeSet<usize> {
        nodes.iter().flat_map(|v| self.nodes[*v].part.iter().copied()).collect()
    }
}

/// Builds the decomposition of the capped truncation at depth `d ≥ 1` with its torsos.
pub fn w_decomposition(d: usize) -> Result<WDecomposition> {
    if d == 0 {
        return Err(WError::Precondition("the decomposition needs depth at least 1".into()));
    }
    let graph = build_w_capped(d)?;
    let edge = |label: &str| -> Result<usize> {
        graph
            .edge_index(label)
            .ok_or_else(|| WError::Precondition(format!("missing edge {label}")))
    };
    let mut nodes = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for t in addresses(d) {
        if !t.is_empty() {
            let mut part: BTreeSet<usize> = gadget(&t).iter().map(|l| edge(l)).collect::<Result<_>>()?;
            let boundary = t.len() == d;
            if boundary {
                part.insert(edge(&cap_label(&t))?);
            }
            index.insert(subdivision_id(&t), nodes.len());
            nodes.push((subdivision_id(&t), NodeKind::Subdivision, t.clone(), boundary, part));
        }
        if t.len() < d {
            let part = if t.is_empty() { BTreeSet::from([edge(ROOT_EDGE)?]) } else { BTreeSet::new() };
            index.insert(branch_id(&t), nodes.len());
            nodes.push((branch_id(&t), NodeKind::Branch, t.clone(), false, part));
        }
    }
    let mut edges = Vec::new();
    for t in addresses(d).iter().skip(1) {
        let parent = &t[..t.len() - 1];
        edges.push((index[&branch_id(parent)], index[&subdivision_id(t)]));
        if t.len() < d {
            edges.push((index[&subdivision_id(t)], index[&branch_id(t)]));
        }
    }
    let mut deco = WDecomposition {
        graph,
        nodes: Vec::new(),
        edges,
    };
    // Torsos need the tree in place; build the nodes with placeholder torsos first.
    deco.nodes = nodes
        .into_iter()
        .map(|(id, kind, address, boundary, part)| WNode {
            id,
            kind,
            address,
            boundary,
            part,
            torso: FiniteMatroid::free(tdm_core::GroundSet::default()),
            virtuals: Vec::new(),
        })
        .collect();
    deco.refresh_torsos()?;
    Ok(deco)
}

/// The two vertices shared by the edge sets on either side of the tree edge `from`–`to`.
fn attachments(deco: &WDecomposition, from: usize, to: usize) -> Result<(usize, usize)> {
    let far = deco.part_union(&deco.side(from, to));
    let near = deco.part_union(&deco.side(to, from));
    let shared: Vec<usize> = deco
        .graph
        .touched(&far)
        .intersection(&deco.graph.touched(&near))
        .copied()
        .collect();
    match shared[..] {
        [a, b] => Ok((a, b)),
        _ => Err(WError::Precondition(format!(
            "the tree edge {}–{} is attached at {} vertices",
            deco.nodes[from].id,
            deco.nodes[to].id,
            shared.len()
        ))),
    }
}

fn near_far(deco: &WDecomposition, a: usize, b: usize) -> (String, String) {
    if deco.edges.contains(&(a, b)) {
        (deco.nodes[a].id.clone(), deco.nodes[b].id.clone())
    } else {
        (deco.nodes[b].id.clone(), deco.nodes[a].id.clone())
    }
}

/// The part of `v` plus, for each incident tree edge, a virtual edge joining its attachment vertices.
fn torso(deco: &WDecomposition, v: usize) -> Result<(FiniteMatroid, Vec<String>)> {
    let g = &deco.graph.graph;
    let mut local: BTreeMap<usize, usize> = BTreeMap::new();
    let mut edges: Vec<(usize, usize, String)> = Vec::new();
    for &e in &deco.nodes[v].part {
        let (a, b) = g.ends(e);
        edges.push((a, b, g.label(e).to_string()));
    }
    let mut virtuals = Vec::new();
    for u in deco.neighbours(v) {
        let (a, b) = attachments(deco, v, u)?;
        let (near, far) = near_far(deco, v, u);
        let label = virtual_element(&near, &far);
        virtuals.push(label.clone());
        edges.push((a, b, label));
    }
    for (a, b, _) in &edges {
        for x in [*a, *b] {
            let n = local.len();
            local.entry(x).or_insert(n);
        }
    }
    let mut t = Graph::new(local.len());
    for (a, b, l) in edges {
        t.add_edge(local[&a], local[&b], l);
    }
    Ok((t.cycle_matroid()?, virtuals))
}

/// Outcome of [`verify_w_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WReport {
    pub depth: usize,
    pub branch_nodes: usize,
    pub subdivision_nodes: usize,
    pub boundary_nodes: usize,
    pub k4_torsos: usize,
    pub parallel_torsos: usize,
    pub separations_checked: usize,
    pub windows_checked: usize,
    pub failures: Vec<String>,
}

impl WReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "depth: {}", self.depth);
        let _ = writeln!(out, "branch-nodes: {}", self.branch_nodes);
        let _ = writeln!(out, "subdivision-nodes: {}", self.subdivision_nodes);
        let _ = writeln!(out, "boundary-nodes: {}", self.boundary_nodes);
        let _ = writeln!(out, "k4-torsos: {}", self.k4_torsos);
        let _ = writeln!(out, "parallel-torsos: {}", self.parallel_torsos);
        let _ = writeln!(out, "separations-checked: {}", self.separations_checked);
        let _ = writeln!(out, "windows-checked: {}", self.windows_checked);
        for f in &self.failures {
            let _ = writeln!(out, "failure: {f}");
        }
        let _ = writeln!(out, "shape-matches: {}", self.passed());
        out
    }
}

/// `M(K4)` whose virtual elements lie in no common triangle.
fn is_k4_with_opposite_virtuals(node: &WNode) -> bool {
    let m = &node.torso;
    if m.len() != 6 || m.full_rank() != 3 || !matches!(shape(m), Ok(Shape::ThreeConnected)) {
        return false;
    }
    let triangles = m.circuits().iter().filter(|c| c.count_ones() == 3).count();
    if triangles != 4 {
        return false;
    }
    let Ok(pair) = m.ground().mask(node.virtuals.iter()) else {
        return false;
    };
    node.virtuals.len() == 2 && m.circuits().iter().all(|c| c.count_ones() != 3 || c & pair != pair)
}

/// Three elements, every two of them a circuit.
fn is_parallel_triple(m: &FiniteMatroid) -> bool {
    m.len() == 3 && m.circuits().len() == 3 && m.circuits().iter().all(|c| c.count_ones() == 2)
}

/// Checks that the decomposition of the capped truncation at depth `d ∈ 2..=4`
/// has the shape of the subdivided binary tree with `M(K4)` torsos on the
/// subdivided edges, whose two virtual elements are non-adjacent, and torsos of
/// three parallel elements at the tree vertices:
///
/// - every tree edge induces an exact 2-separation of the truncation;
/// - every interior torso has its claimed shape, and boundary nodes are only counted;
/// - no two adjacent torsos are both circuits or both cocircuits, so the
///   decomposition is the canonical one;
/// - around every branch node, the decomposition engine run on the window of
///   its incident edges (far sides replaced by single edges) returns exactly
///   the torsos above.
pub fn verify_w_decomposition(d: usize) -> Result<WReport> {
    if d < 2 {
        return Err(WError::Precondition("verification needs depth at least 2".into()));
    }
    verify_decomposition(&w_decomposition(d)?)
}

/// The checks of [`verify_w_decomposition`] on a given decomposition of a capped truncation.
pub fn verify_decomposition(deco: &WDecomposition) -> Result<WReport> {
    let d = deco.graph.depth;
    let mut failures = Vec::new();
    let count = |k: NodeKind| deco.nodes.iter().filter(|n| n.kind == k).count();
    let mut report = WReport {
        depth: d,
        branch_nodes: count(NodeKind::Branch),
        subdivision_nodes: count(NodeKind::Subdivision),
        boundary_nodes: deco.nodes.iter().filter(|n| n.boundary).count(),
        k4_torsos: 0,
        parallel_torsos: 0,
        separations_checked: 0,
        windows_checked: 0,
        failures: Vec::new(),
    };
    if report.branch_nodes != (1 << d) - 1 || report.subdivision_nodes != (1 << (d + 1)) - 2 {
        failures.push(format!(
            "{} branch and {} subdivision nodes, not those of the subdivided binary tree",
            report.branch_nodes, report.subdivision_nodes
        ));
    }

    // Parts partition the edges.
    let all: BTreeSet<usize> = (0..deco.graph.graph.edge_count()).collect();
    let covered = deco.nodes.iter().map(|n| n.part.len()).sum::<usize>();
    if deco.part_union(&(0..deco.nodes.len()).collect()) != all || covered != all.len() {
        failures.push("the parts do not partition the edges".into());
    }

    // Degrees of the subdivided binary tree.
    for (v, node) in deco.nodes.iter().enumerate() {
        let deg = deco.neighbours(v).len();
        let want = match (node.kind, node.address.is_empty(), node.boundary) {
            (NodeKind::Branch, true, _) => 2,
            (NodeKind::Branch, false, _) => 3,
            (NodeKind::Subdivision, _, true) => 1,
            (NodeKind::Subdivision, _, false) => 2,
        };
        if deg != want {
            failures.push(format!("{} has degree {deg}, expected {want}", node.id));
        }
    }

    // Exact 2-separations.
    let full = deco.graph.rank(&all);
    for &(a, b) in &deco.edges {
        let x = deco.part_union(&deco.side(a, b));
        let y: BTreeSet<usize> = all.difference(&x).copied().collect();
        let order = deco.graph.rank(&x) + deco.graph.rank(&y) - full;
        report.separations_checked += 1;
        if order != 1 || x.len() < 2 || y.len() < 2 {
            failures.push(format!(
                "{}–{}: sides of sizes {} and {} with order {order}",
                deco.nodes[a].id,
                deco.nodes[b].id,
                x.len(),
                y.len()
            ));
        }
    }

    // Torso shapes.
    let mut shapes = Vec::new();
    for node in &deco.nodes {
        let s = shape(&node.torso)?;
        shapes.push(s);
        if node.boundary {
            continue;
        }
        match node.kind {
            NodeKind::Subdivision if is_k4_with_opposite_virtuals(node) => report.k4_torsos += 1,
            NodeKind::Branch if is_parallel_triple(&node.torso) => report.parallel_torsos += 1,
            NodeKind::Subdivision => failures.push(format!("{} is not M(K4) with opposite virtual elements", node.id)),
            NodeKind::Branch => failures.push(format!("{} is not three parallel elements", node.id)),
        }
    }
    for &(a, b) in &deco.edges {
        let like = matches!(
            (shapes[a], shapes[b]),
            (Shape::Circuit, Shape::Circuit) | (Shape::Cocircuit, Shape::Cocircuit)
        );
        if like || shapes[a] == Shape::Other || shapes[b] == Shape::Other {
            failures.push(format!("{}–{} breaks the canonical conditions", deco.nodes[a].id, deco.nodes[b].id));
        }
    }

    // The engine on the window around each branch node.
    for v in 0..deco.nodes.len() {
        if deco.nodes[v].kind == NodeKind::Branch {
            report.windows_checked += 1;
            if let Err(why) = check_window(deco, v)? {
                failures.push(why);
            }
        }
    }
    report.failures = failures;
    Ok(report)
}

/// Runs the decomposition engine on the edges of the subdivision nodes around
/// the branch node `v`, each far side replaced by an edge named after the
/// virtual element it stands for, and compares the torsos with the certificate.
fn check_window(deco: &WDecomposition, v: usize) -> Result<std::result::Result<(), String>> {
    let g = &deco.graph.graph;
    let centre = &deco.nodes[v];
    let around = deco.neighbours(v);
    let mut edges: Vec<(usize, usize, String)> = Vec::new();
    for &e in &centre.part {
        let (a, b) = g.ends(e);
        edges.push((a, b, g.label(e).to_string()));
    }
    for &u in &around {
        for &e in &deco.nodes[u].part {
            let (a, b) = g.ends(e);
            edges.push((a, b, g.label(e).to_string()));
        }
        for w in deco.neighbours(u).into_iter().filter(|w| *w != v) {
            let (a, b) = attachments(deco, u, w)?;
            let (near, far) = near_far(deco, u, w);
            edges.push((a, b, virtual_element(&near, &far)));
        }
    }
    let mut local: BTreeMap<usize, usize> = BTreeMap::new();
    for (a, b, _) in &edges {
        for x in [*a, *b] {
            let n = local.len();
            local.entry(x).or_insert(n);
        }
    }
    let mut window = Graph::new(local.len());
    for (a, b, l) in &edges {
        window.add_edge(local[a], local[b], l.clone());
    }
    let m = window.cycle_matroid()?;
    let engine = canonical_decomposition_with(&m, SplitStrategy::First, m.len())?;
    let tree = &engine.tree;
    if tree.nodes.len() != around.len() + 1 {
        return Ok(Err(format!(
            "window of {}: the engine returns {} torsos, expected {}",
            centre.id,
            tree.nodes.len(),
            around.len() + 1
        )));
    }
    // Match engine nodes to certificate nodes by their real elements.
    let owner = |labels: &[String]| -> usize {
        around
            .iter()
            .copied()
            .find(|u| deco.nodes[*u].part.iter().any(|e| labels.iter().any(|l| l == g.label(*e))))
            .unwrap_or(v)
    };
    let matched: Vec<usize> = tree.matroids.iter().map(|t| owner(t.ground().labels())).collect();
    let distinct: BTreeSet<usize> = matched.iter().copied().collect();
    if distinct.len() != matched.len() {
        return Ok(Err(format!("window of {}: two engine torsos share a certificate node", centre.id)));
    }
    let mut rename: BTreeMap<String, String> = BTreeMap::new();
    for (k, &(a, b)) in tree.edges.iter().enumerate() {
        let (near, far) = near_far(deco, matched[a], matched[b]);
        rename.insert(tree.edge_labels[k].clone(), virtual_element(&near, &far));
    }
    for (k, t) in tree.matroids.iter().enumerate() {
        let node = &deco.nodes[matched[k]];
        let relabelled = t.relabel(&rename)?;
        if circuit_names(&relabelled) != circuit_names(&node.torso) {
            return Ok(Err(format!("window of {}: the engine torso for {} differs", centre.id, node.id)));
        }
    }
    Ok(Ok(()))
}
