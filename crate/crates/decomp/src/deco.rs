//! Adhesion-2 tree-decompositions: torsos, canonical precircuits, the canonical
//! decomposition and realistic minor witnesses for subtree torsos.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use tdm_core::set::{self, Set};
use tdm_core::text;
use tdm_core::{FiniteMatroid, GroundSet, DEFAULT_CAP};

use crate::error::{DecompError, Result};
use crate::separation::{connectivity_order, is_connected, separations_of, shape, split_at, two_sum, Shape};
use crate::tree::{self, virtual_label, MatroidTree, Precircuit};

/// A tree with a partition of the ground set of `N` into parts, one per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub nodes: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub parts: Vec<Set>,
}

impl TreeDecomposition {
    pub fn single(n: &FiniteMatroid) -> Self {
        TreeDecomposition {
            nodes: vec!["t0".into()],
            edges: Vec::new(),
            parts: vec![n.all()],
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edge_label(&self, e: usize) -> String {
        let (a, b) = self.edges[e];
        virtual_label(&self.nodes[a], &self.nodes[b])
    }

    /// Elements of `N` in the parts of the nodes in `nodes`.
    pub fn part_union(&self, nodes: &BTreeSet<usize>) -> Set {
        nodes.iter().fold(0, |acc, t| acc | self.parts[*t])
    }

    /// Elements of `N` on the `to` side of the edge `from`-`to`.
    pub fn far_side(&self, from: usize, to: usize) -> Set {
        self.part_union(&tree::side(&self.edges, from, to))
    }

    /// Checks the tree shape, the partition, and that every edge induces a
    /// separation with both sides of size at least 2 and order at most 1.
    pub fn validate(&self, n: &FiniteMatroid) -> Result<()> {
        let k = self.nodes.len();
        if self.parts.len() != k || k == 0 || self.edges.len() + 1 != k {
            return Err(DecompError::InvalidDecomposition("shape mismatch".into()));
        }
        let mut uf = tdm_core::graph::UnionFind::new(k);
        for (a, b) in &self.edges {
            if *a >= k || *b >= k || !uf.union(*a, *b) {
                return Err(DecompError::InvalidDecomposition("edges do not form a tree".into()));
            }
        }
        let mut seen = 0;
        for p in &self.parts {
            if p & seen != 0 {
                return Err(DecompError::InvalidDecomposition("parts overlap".into()));
            }
            seen |= p;
        }
        if seen != n.all() {
            return Err(DecompError::InvalidDecomposition("parts do not cover the ground set".into()));
        }
        for (a, b) in &self.edges {
            let side = self.far_side(*a, *b);
            let other = n.all() & !side;
            if set::size(side) < 2 || set::size(other) < 2 || connectivity_order(n, side) > 1 {
                return Err(DecompError::InvalidDecomposition(format!(
                    "edge {}-{} does not induce a 2-separation",
                    self.nodes[*a], self.nodes[*b]
                )));
            }
        }
        Ok(())
    }

    /// Edges `(t, x)` with `t` in `s` and `x` outside it.
    fn boundary(&self, s: &BTreeSet<usize>) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if s.contains(a) && !s.contains(b) {
                out.push((*a, *b, i));
            } else if s.contains(b) && !s.contains(a) {
                out.push((*b, *a, i));
            }
        }
        out
    }

    fn check_subtree(&self, s: &BTreeSet<usize>) -> Result<()> {
        if s.is_empty() || s.iter().any(|t| *t >= self.len()) {
            return Err(DecompError::NotSubtree);
        }
        let start = *s.iter().next().expect("nonempty");
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for (u, _) in tree::neighbours(&self.edges, t) {
                if s.contains(&u) && seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        if seen.len() == s.len() {
            Ok(())
        } else {
            Err(DecompError::NotSubtree)
        }
    }
}

/// The local circuit at the star centred on `s` induced by a circuit `o` of `N`,
/// as (real part, boundary edges whose far side `o` meets); `None` when `o` lies
/// inside one far side.
fn star_projection(
    far: &[(usize, Set)],
    center: Set,
    o: Set,
) -> Option<(Set, Vec<usize>)> {
    if far.iter().any(|(_, f)| set::is_subset(o, *f)) {
        return None;
    }
    let hits = far.iter().filter(|(_, f)| o & f != 0).map(|(e, _)| *e).collect();
    Some((o & center, hits))
}

/// Torso of the star-decomposition centred on the subtree `s`: the part of `N` in
/// `s` plus one virtual element per boundary edge, named as in the tree.
pub fn subtree_torso(n: &FiniteMatroid, deco: &TreeDecomposition, s: &BTreeSet<usize>) -> Result<FiniteMatroid> {
    deco.check_subtree(s)?;
    let center = deco.part_union(s);
    let bd = deco.boundary(s);
    let far: Vec<(usize, Set)> = bd.iter().map(|(t, x, e)| (*e, deco.far_side(*t, *x))).collect();
    let mut labels: Vec<String> = n.ground().names(center).into_iter().map(String::from).collect();
    labels.extend(bd.iter().map(|(_, _, e)| deco.edge_label(*e)));
    let ground = GroundSet::new(labels)?;
    let mut fam = Vec::new();
    for o in n.circuits() {
        if let Some((real, hits)) = star_projection(&far, center, *o) {
            let mut mask = n.transfer(real, &ground)?;
            for e in hits {
                mask |= set::bit(ground.index_of(&deco.edge_label(e))?);
            }
            fam.push(mask);
        }
    }
    set::sort_family(&mut fam);
    Ok(FiniteMatroid::new(ground, fam)?)
}

/// Torso at node `v`.
pub fn torso(n: &FiniteMatroid, deco: &TreeDecomposition, v: usize) -> Result<FiniteMatroid> {
    deco.validate(n)?;
    subtree_torso(n, deco, &BTreeSet::from([v]))
}

/// All torsos as a tree of matroids.
pub fn torso_tree(n: &FiniteMatroid, deco: &TreeDecomposition) -> Result<MatroidTree> {
    deco.validate(n)?;
    let mut ms = Vec::with_capacity(deco.len());
    for v in 0..deco.len() {
        ms.push(subtree_torso(n, deco, &BTreeSet::from([v]))?);
    }
    let labels = (0..deco.edges.len()).map(|e| deco.edge_label(e)).collect();
    MatroidTree::new(deco.nodes.clone(), deco.edges.clone(), labels, ms)
}

/// The canonical precircuit of the circuit `o`: the nodes where its projection
/// is defined, with the projected local circuits as masks over the torso grounds.
pub fn canonical_precircuit(n: &FiniteMatroid, deco: &TreeDecomposition, o: Set) -> Result<Precircuit> {
    if !n.is_circuit(o) {
        return Err(tdm_core::KernelError::NotACircuit(n.ground().show(o)).into());
    }
    let mut nodes = Vec::new();
    let mut choice = Vec::new();
    for v in 0..deco.len() {
        let s = BTreeSet::from([v]);
        let bd = deco.boundary(&s);
        let far: Vec<(usize, Set)> = bd.iter().map(|(t, x, e)| (*e, deco.far_side(*t, *x))).collect();
        if let Some((real, hits)) = star_projection(&far, deco.parts[v], o) {
            let mut labels: Vec<String> = n.ground().names(deco.parts[v]).into_iter().map(String::from).collect();
            labels.extend(bd.iter().map(|(_, _, e)| deco.edge_label(*e)));
            let ground = GroundSet::new(labels)?;
            let mut mask = n.transfer(real, &ground)?;
            for e in hits {
                mask |= set::bit(ground.index_of(&deco.edge_label(e))?);
            }
            nodes.push(v);
            choice.push(mask);
        }
    }
    Ok(Precircuit { nodes, choice })
}

/// The result of a canonical decomposition: the tree-decomposition of `N` and
/// the tree of its torsos.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub deco: TreeDecomposition,
    pub tree: MatroidTree,
}

impl Decomposition {
    pub fn shapes(&self) -> Result<Vec<Shape>> {
        self.tree.matroids.iter().map(shape).collect()
    }

    /// Tree-decomposition text: `nodes`, `edges`, `parts`, then the torsos in the
    /// tree-of-matroids format.
    pub fn write(&self, n: &FiniteMatroid) -> String {
        let mut out = tree::write_tree(&self.tree);
        let parts: Vec<String> = self
            .deco
            .nodes
            .iter()
            .zip(&self.deco.parts)
            .map(|(id, p)| format!("{id}: {}", text::list(&n.ground().names(*p))))
            .collect();
        let _ = writeln!(out, "parts: {{{}}}", parts.join(", "));
        out
    }
}

/// Which exact 2-separation to split at when several exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitStrategy {
    First,
    Last,
}

/// The canonical decomposition: torsos of size at least 3 that are circuits,
/// cocircuits or 3-connected, with no two circuits and no two cocircuits adjacent.
pub fn canonical_decomposition(m: &FiniteMatroid) -> Result<Decomposition> {
    canonical_decomposition_with(m, SplitStrategy::First, DEFAULT_CAP)
}

pub fn canonical_decomposition_with(m: &FiniteMatroid, strategy: SplitStrategy, cap: usize) -> Result<Decomposition> {
    m.check_cap(cap)?;
    for l in m.ground().labels() {
        if l.contains('!') {
            return Err(DecompError::ReservedLabel(l.clone()));
        }
    }
    if !is_connected(m) {
        return Err(DecompError::NotConnected);
    }
    let mut nodes: Vec<Option<FiniteMatroid>> = vec![Some(m.clone())];
    let mut edges: Vec<(usize, usize, String)> = Vec::new();
    let mut fresh = 0usize;

    // Split phase.
    let mut i = 0;
    while i < nodes.len() {
        let node = nodes[i].clone().expect("present during splitting");
        if node.len() < 4 || matches!(shape(&node)?, Shape::Circuit | Shape::Cocircuit) {
            i += 1;
            continue;
        }
        let seps: Vec<_> = separations_of(&node).into_iter().filter(|s| s.order == 1).collect();
        let Some(sep) = (match strategy {
            SplitStrategy::First => seps.first(),
            SplitStrategy::Last => seps.last(),
        }) else {
            i += 1;
            continue;
        };
        let label = format!("!{fresh}");
        fresh += 1;
        let (na, nb) = split_at(&node, sep, &label)?;
        let j = nodes.len();
        for (a, b, l) in edges.iter_mut() {
            if nb.ground().contains(l) {
                if *a == i {
                    *a = j;
                }
                if *b == i {
                    *b = j;
                }
            }
        }
        nodes[i] = Some(na);
        nodes.push(Some(nb));
        edges.push((i, j, label));
    }

    // Merge phase: 2-sums of adjacent circuits and of adjacent cocircuits.
    loop {
        let mut merged = false;
        for k in 0..edges.len() {
            let (a, b, ref l) = edges[k];
            let (ma, mb) = (nodes[a].as_ref().expect("live"), nodes[b].as_ref().expect("live"));
            let (sa, sb) = (shape(ma)?, shape(mb)?);
            let like = matches!((sa, sb), (Shape::Circuit, Shape::Circuit) | (Shape::Cocircuit, Shape::Cocircuit));
            if !like {
                continue;
            }
            let glued = two_sum(ma, mb, l)?;
            nodes[a] = Some(glued);
            nodes[b] = None;
            edges.remove(k);
            for (x, y, _) in edges.iter_mut() {
                if *x == b {
                    *x = a;
                }
                if *y == b {
                    *y = a;
                }
            }
            merged = true;
            break;
        }
        if !merged {
            break;
        }
    }

    canonical_form(m, nodes, edges)
}

// Renumbers nodes by breadth-first search from the node holding the least element,
// visiting children in order of the least element of their subtree, and renames
// virtual elements after the final node ids.
fn canonical_form(
    m: &FiniteMatroid,
    nodes: Vec<Option<FiniteMatroid>>,
    edges: Vec<(usize, usize, String)>,
) -> Result<Decomposition> {
    let live: Vec<usize> = (0..nodes.len()).filter(|i| nodes[*i].is_some()).collect();
    let pos: BTreeMap<usize, usize> = live.iter().enumerate().map(|(k, i)| (*i, k)).collect();
    let ms: Vec<FiniteMatroid> = live.iter().map(|i| nodes[*i].clone().expect("live")).collect();
    let es: Vec<(usize, usize)> = edges.iter().map(|(a, b, _)| (pos[a], pos[b])).collect();
    let labels: Vec<String> = edges.iter().map(|(_, _, l)| l.clone()).collect();
    let real = |t: usize| -> Set { m.ground().mask(ms[t].ground().labels().iter().filter(|l| m.ground().contains(l))).unwrap_or(0) };
    let min_real = |nodes: &BTreeSet<usize>| -> u32 {
        nodes.iter().map(|t| real(*t)).fold(0, |a, b| a | b).trailing_zeros()
    };
    let root = (0..ms.len()).find(|t| real(*t) & 1 != 0).unwrap_or(0);
    let mut order = vec![root];
    let mut parent = vec![usize::MAX; ms.len()];
    let mut queue = VecDeque::from([root]);
    let mut visited = BTreeSet::from([root]);
    while let Some(t) = queue.pop_front() {
        let mut kids: Vec<(u32, usize)> = tree::neighbours(&es, t)
            .into_iter()
            .filter(|(u, _)| !visited.contains(u))
            .map(|(u, _)| (min_real(&tree::side(&es, t, u)), u))
            .collect();
        kids.sort();
        for (_, u) in kids {
            visited.insert(u);
            parent[u] = t;
            order.push(u);
            queue.push_back(u);
        }
    }
    let mut new_id = vec![0usize; ms.len()];
    for (k, t) in order.iter().enumerate() {
        new_id[*t] = k;
    }
    let ids: Vec<String> = (0..ms.len()).map(|k| format!("t{k}")).collect();
    let mut rename: BTreeMap<String, String> = BTreeMap::new();
    let mut new_edges = Vec::new();
    let mut new_labels = Vec::new();
    for &t in order.iter().skip(1) {
        let p = parent[t];
        let e = es
            .iter()
            .position(|(a, b)| (*a == p && *b == t) || (*a == t && *b == p))
            .ok_or_else(|| DecompError::Internal("lost a tree edge".into()))?;
        let (np, nt) = (new_id[p], new_id[t]);
        let label = virtual_label(&ids[np], &ids[nt]);
        rename.insert(labels[e].clone(), label.clone());
        new_edges.push((np, nt));
        new_labels.push(label);
    }
    let mut new_ms = vec![FiniteMatroid::free(GroundSet::default()); ms.len()];
    let mut parts = vec![0; ms.len()];
    for t in 0..ms.len() {
        new_ms[new_id[t]] = ms[t].relabel(&rename)?;
        parts[new_id[t]] = real(t);
    }
    let deco = TreeDecomposition {
        nodes: ids.clone(),
        edges: new_edges.clone(),
        parts,
    };
    let tree = MatroidTree::new(ids, new_edges, new_labels, new_ms)?;
    Ok(Decomposition { deco, tree })
}

/// A minor `N / contract \ delete` that becomes the subtree torso after renaming
/// the kept far-side elements to the virtual elements in `relabel`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    pub contract: Set,
    pub delete: Set,
    pub relabel: BTreeMap<String, String>,
}

/// For each boundary edge with far side `F`: contract a base `s` of `N` contracted
/// onto `F`, keep one element `e` with `s + e` a base of `N | F`, delete the rest of
/// `F`, and rename `e` to the virtual element. Every choice of `e` is tried if needed.
pub fn realistic_minor_witness(n: &FiniteMatroid, deco: &TreeDecomposition, s: &BTreeSet<usize>) -> Result<MinorWitness> {
    deco.check_subtree(s)?;
    let target = subtree_torso(n, deco, s)?;
    let bd = deco.boundary(s);
    let all = n.all();
    let mut per_edge: Vec<(Set, Vec<usize>, Set, String)> = Vec::new();
    for (t, x, e) in &bd {
        let far = deco.far_side(*t, *x);
        // N contracted onto F is N / (E \ F).
        let onto = n.minor_circuits(all & !far, 0)?;
        let indep_onto = |z: Set| onto.iter().all(|c| !set::is_subset(*c, z));
        let mut base = 0;
        for i in set::elems(far) {
            if indep_onto(base | set::bit(i)) {
                base |= set::bit(i);
            }
        }
        let rank_f = n.rank(far);
        let keep: Vec<usize> = set::elems(far & !base)
            .filter(|i| set::size(base) + 1 == rank_f && n.is_independent(base | set::bit(*i)))
            .collect();
        if keep.is_empty() {
            return Err(DecompError::NoWitness);
        }
        per_edge.push((base, keep, far, deco.edge_label(*e)));
    }
    let mut choice = vec![0usize; per_edge.len()];
    loop {
        let mut contract = 0;
        let mut delete = 0;
        let mut relabel = BTreeMap::new();
        for (k, (base, keep, far, label)) in per_edge.iter().enumerate() {
            let e = keep[choice[k]];
            contract |= base;
            delete |= far & !base & !set::bit(e);
            relabel.insert(n.ground().label(e).to_string(), label.clone());
        }
        let minor = n.minor(contract, delete)?.relabel(&relabel)?;
        if minor == target {
            return Ok(MinorWitness {
                contract,
                delete,
                relabel,
            });
        }
        // Advance the mixed-radix counter over the choices of kept elements.
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Err(DecompError::NoWitness);
            }
            choice[k] += 1;
            if choice[k] < per_edge[k].1.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::glue_tree;
    use tdm_core::fixtures;

    #[test]
    fn k4_is_one_node() {
        let d = canonical_decomposition(&fixtures::k4()).unwrap();
        assert_eq!(d.tree.len(), 1);
    }

    #[test]
    fn glued_k4s_give_two_nodes() {
        let m = fixtures::k4_two_sum_k4();
        let d = canonical_decomposition(&m).unwrap();
        assert_eq!(d.tree.len(), 2);
        assert_eq!(d.tree.edge_labels, vec!["t0!t1".to_string()]);
        assert_eq!(glue_tree(&d.tree).unwrap(), m);
        assert!(d.shapes().unwrap().iter().all(|s| *s == Shape::ThreeConnected));
    }

    #[test]
    fn six_cycle_is_one_circuit_node() {
        let d = canonical_decomposition(&fixtures::cycle(6)).unwrap();
        assert_eq!(d.tree.len(), 1);
        assert_eq!(d.shapes().unwrap(), vec![Shape::Circuit]);
    }

    #[test]
    fn torsos_agree_with_splitting() {
        let m = fixtures::k4_two_sum_k4();
        let d = canonical_decomposition(&m).unwrap();
        assert_eq!(torso_tree(&m, &d.deco).unwrap(), d.tree);
    }
}
