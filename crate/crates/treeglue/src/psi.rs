//! Precircuits of finite trees of matroids with open boundary directions,
//! their underlying sets, Ψ-circuits and phantom precircuits.

use std::collections::{BTreeMap, BTreeSet};

use tdm_core::set::{self, Set};
use tdm_core::GroundSet;
use tdm_decomp::{MatroidTree, Precircuit};

use crate::error::{GlueError, Result};

/// Default bound on the number of precircuits an enumeration may produce.
pub const PRECIRCUIT_LIMIT: usize = 1 << 20;

/// Boundary intent for a finite tree cut out of a larger one.
///
/// Each open label is an element of exactly one node that stands for the edge
/// leaving the finite tree towards an end. It is virtual: never part of an
/// underlying set. A local circuit may use it only when the flag is `true`
/// (the end is permitted). A finite tree with no open labels has the empty spec.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PsiSpec {
    pub open: BTreeMap<String, bool>,
}

impl PsiSpec {
    pub fn closed() -> Self {
        PsiSpec::default()
    }

    pub fn with(label: impl Into<String>, permitted: bool) -> Self {
        PsiSpec {
            open: BTreeMap::from([(label.into(), permitted)]),
        }
    }

    /// The complementary spec, used with the dual tree.
    pub fn complement(&self) -> Self {
        PsiSpec {
            open: self.open.iter().map(|(l, p)| (l.clone(), !p)).collect(),
        }
    }

    pub fn is_open(&self, label: &str) -> bool {
        self.open.contains_key(label)
    }

    /// Checks that every open label lies in exactly one node and is not an edge element.
    pub fn validate(&self, t: &MatroidTree) -> Result<()> {
        for l in self.open.keys() {
            if t.is_virtual(l) {
                return Err(GlueError::InvalidPsi(format!("`{l}` is an edge element")));
            }
            let owners = t.matroids.iter().filter(|m| m.ground().contains(l)).count();
            if owners != 1 {
                return Err(GlueError::InvalidPsi(format!("`{l}` lies in {owners} nodes")));
            }
        }
        Ok(())
    }
}

/// Elements of the tree that can occur in underlying sets: every label that is
/// neither an edge element nor open.
pub fn real_ground(t: &MatroidTree, psi: &PsiSpec) -> Result<GroundSet> {
    let labels: Vec<String> = t.ground_labels().into_iter().filter(|l| !psi.is_open(l)).collect();
    Ok(GroundSet::new(labels)?)
}

/// Per-node masks of the real elements.
fn real_masks(t: &MatroidTree, psi: &PsiSpec) -> Vec<Set> {
    t.matroids
        .iter()
        .map(|m| {
            set::elems(m.all())
                .filter(|i| {
                    let l = m.ground().label(*i);
                    !t.is_virtual(l) && !psi.is_open(l)
                })
                .fold(0, |acc, i| acc | set::bit(i))
        })
        .collect()
}

/// Per-node masks of the open labels whose end is forbidden.
fn forbidden_masks(t: &MatroidTree, psi: &PsiSpec) -> Vec<Set> {
    t.matroids
        .iter()
        .map(|m| {
            psi.open
                .iter()
                .filter(|(_, permitted)| !**permitted)
                .filter_map(|(l, _)| m.ground().index(l))
                .fold(0, |acc, i| acc | set::bit(i))
        })
        .collect()
}

/// Checks a precircuit against the tree and the boundary spec.
pub fn check_precircuit(t: &MatroidTree, psi: &PsiSpec, p: &Precircuit) -> Result<()> {
    t.check_precircuit(p)
        .map_err(|e| GlueError::InvalidPrecircuit(e.to_string()))?;
    let forbidden = forbidden_masks(t, psi);
    for (v, c) in p.nodes.iter().zip(&p.choice) {
        if c & forbidden[*v] != 0 {
            return Err(GlueError::InvalidPrecircuit(format!(
                "node {} uses an open element whose end is forbidden",
                t.nodes[*v]
            )));
        }
    }
    Ok(())
}

/// Every precircuit of the tree under the boundary spec, each once, ordered by
/// least support node and then by local choices.
pub fn enumerate_precircuits(t: &MatroidTree, psi: &PsiSpec) -> Result<Vec<Precircuit>> {
    enumerate_precircuits_with_limit(t, psi, PRECIRCUIT_LIMIT)
}

pub fn enumerate_precircuits_with_limit(t: &MatroidTree, psi: &PsiSpec, limit: usize) -> Result<Vec<Precircuit>> {
    t.validate()?;
    psi.validate(t)?;
    let forbidden = forbidden_masks(t, psi);
    // Local index of each incident edge element, per node.
    let edge_bits: Vec<Vec<(usize, Set)>> = (0..t.len())
        .map(|v| {
            t.neighbours(v)
                .into_iter()
                .map(|(u, e)| {
                    let idx = t.matroids[v].ground().index(&t.edge_labels[e]).expect("validated tree");
                    (u, set::bit(idx))
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for root in 0..t.len() {
        for &c in t.matroids[root].circuits() {
            let mut assigned = vec![(root, c)];
            let mut pending = Vec::new();
            if !admissible(root, usize::MAX, root, c, &edge_bits, &forbidden, &mut pending) {
                continue;
            }
            extend(root, &mut assigned, &mut pending, t, &edge_bits, &forbidden, &mut out, limit)?;
        }
    }
    Ok(out)
}

/// Whether circuit `c` at `v` (entered from `from`) respects the root bound and
/// the boundary spec; pushes the neighbours it continues into.
fn admissible(
    root: usize,
    from: usize,
    v: usize,
    c: Set,
    edge_bits: &[Vec<(usize, Set)>],
    forbidden: &[Set],
    pending: &mut Vec<(usize, usize)>,
) -> bool {
    if c & forbidden[v] != 0 {
        return false;
    }
    for &(u, bit) in &edge_bits[v] {
        let uses = c & bit != 0;
        if u == from {
            if !uses {
                return false;
            }
        } else if uses {
            if u < root {
                return false;
            }
            pending.push((u, v));
        }
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn extend(
    root: usize,
    assigned: &mut Vec<(usize, Set)>,
    pending: &mut Vec<(usize, usize)>,
    t: &MatroidTree,
    edge_bits: &[Vec<(usize, Set)>],
    forbidden: &[Set],
    out: &mut Vec<Precircuit>,
    limit: usize,
) -> Result<()> {
    let Some((v, from)) = pending.pop() else {
        let mut pairs = assigned.clone();
        pairs.sort();
        out.push(Precircuit {
            nodes: pairs.iter().map(|(v, _)| *v).collect(),
            choice: pairs.iter().map(|(_, c)| *c).collect(),
        });
        if out.len() > limit {
            return Err(GlueError::TooManyPrecircuits { count: out.len(), limit });
        }
        return Ok(());
    };
    for &c in t.matroids[v].circuits() {
        let mark = pending.len();
        if admissible(root, from, v, c, edge_bits, forbidden, pending) {
            assigned.push((v, c));
            extend(root, assigned, pending, t, edge_bits, forbidden, out, limit)?;
            assigned.pop();
        }
        pending.truncate(mark);
    }
    pending.push((v, from));
    Ok(())
}

/// Underlying set of a precircuit as a mask over [`real_ground`].
pub fn underlying(t: &MatroidTree, psi: &PsiSpec, ground: &GroundSet, p: &Precircuit) -> Result<Set> {
    let real = real_masks(t, psi);
    let mut out = 0;
    for (v, c) in p.nodes.iter().zip(&p.choice) {
        out |= t.matroids[*v].transfer(c & real[*v], ground)?;
    }
    Ok(out)
}

/// Underlying sets of all precircuits and the Ψ-circuits among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiCircuits {
    pub ground: GroundSet,
    /// Distinct underlying sets in canonical order; may include the empty set.
    pub underlying: Vec<Set>,
    /// Minimal nonempty underlying sets.
    pub circuits: Vec<Set>,
}

/// Enumerates all precircuits and returns their underlying sets with the
/// minimal nonempty ones marked as Ψ-circuits.
pub fn enumerate_psi_circuits(t: &MatroidTree, psi: &PsiSpec) -> Result<PsiCircuits> {
    let ground = real_ground(t, psi)?;
    let mut seen = BTreeSet::new();
    for p in enumerate_precircuits(t, psi)? {
        seen.insert(underlying(t, psi, &ground, &p)?);
    }
    let mut underlying: Vec<Set> = seen.into_iter().collect();
    set::sort_family(&mut underlying);
    let nonempty: Vec<Set> = underlying.iter().copied().filter(|s| *s != 0).collect();
    let mut circuits = set::minimal_members(&nonempty);
    set::sort_family(&mut circuits);
    Ok(PsiCircuits {
        ground,
        underlying,
        circuits,
    })
}

/// A precircuit is phantom when some edge `tt'` of its support has every local
/// circuit on the `t'` side free of real elements.
pub fn is_phantom(t: &MatroidTree, psi: &PsiSpec, p: &Precircuit) -> Result<bool> {
    Ok(phantom_edge(t, psi, p)?.is_some())
}

/// The first directed support edge `(t, t')` witnessing phantomness.
pub fn phantom_edge(t: &MatroidTree, psi: &PsiSpec, p: &Precircuit) -> Result<Option<(usize, usize)>> {
    check_precircuit(t, psi, p)?;
    let real = real_masks(t, psi);
    let local: BTreeMap<usize, Set> = p.nodes.iter().copied().zip(p.choice.iter().copied()).collect();
    for (a, b) in &t.edges {
        if !local.contains_key(a) || !local.contains_key(b) {
            continue;
        }
        for (from, to) in [(*a, *b), (*b, *a)] {
            let far = t.side(from, to);
            if far
                .iter()
                .filter_map(|v| local.get(v).map(|c| (v, c)))
                .all(|(v, c)| c & real[*v] == 0)
            {
                return Ok(Some((from, to)));
            }
        }
    }
    Ok(None)
}
