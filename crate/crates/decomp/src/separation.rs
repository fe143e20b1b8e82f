//! Connectivity, 2-separations, splitting along them and 2-sums.

use tdm_core::set::{self, Set};
use tdm_core::{FiniteMatroid, GroundSet, KernelError, DEFAULT_CAP};

use crate::error::{DecompError, Result};

/// A partition of the ground set with its connectivity order
/// `r(A) + r(B) - r(E)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Separation {
    pub side_a: Set,
    pub side_b: Set,
    pub order: usize,
}

pub fn connectivity_order(m: &FiniteMatroid, a: Set) -> usize {
    let a = a & m.all();
    let b = m.all() & !a;
    m.rank(a) + m.rank(b) - m.full_rank()
}

/// Connected components: classes of the relation "lie in a common circuit",
/// in increasing order of their least element.
pub fn components(m: &FiniteMatroid) -> Vec<Set> {
    let mut comps: Vec<Set> = Vec::new();
    for i in 0..m.len() {
        comps.push(set::bit(i));
    }
    for c in m.circuits() {
        let (hit, rest): (Vec<Set>, Vec<Set>) = comps.into_iter().partition(|x| x & c != 0);
        comps = rest;
        comps.push(hit.into_iter().fold(0, |a, b| a | b));
    }
    comps.sort_by_key(|s| s.trailing_zeros());
    comps
}

pub fn is_connected(m: &FiniteMatroid) -> bool {
    components(m).len() <= 1
}

/// All partitions with both sides of size at least 2 and order at most 1,
/// one per unordered pair (side A holds the least element), in lexicographic order of A.
pub fn find_2_separations(m: &FiniteMatroid) -> Result<Vec<Separation>> {
    find_2_separations_with_cap(m, DEFAULT_CAP)
}

pub fn find_2_separations_with_cap(m: &FiniteMatroid, cap: usize) -> Result<Vec<Separation>> {
    m.check_cap(cap)?;
    if !is_connected(m) {
        return Err(DecompError::NotConnected);
    }
    Ok(separations_of(m))
}

/// Separations of order at most 1 without the cap and connectivity checks.
pub fn separations_of(m: &FiniteMatroid) -> Vec<Separation> {
    let n = m.len();
    if n < 4 {
        return Vec::new();
    }
    let all = m.all();
    let rest = all & !1;
    let r = m.full_rank();
    let mut out = Vec::new();
    for extra in set::subsets(rest) {
        let a = extra | 1;
        let b = all & !a;
        if set::size(a) < 2 || set::size(b) < 2 {
            continue;
        }
        let order = m.rank(a) + m.rank(b) - r;
        if order <= 1 {
            out.push(Separation {
                side_a: a,
                side_b: b,
                order,
            });
        }
    }
    out.sort_by(|x, y| set::lex_cmp(x.side_a, y.side_a));
    out
}

/// Connected with no exact 2-separation.
pub fn is_three_connected(m: &FiniteMatroid) -> Result<bool> {
    m.check_cap(DEFAULT_CAP)?;
    Ok(is_connected(m) && separations_of(m).is_empty())
}

/// The 2-sum of `m1` and `m2` along their single common element `p`.
pub fn two_sum(m1: &FiniteMatroid, m2: &FiniteMatroid, p: &str) -> Result<FiniteMatroid> {
    let common: Vec<&String> = m1
        .ground()
        .labels()
        .iter()
        .filter(|l| m2.ground().contains(l))
        .collect();
    if common.len() != 1 || common[0] != p {
        return Err(DecompError::BadOverlap(p.to_string()));
    }
    let p1 = m1.ground().index_of(p)?;
    let p2 = m2.ground().index_of(p)?;
    if m1.is_loop(p1) || m1.is_coloop(p1) || m2.is_loop(p2) || m2.is_coloop(p2) {
        return Err(DecompError::Degenerate(p.to_string()));
    }
    let labels: Vec<String> = m1
        .ground()
        .labels()
        .iter()
        .chain(m2.ground().labels())
        .filter(|l| *l != p)
        .cloned()
        .collect();
    let ground = GroundSet::new(labels)?;
    let map1: Vec<usize> = m1
        .ground()
        .labels()
        .iter()
        .map(|l| ground.index(l).unwrap_or(usize::MAX))
        .collect();
    let map2: Vec<usize> = m2
        .ground()
        .labels()
        .iter()
        .map(|l| ground.index(l).unwrap_or(usize::MAX))
        .collect();
    let carry = |c: Set, map: &[usize]| -> Set {
        set::elems(c)
            .filter(|i| map[*i] != usize::MAX)
            .fold(0, |acc, i| acc | set::bit(map[i]))
    };
    let mut circuits = Vec::new();
    let (through1, avoid1): (Vec<Set>, Vec<Set>) =
        m1.circuits().iter().partition(|c| set::contains(**c, p1));
    let (through2, avoid2): (Vec<Set>, Vec<Set>) =
        m2.circuits().iter().partition(|c| set::contains(**c, p2));
    circuits.extend(avoid1.iter().map(|c| carry(*c, &map1)));
    circuits.extend(avoid2.iter().map(|c| carry(*c, &map2)));
    for a in &through1 {
        let ca = carry(*a, &map1);
        for b in &through2 {
            circuits.push(ca | carry(*b, &map2));
        }
    }
    Ok(FiniteMatroid::new(ground, circuits)?)
}

/// Splits a connected matroid along an exact 2-separation into matroids on
/// `A + e` and `B + e`, where `e` is the caller-provided fresh label.
pub fn split_at(m: &FiniteMatroid, sep: &Separation, fresh: &str) -> Result<(FiniteMatroid, FiniteMatroid)> {
    let all = m.all();
    if sep.side_a & sep.side_b != 0 || sep.side_a | sep.side_b != all {
        return Err(DecompError::NotExactSeparation("sides do not partition the ground set".into()));
    }
    if set::size(sep.side_a) < 2 || set::size(sep.side_b) < 2 {
        return Err(DecompError::NotExactSeparation("a side has fewer than two elements".into()));
    }
    if connectivity_order(m, sep.side_a) != 1 {
        return Err(DecompError::NotExactSeparation("order is not 1".into()));
    }
    if !is_connected(m) {
        return Err(DecompError::NotConnected);
    }
    if m.ground().contains(fresh) {
        return Err(DecompError::Kernel(KernelError::DuplicateLabel(fresh.to_string())));
    }
    let na = side_matroid(m, sep.side_a, sep.side_b, fresh)?;
    let nb = side_matroid(m, sep.side_b, sep.side_a, fresh)?;
    let back = two_sum(&na, &nb, fresh)?;
    if &back != m {
        return Err(DecompError::Internal("split does not glue back to the input".into()));
    }
    Ok((na, nb))
}

// Circuits inside `side`, and `(o ∩ side) + e` for circuits meeting both sides.
fn side_matroid(m: &FiniteMatroid, side: Set, other: Set, fresh: &str) -> Result<FiniteMatroid> {
    let mut labels: Vec<String> = m.ground().names(side).into_iter().map(String::from).collect();
    labels.push(fresh.to_string());
    let ground = GroundSet::new(labels)?;
    let e = ground.index_of(fresh)?;
    let mut fam = Vec::new();
    for c in m.circuits() {
        if set::is_subset(*c, other) {
            continue;
        }
        let mut local = m.transfer(c & side, &ground)?;
        if c & other != 0 {
            local |= set::bit(e);
        }
        fam.push(local);
    }
    Ok(FiniteMatroid::new(ground, set::minimal_members(&fam))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Circuit,
    Cocircuit,
    ThreeConnected,
    Other,
}

/// Classifies a connected matroid as a circuit, a cocircuit, 3-connected or none of these.
pub fn shape(m: &FiniteMatroid) -> Result<Shape> {
    let all = m.all();
    if m.circuits() == [all] {
        return Ok(Shape::Circuit);
    }
    // The whole ground set is a cocircuit exactly when M is U(1, n) without loops.
    if m.len() >= 2 && m.full_rank() == 1 && (0..m.len()).all(|e| !m.is_loop(e)) {
        return Ok(Shape::Cocircuit);
    }
    if is_connected(m) && separations_of(m).is_empty() {
        Ok(Shape::ThreeConnected)
    } else {
        Ok(Shape::Other)
    }
}
