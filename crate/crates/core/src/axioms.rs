//! Exhaustive checkers for the circuit axioms and the orthogonality axioms (O1), (O2).

use std::collections::HashSet;
use std::fmt;

use crate::error::{KernelError, Result};
use crate::matroid::{FiniteMatroid, GroundSet, DEFAULT_CAP};
use crate::set::{self, Set};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    C1,
    C2,
    C3,
    CM,
    DualC1,
    DualC2,
    O1,
    O2,
    Hybrid,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::C1 => "C1",
            Axiom::C2 => "C2",
            Axiom::C3 => "C3",
            Axiom::CM => "CM",
            Axiom::DualC1 => "C1*",
            Axiom::DualC2 => "C2*",
            Axiom::O1 => "O1",
            Axiom::O2 => "O2",
            Axiom::Hybrid => "hybrid",
        };
        f.write_str(s)
    }
}

/// The sets involved in a failed axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub sets: Vec<Set>,
    pub element: Option<usize>,
    pub note: String,
}

impl Witness {
    pub fn render(&self, ground: &GroundSet) -> String {
        let mut parts: Vec<String> = self.sets.iter().map(|s| ground.show(*s)).collect();
        if let Some(e) = self.element {
            parts.push(format!("element {}", ground.label(e)));
        }
        if parts.is_empty() {
            self.note.clone()
        } else {
            format!("{} {}", self.note, parts.join(" "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Per-axiom verdicts in a fixed order, plus free-form notes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub verdicts: Vec<(Axiom, Verdict)>,
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub fn set(&mut self, axiom: Axiom, verdict: Verdict) {
        if let Some(slot) = self.verdicts.iter_mut().find(|(a, _)| *a == axiom) {
            slot.1 = verdict;
        } else {
            self.verdicts.push((axiom, verdict));
        }
    }

    pub fn get(&self, axiom: Axiom) -> Option<&Verdict> {
        self.verdicts.iter().find(|(a, _)| *a == axiom).map(|(_, v)| v)
    }

    pub fn passed(&self, axiom: Axiom) -> bool {
        self.get(axiom).is_some_and(Verdict::passed)
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| v.passed())
    }

    /// One `axiom: pass` or `axiom: fail <witness>` line per verdict, then `note:` lines.
    pub fn render(&self, ground: &GroundSet) -> String {
        let mut out = String::new();
        for (a, v) in &self.verdicts {
            match v {
                Verdict::Pass => out.push_str(&format!("{a}: pass\n")),
                Verdict::Fail(w) => out.push_str(&format!("{a}: fail {}\n", w.render(ground))),
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

const CM_NOTE: &str = "CM holds on every finite ground set: maximal independent sets always exist";

fn check_members(ground: &GroundSet, family: &[Set]) -> Result<()> {
    let all = ground.all();
    for s in family {
        if !set::is_subset(*s, all) {
            let stray = set::elems(*s & !all).next().unwrap_or(0);
            return Err(KernelError::UnknownLabel(format!("#{stray}")));
        }
    }
    Ok(())
}

fn check_c1(family: &[Set]) -> Verdict {
    if family.contains(&0) {
        Verdict::Fail(Witness {
            sets: vec![0],
            element: None,
            note: "empty set listed".into(),
        })
    } else {
        Verdict::Pass
    }
}

fn check_c2(family: &[Set]) -> Verdict {
    let mut fam = family.to_vec();
    fam.sort_by(|a, b| set::lex_cmp(*a, *b));
    for (i, a) in fam.iter().enumerate() {
        for (j, b) in fam.iter().enumerate() {
            if i != j && set::is_subset(*a, *b) && (a != b || i < j) {
                return Verdict::Fail(Witness {
                    sets: vec![*a, *b],
                    element: None,
                    note: "contained in".into(),
                });
            }
        }
    }
    Verdict::Pass
}

/// Exhaustive (C3) check. Returns the failing `(o, X, family, z)` if any.
pub fn c3_failure(family: &[Set]) -> Option<(Set, Set, Vec<Set>, usize)> {
    let mut circuits = family.to_vec();
    set::sort_family(&mut circuits);
    for &o in &circuits {
        for x_set in set::subsets(o) {
            if x_set == 0 {
                continue;
            }
            for z in set::elems(o & !x_set) {
                if let Some(fam) = c3_instance_failure(&circuits, o, x_set, z) {
                    return Some((o, x_set, fam, z));
                }
            }
        }
    }
    None
}

// Searches the families (o_x) for one that admits no circuit through `z` in
// (o ∪ ⋃o_x) \ X. Only the part of each o_x outside `o` matters, and the
// required circuit exists for a union as soon as it exists for any subset of it,
// so candidates are reduced to inclusion-minimal contributions.
fn c3_instance_failure(circuits: &[Set], o: Set, x_set: Set, z: usize) -> Option<Vec<Set>> {
    let xs: Vec<usize> = set::elems(x_set).collect();
    let guard = x_set | set::bit(z);
    let mut options: Vec<Vec<(Set, Set)>> = Vec::with_capacity(xs.len());
    for &x in &xs {
        let cands: Vec<Set> = circuits
            .iter()
            .copied()
            .filter(|c| c & guard == set::bit(x))
            .collect();
        if cands.is_empty() {
            return None;
        }
        let contribs: Vec<Set> = cands.iter().map(|c| c & !o).collect();
        let minimal = set::minimal_members(&contribs);
        let opts = minimal
            .into_iter()
            .map(|m| {
                let rep = *cands.iter().find(|c| *c & !o == m).expect("contribution has a source");
                (m, rep)
            })
            .collect();
        options.push(opts);
    }
    let has_circuit = |allowed: Set| {
        circuits
            .iter()
            .any(|c| set::contains(*c, z) && set::is_subset(*c, allowed))
    };
    let mut memo: HashSet<(usize, Set)> = HashSet::new();
    let mut chosen: Vec<Set> = Vec::with_capacity(xs.len());
    fn dfs(
        j: usize,
        union: Set,
        o: Set,
        x_set: Set,
        options: &[Vec<(Set, Set)>],
        has_circuit: &dyn Fn(Set) -> bool,
        memo: &mut HashSet<(usize, Set)>,
        chosen: &mut Vec<Set>,
    ) -> bool {
        if has_circuit((o | union) & !x_set) {
            return true;
        }
        if j == options.len() {
            return false;
        }
        if memo.contains(&(j, union)) {
            return true;
        }
        for (contrib, rep) in &options[j] {
            chosen.push(*rep);
            if !dfs(j + 1, union | contrib, o, x_set, options, has_circuit, memo, chosen) {
                return false;
            }
            chosen.pop();
        }
        memo.insert((j, union));
        true
    }
    if dfs(0, 0, o, x_set, &options, &has_circuit, &mut memo, &mut chosen) {
        None
    } else {
        Some(chosen)
    }
}

/// Checks (C1), (C2) and (C3) exhaustively; (CM) is recorded as holding.
pub fn validate_circuits(ground: &GroundSet, circuits: &[Set]) -> Result<AxiomReport> {
    validate_circuits_with_cap(ground, circuits, DEFAULT_CAP)
}

pub fn validate_circuits_with_cap(ground: &GroundSet, circuits: &[Set], cap: usize) -> Result<AxiomReport> {
    check_members(ground, circuits)?;
    if ground.len() > cap {
        return Err(KernelError::CapExceeded {
            size: ground.len(),
            cap,
        });
    }
    let mut r = AxiomReport::default();
    r.set(Axiom::C1, check_c1(circuits));
    r.set(Axiom::C2, check_c2(circuits));
    let c3 = match c3_failure(circuits) {
        None => Verdict::Pass,
        Some((o, x, fam, z)) => {
            let mut sets = vec![o, x];
            sets.extend(fam);
            Verdict::Fail(Witness {
                sets,
                element: Some(z),
                note: "circuit, eliminated set, family, kept".into(),
            })
        }
    };
    r.set(Axiom::C3, c3);
    r.set(Axiom::CM, Verdict::Pass);
    r.notes.push(CM_NOTE.into());
    Ok(r)
}

/// Subsets of `all` meeting no member of `family` in exactly one element.
pub fn in_perp(family: &[Set], s: Set) -> bool {
    family.iter().all(|c| set::size(c & s) != 1)
}

/// Minimal nonempty members of the orthogonal family `C⊥`.
pub fn perp_minimal(ground: &GroundSet, family: &[Set]) -> Result<Vec<Set>> {
    check_members(ground, family)?;
    if ground.len() > DEFAULT_CAP {
        return Err(KernelError::CapExceeded {
            size: ground.len(),
            cap: DEFAULT_CAP,
        });
    }
    let mut found: Vec<Set> = Vec::new();
    let mut all: Vec<Set> = set::subsets(ground.all()).filter(|s| *s != 0).collect();
    all.sort_by_key(|s| set::size(*s));
    for s in all {
        if found.iter().any(|f| set::is_subset(*f, s)) {
            continue;
        }
        if in_perp(family, s) {
            found.push(s);
        }
    }
    set::sort_family(&mut found);
    Ok(found)
}

/// (O1): the first pair `(c, d)` with `|c ∩ d| = 1`, if any.
pub fn o1_failure(c: &[Set], d: &[Set]) -> Option<(Set, Set)> {
    for a in c {
        for b in d {
            if set::size(a & b) == 1 {
                return Some((*a, *b));
            }
        }
    }
    None
}

/// (O2) with the second family given by a predicate `covered(Q, e)`, which must
/// report whether some member `y` has `e ∈ y ⊆ Q + e`. Returns the first
/// uncovered partition as `(P, Q, e)`.
pub fn o2_failure_with<F: Fn(Set, usize) -> bool>(n: usize, c: &[Set], covered: F) -> Option<(Set, Set, usize)> {
    let all = set::full(n);
    for e in 0..n {
        let rest = all & !set::bit(e);
        for p in set::subsets(rest) {
            let q = rest & !p;
            let pe = p | set::bit(e);
            if c.iter().any(|x| set::contains(*x, e) && set::is_subset(*x, pe)) {
                continue;
            }
            if !covered(q, e) {
                return Some((p, q, e));
            }
        }
    }
    None
}

/// (O2) for two explicit families.
pub fn o2_failure(n: usize, c: &[Set], d: &[Set]) -> Option<(Set, Set, usize)> {
    o2_failure_with(n, c, |q, e| {
        let qe = q | set::bit(e);
        d.iter().any(|y| set::contains(*y, e) && set::is_subset(*y, qe))
    })
}

/// (O1) and (O2) for the families `c` and `d`.
pub fn check_o1_o2(ground: &GroundSet, c: &[Set], d: &[Set]) -> Result<AxiomReport> {
    check_members(ground, c)?;
    check_members(ground, d)?;
    if ground.len() > DEFAULT_CAP {
        return Err(KernelError::CapExceeded {
            size: ground.len(),
            cap: DEFAULT_CAP,
        });
    }
    let mut r = AxiomReport::default();
    r.set(
        Axiom::O1,
        match o1_failure(c, d) {
            None => Verdict::Pass,
            Some((a, b)) => Verdict::Fail(Witness {
                sets: vec![a, b],
                element: None,
                note: "meet in one element:".into(),
            }),
        },
    );
    r.set(Axiom::O2, o2_verdict(ground.len(), c, d));
    Ok(r)
}

fn o2_verdict(n: usize, c: &[Set], d: &[Set]) -> Verdict {
    match o2_failure(n, c, d) {
        None => Verdict::Pass,
        Some((p, q, e)) => Verdict::Fail(Witness {
            sets: vec![p, q],
            element: Some(e),
            note: "uncovered partition P Q".into(),
        }),
    }
}

/// Compares the two sides of the biconditional: (O2) for `C` and `C⊥` against (C3) for `C`.
/// Returns `(o2_side, c3_side)`.
pub fn cireli_sides(n: usize, family: &[Set]) -> (bool, bool) {
    // C⊥ is not closed upwards, so every subset of Q is tried.
    let o2 = o2_failure_with(n, family, |q, e| {
        set::subsets(q).any(|d| in_perp(family, d | set::bit(e)))
    })
    .is_none();
    let c3 = c3_failure(family).is_none();
    (o2, c3)
}

/// True when the biconditional holds for this family.
pub fn check_cireli_equivalence(ground: &GroundSet, family: &[Set]) -> Result<bool> {
    check_members(ground, family)?;
    if ground.len() > DEFAULT_CAP {
        return Err(KernelError::CapExceeded {
            size: ground.len(),
            cap: DEFAULT_CAP,
        });
    }
    let (a, b) = cireli_sides(ground.len(), family);
    Ok(a == b)
}

/// Checks whether `c` and `d` are the circuits and cocircuits of one matroid via
/// (C1), (C2) on both families, (O1), (O2) and (CM); when these pass, the matroid with
/// circuits `c` is rebuilt and its cocircuits are compared with `d`.
pub fn hybrid_check(ground: &GroundSet, c: &[Set], d: &[Set]) -> Result<AxiomReport> {
    let mut r = check_o1_o2(ground, c, d)?;
    let mut out = AxiomReport::default();
    out.set(Axiom::C1, check_c1(c));
    out.set(Axiom::C2, check_c2(c));
    out.set(Axiom::DualC1, check_c1(d));
    out.set(Axiom::DualC2, check_c2(d));
    for (a, v) in r.verdicts.drain(..) {
        out.set(a, v);
    }
    out.set(Axiom::CM, Verdict::Pass);
    out.notes.push(CM_NOTE.into());
    if !out.all_pass() {
        let first = out
            .verdicts
            .iter()
            .find(|(_, v)| !v.passed())
            .map(|(a, _)| a.to_string())
            .unwrap_or_default();
        out.set(
            Axiom::Hybrid,
            Verdict::Fail(Witness {
                sets: Vec::new(),
                element: None,
                note: format!("condition {first} fails"),
            }),
        );
        return Ok(out);
    }
    let m = FiniteMatroid::new(ground.clone(), c.to_vec())?;
    if let Some((a, b, e)) = m.elimination_failure() {
        return Err(KernelError::Internal(format!(
            "families pass the hybrid conditions but circuit elimination fails at {} {} {}",
            ground.show(a),
            ground.show(b),
            ground.label(e)
        )));
    }
    let mut dd = d.to_vec();
    set::sort_family(&mut dd);
    let co = m.dual()?;
    if co.circuits() == dd.as_slice() {
        out.set(Axiom::Hybrid, Verdict::Pass);
        out.notes.push("reconstructed cocircuits equal the given family".into());
    } else {
        let diff = co
            .circuits()
            .iter()
            .find(|x| !dd.contains(x))
            .or_else(|| dd.iter().find(|x| !co.circuits().contains(x)))
            .copied()
            .unwrap_or(0);
        out.set(
            Axiom::Hybrid,
            Verdict::Fail(Witness {
                sets: vec![diff],
                element: None,
                note: "reconstruction differs at".into(),
            }),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn g(labels: &[&str]) -> GroundSet {
        GroundSet::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn triangle_passes() {
        let gr = g(&["a", "b", "c"]);
        let c = vec![0b011, 0b101, 0b110];
        let r = validate_circuits(&gr, &c).unwrap();
        assert!(r.all_pass(), "{}", r.render(&gr));
    }

    #[test]
    fn containment_fails_c2() {
        let gr = g(&["a", "b"]);
        let r = validate_circuits(&gr, &[0b01, 0b11]).unwrap();
        match r.get(Axiom::C2) {
            Some(Verdict::Fail(w)) => assert_eq!(w.sets, vec![0b01, 0b11]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_circuit_fails_c1() {
        let gr = g(&["a"]);
        let r = validate_circuits(&gr, &[0]).unwrap();
        assert!(!r.passed(Axiom::C1));
    }

    #[test]
    fn two_overlapping_pairs_fail_c3() {
        // {a,b}, {b,c}: eliminating b keeping a needs a circuit inside {a,c}.
        let gr = g(&["a", "b", "c"]);
        let r = validate_circuits(&gr, &[0b011, 0b110]).unwrap();
        assert!(!r.passed(Axiom::C3));
    }

    #[test]
    fn perp_of_small_families() {
        let gr = g(&["a", "b", "c"]);
        assert_eq!(perp_minimal(&gr, &[]).unwrap(), vec![0b001, 0b010, 0b100]);
        let u13 = fixtures::u13();
        assert_eq!(perp_minimal(&gr, u13.circuits()).unwrap(), vec![0b111]);
    }

    #[test]
    fn o1_o2_examples() {
        let gr = g(&["a", "b", "c"]);
        let m = fixtures::u13();
        let r = check_o1_o2(&gr, m.circuits(), &m.cocircuits().unwrap()).unwrap();
        assert!(r.all_pass());
        let r = check_o1_o2(&gr, &[0b011], &[0b110]).unwrap();
        assert!(!r.passed(Axiom::O1));
        let one = g(&["a"]);
        let r = check_o1_o2(&one, &[], &[]).unwrap();
        match r.get(Axiom::O2) {
            Some(Verdict::Fail(w)) => {
                assert_eq!(w.sets, vec![0, 0]);
                assert_eq!(w.element, Some(0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hybrid_examples() {
        let m = fixtures::k4();
        let r = hybrid_check(m.ground(), m.circuits(), &m.cocircuits().unwrap()).unwrap();
        assert!(r.passed(Axiom::Hybrid), "{}", r.render(m.ground()));
        let u = fixtures::u13();
        let r = hybrid_check(u.ground(), u.circuits(), &[0b011]).unwrap();
        assert!(!r.passed(Axiom::Hybrid));
        let two = g(&["a", "b"]);
        let r = hybrid_check(&two, &[], &[0b01, 0b10]).unwrap();
        assert!(r.passed(Axiom::Hybrid));
    }

    #[test]
    fn cireli_examples() {
        let u = fixtures::u13();
        assert_eq!(cireli_sides(3, u.circuits()), (true, true));
        let (a, b) = cireli_sides(3, &[0b011, 0b110]);
        assert_eq!(a, b);
        assert!(!b);
    }
}
