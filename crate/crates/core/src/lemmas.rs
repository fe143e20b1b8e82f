//! Circuit manipulations: fundamental circuits, lifting from minors, elimination
//! and the constructions behind strong elimination and scrawls.
//!
//! Where several witnesses exist the lexicographically least one is returned.

use crate::error::{KernelError, Result};
use crate::matroid::FiniteMatroid;
use crate::set::{self, Set};

fn lex_least(cands: impl Iterator<Item = Set>) -> Option<Set> {
    cands.min_by(|a, b| set::lex_cmp(*a, *b))
}

fn require_circuit(m: &FiniteMatroid, o: Set) -> Result<()> {
    if m.is_circuit(o) {
        Ok(())
    } else {
        Err(KernelError::NotACircuit(m.ground().show(o)))
    }
}

/// The unique circuit inside `s + e` through `e`, for a base `s` and `e ∉ s`.
pub fn fundamental_circuit(m: &FiniteMatroid, s: Set, e: usize) -> Result<Set> {
    if !m.is_base(s) {
        return Err(KernelError::NotABase(m.ground().show(s)));
    }
    if e >= m.len() {
        return Err(KernelError::UnknownLabel(format!("#{e}")));
    }
    if set::contains(s, e) {
        return Err(KernelError::InBase(m.ground().label(e).to_string()));
    }
    let span = s | set::bit(e);
    m.circuits()
        .iter()
        .copied()
        .find(|c| set::contains(*c, e) && set::is_subset(*c, span))
        .ok_or_else(|| KernelError::Internal("base plus element is independent".into()))
}

/// The unique cocircuit avoiding `s - f` through `f`, for a base `s` and `f ∈ s`.
pub fn fundamental_cocircuit(m: &FiniteMatroid, s: Set, f: usize) -> Result<Set> {
    if !m.is_base(s) {
        return Err(KernelError::NotABase(m.ground().show(s)));
    }
    if !set::contains(s, f) {
        return Err(KernelError::Precondition(format!(
            "{} is not in the base",
            m.ground().label(f)
        )));
    }
    let dual = m.dual()?;
    let cobase = m.all() & !s;
    fundamental_circuit(&dual, cobase, f)
}

/// A cocircuit meeting the circuit `o` in exactly `{e, f}`.
pub fn cocircuit_through_pair(m: &FiniteMatroid, o: Set, e: usize, f: usize) -> Result<Set> {
    require_circuit(m, o)?;
    if set::size(o) < 2 {
        return Err(KernelError::Precondition("circuit has fewer than two elements".into()));
    }
    if e == f || !set::contains(o, e) || !set::contains(o, f) {
        return Err(KernelError::Precondition(
            "expected two distinct elements of the circuit".into(),
        ));
    }
    let pair = set::bit(e) | set::bit(f);
    let co = m.cocircuits()?;
    lex_least(co.into_iter().filter(|b| b & o == pair))
        .ok_or_else(|| KernelError::Internal("no cocircuit meets the circuit in the pair".into()))
}

/// An `M`-circuit `o` with `o' ⊆ o ⊆ o' ∪ contract`, for a circuit `o'` of
/// `M / contract \ delete` given over the ground set of `M`.
pub fn lift_circuit(m: &FiniteMatroid, contract: Set, delete: Set, minor_circuit: Set) -> Result<Set> {
    let minor = m.minor_circuits(contract, delete)?;
    if !minor.contains(&minor_circuit) {
        return Err(KernelError::NotACircuit(m.ground().show(minor_circuit)));
    }
    let hull = minor_circuit | contract;
    lex_least(
        m.circuits()
            .iter()
            .copied()
            .filter(|c| set::is_subset(minor_circuit, *c) && set::is_subset(*c, hull)),
    )
    .ok_or_else(|| KernelError::Internal("minor circuit has no lift".into()))
}

/// Applies circuit elimination to `o` and the family `(x, o_x)`, keeping `z`:
/// a circuit `o'` with `z ∈ o' ⊆ (o ∪ ⋃o_x) \ X`.
pub fn eliminate(m: &FiniteMatroid, o: Set, family: &[(usize, Set)], z: usize) -> Result<Set> {
    require_circuit(m, o)?;
    let x_set = family.iter().fold(0, |acc, (x, _)| acc | set::bit(*x));
    let mut union = 0;
    for (i, (x, ox)) in family.iter().enumerate() {
        if !m.is_circuit(*ox) {
            return Err(KernelError::Precondition(format!("family member {i} is not a circuit")));
        }
        if !set::contains(o, *x) {
            return Err(KernelError::Precondition(format!("family member {i}: x is not in o")));
        }
        if ox & x_set != set::bit(*x) {
            return Err(KernelError::Precondition(format!(
                "family member {i} meets the eliminated set outside its own element"
            )));
        }
        union |= ox;
    }
    if !set::contains(o, z) || set::contains(union, z) || set::contains(x_set, z) {
        return Err(KernelError::Precondition(
            "kept element must lie in o outside the family".into(),
        ));
    }
    let allowed = (o | union) & !x_set;
    lex_least(
        m.circuits()
            .iter()
            .copied()
            .filter(|c| set::contains(*c, z) && set::is_subset(*c, allowed)),
    )
    .ok_or(KernelError::NotAMatroid)
}

/// For circuits `o`, `o2` through `z`: a set `X ⊆ o - z` and circuits `o_x` with
/// `o_x ∩ (X + z) = {x}` such that `o2` is the only circuit `o''` with
/// `z ∈ o'' ⊆ (o ∪ ⋃o_x) \ X`. The uniqueness is verified before returning.
pub fn strong_elimination_family(
    m: &FiniteMatroid,
    o: Set,
    o2: Set,
    z: usize,
) -> Result<(Set, Vec<(usize, Set)>)> {
    require_circuit(m, o)?;
    require_circuit(m, o2)?;
    if !set::contains(o & o2, z) {
        return Err(KernelError::Precondition(
            "kept element must lie in both circuits".into(),
        ));
    }
    let contract = o2 & !set::bit(z);
    let minor = m.minor_circuits(contract, 0)?;
    let indep = |s: Set| minor.iter().all(|c| !set::is_subset(*c, s));
    let outside = o & !o2;
    let mut base = 0;
    for e in set::elems(outside) {
        if indep(base | set::bit(e)) {
            base |= set::bit(e);
        }
    }
    let x_set = outside & !base;
    let mut family = Vec::new();
    for x in set::elems(x_set) {
        let span = base | set::bit(x);
        let hat = minor
            .iter()
            .copied()
            .find(|c| set::contains(*c, x) && set::is_subset(*c, span))
            .ok_or_else(|| KernelError::Internal("no fundamental circuit in the contraction".into()))?;
        let ox = lift_circuit(m, contract, 0, hat)?;
        family.push((x, ox));
    }
    verify_strong_elimination(m, o, o2, z, x_set, &family)?;
    Ok((x_set, family))
}

fn verify_strong_elimination(
    m: &FiniteMatroid,
    o: Set,
    o2: Set,
    z: usize,
    x_set: Set,
    family: &[(usize, Set)],
) -> Result<()> {
    let guard = x_set | set::bit(z);
    let mut union = 0;
    for (x, ox) in family {
        if ox & guard != set::bit(*x) {
            return Err(KernelError::Internal(format!(
                "o_x for {} meets X + z in more than x",
                m.ground().label(*x)
            )));
        }
        union |= ox;
    }
    let allowed = (o | union) & !x_set;
    let through: Vec<Set> = m
        .circuits()
        .iter()
        .copied()
        .filter(|c| set::contains(*c, z) && set::is_subset(*c, allowed))
        .collect();
    if through != [o2] {
        return Err(KernelError::Internal(format!(
            "strong elimination is not unique: {} circuits through the kept element",
            through.len()
        )));
    }
    Ok(())
}

/// Union-of-circuits test by direct search.
pub fn is_scrawl_direct(m: &FiniteMatroid, w: Set) -> bool {
    let covered = m
        .circuits()
        .iter()
        .filter(|c| set::is_subset(**c, w))
        .fold(0, |acc, c| acc | c);
    covered == w
}

/// True when `w` is a union of circuits, decided by the cocircuit criterion and
/// cross-checked against the direct search.
pub fn is_scrawl(m: &FiniteMatroid, w: Set) -> Result<bool> {
    if !set::is_subset(w, m.all()) {
        return Err(KernelError::Precondition("set leaves the ground set".into()));
    }
    let co = m.cocircuits()?;
    let by_cocircuits = co.iter().all(|b| set::size(b & w) != 1);
    let direct = is_scrawl_direct(m, w);
    if by_cocircuits != direct {
        return Err(KernelError::Internal(format!(
            "scrawl criteria disagree on {}",
            m.ground().show(w)
        )));
    }
    Ok(direct)
}

/// A circuit `o_min` with `e ∈ o_min ⊆ X ∪ o` whose part outside `X` is
/// inclusion-minimal among all such circuits; ties go to the lexicographically least.
pub fn minimize_circuit_outside(m: &FiniteMatroid, o: Set, x_set: Set, e: usize) -> Result<Set> {
    require_circuit(m, o)?;
    if !set::contains(o & !x_set, e) {
        return Err(KernelError::Precondition("element must lie in o outside X".into()));
    }
    let hull = (x_set | o) & m.all();
    let cands: Vec<Set> = m
        .circuits()
        .iter()
        .copied()
        .filter(|c| set::contains(*c, e) && set::is_subset(*c, hull))
        .collect();
    let outs: Vec<Set> = cands.iter().map(|c| c & !x_set).collect();
    let least = set::minimal_members(&outs);
    lex_least(cands.into_iter().filter(|c| least.contains(&(c & !x_set))))
        .ok_or_else(|| KernelError::Internal("o itself is a candidate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn k4() -> FiniteMatroid {
        fixtures::k4()
    }

    fn mk(m: &FiniteMatroid, l: &[&str]) -> Set {
        m.mask(l.iter().copied()).unwrap()
    }

    #[test]
    fn fundamental_circuit_u13() {
        let m = fixtures::u13();
        assert_eq!(fundamental_circuit(&m, 0b001, 1).unwrap(), 0b011);
        assert!(matches!(fundamental_circuit(&m, 0b011, 2), Err(KernelError::NotABase(_))));
        assert!(matches!(fundamental_circuit(&m, 0b001, 0), Err(KernelError::InBase(_))));
    }

    #[test]
    fn star_base_gives_triangles() {
        let m = k4();
        let star = mk(&m, &["12", "13", "14"]);
        let e = m.ground().index_of("23").unwrap();
        assert_eq!(fundamental_circuit(&m, star, e).unwrap(), mk(&m, &["12", "13", "23"]));
    }

    #[test]
    fn cocircuit_pairs() {
        let m = fixtures::u13();
        // The only cocircuit of U_{1,3} is the whole ground set.
        assert_eq!(cocircuit_through_pair(&m, 0b011, 0, 1).unwrap(), 0b111);
        let c4 = fixtures::cycle(4);
        assert_eq!(cocircuit_through_pair(&c4, 0b1111, 0, 1).unwrap(), 0b0011);
    }

    #[test]
    fn lift_through_contraction() {
        let m = k4();
        let e = mk(&m, &["12"]);
        let o = mk(&m, &["13", "23"]);
        assert_eq!(lift_circuit(&m, e, 0, o).unwrap(), mk(&m, &["12", "13", "23"]));
        assert_eq!(lift_circuit(&m, 0, 0, o | e).unwrap(), o | e);
        assert!(lift_circuit(&m, 0, 0, o).is_err());
    }

    #[test]
    fn eliminate_triangles_gives_square() {
        let m = k4();
        let t1 = mk(&m, &["12", "13", "23"]);
        let t2 = mk(&m, &["12", "14", "24"]);
        let x = m.ground().index_of("12").unwrap();
        let z = m.ground().index_of("13").unwrap();
        let out = eliminate(&m, t1, &[(x, t2)], z).unwrap();
        assert_eq!(out, mk(&m, &["13", "14", "23", "24"]));
        assert_eq!(eliminate(&m, t1, &[], z).unwrap(), t1);
    }

    #[test]
    fn strong_elimination_on_k4_triangles() {
        let m = k4();
        let t1 = mk(&m, &["12", "13", "23"]);
        let t2 = mk(&m, &["12", "14", "24"]);
        let z = m.ground().index_of("12").unwrap();
        let (x, fam) = strong_elimination_family(&m, t1, t2, z).unwrap();
        assert_eq!(set::size(x), fam.len());
        assert_eq!(strong_elimination_family(&m, t1, t1, z).unwrap(), (0, vec![]));
    }

    #[test]
    fn scrawls() {
        let m = fixtures::u13();
        assert!(is_scrawl(&m, 0).unwrap());
        assert!(!is_scrawl(&m, 0b001).unwrap());
        let k = k4();
        assert!(is_scrawl(&k, k.all()).unwrap());
    }

    #[test]
    fn minimization_shrinks_outside_part() {
        let m = k4();
        let square = mk(&m, &["13", "14", "23", "24"]);
        let tri = mk(&m, &["12", "13", "14"]);
        let e = m.ground().index_of("23").unwrap();
        let got = minimize_circuit_outside(&m, square, tri, e).unwrap();
        assert!(set::size(got & !tri) < set::size(square & !tri));
        assert_eq!(minimize_circuit_outside(&m, square, 0, e).unwrap(), square);
    }
}
