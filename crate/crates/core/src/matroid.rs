use std::collections::BTreeMap;
use std::fmt;

use crate::error::{KernelError, Result};
use crate::set::{self, Set};

/// Default soft cap on the ground-set size for exponential operations.
pub const DEFAULT_CAP: usize = 12;

/// A sorted list of distinct element labels; index `i` is bit `i` of a [`Set`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        labels.sort();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(KernelError::DuplicateLabel(w[0].clone()));
            }
        }
        if labels.len() > set::MAX_GROUND {
            return Err(KernelError::TooLarge {
                size: labels.len(),
                limit: set::MAX_GROUND,
            });
        }
        Ok(GroundSet { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn all(&self) -> Set {
        set::full(self.len())
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index(label)
            .ok_or_else(|| KernelError::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index(label).is_some()
    }

    pub fn mask<I, S>(&self, labels: I) -> Result<Set>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut m = 0;
        for l in labels {
            m |= set::bit(self.index_of(l.as_ref())?);
        }
        Ok(m)
    }

    pub fn names(&self, s: Set) -> Vec<&str> {
        set::elems(s).map(|i| self.labels[i].as_str()).collect()
    }

    /// `{a, b, c}` rendering of a subset.
    pub fn show(&self, s: Set) -> String {
        format!("{{{}}}", self.names(s).join(", "))
    }

    /// Ground set restricted to `keep`, with indices packed.
    pub fn restrict(&self, keep: Set) -> GroundSet {
        GroundSet {
            labels: set::elems(keep).map(|i| self.labels[i].clone()).collect(),
        }
    }
}

/// A finite matroid given by its ground set and its circuits.
///
/// Construction enforces (C1), (C2) and membership in the ground set; circuit
/// elimination is checked by [`FiniteMatroid::satisfies_elimination`] and the
/// axiom checkers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteMatroid {
    ground: GroundSet,
    circuits: Vec<Set>,
}

impl FiniteMatroid {
    pub fn new(ground: GroundSet, circuits: Vec<Set>) -> Result<Self> {
        let all = ground.all();
        let mut circuits = circuits;
        for c in &circuits {
            if !set::is_subset(*c, all) {
                let stray = set::elems(*c & !all).next().unwrap_or(0);
                return Err(KernelError::UnknownLabel(format!("#{stray}")));
            }
            if *c == 0 {
                return Err(KernelError::EmptyCircuit);
            }
        }
        set::sort_family(&mut circuits);
        for (i, a) in circuits.iter().enumerate() {
            for b in &circuits[i + 1..] {
                if set::is_subset(*a, *b) {
                    return Err(KernelError::NotClutter(ground.show(*a), ground.show(*b)));
                }
                if set::is_subset(*b, *a) {
                    return Err(KernelError::NotClutter(ground.show(*b), ground.show(*a)));
                }
            }
        }
        Ok(FiniteMatroid { ground, circuits })
    }

    /// Builds a matroid from labels; convenient in tests and fixtures.
    pub fn from_labels<S: AsRef<str>>(elements: &[S], circuits: &[Vec<S>]) -> Result<Self> {
        let ground = GroundSet::new(elements.iter().map(|s| s.as_ref().to_string()))?;
        let mut masks = Vec::with_capacity(circuits.len());
        for c in circuits {
            masks.push(ground.mask(c.iter())?);
        }
        FiniteMatroid::new(ground, masks)
    }

    /// Minimal nonempty members of `family` as the circuits of a matroid on `ground`.
    /// The caller vouches that the result satisfies circuit elimination.
    pub fn from_scrawls(ground: GroundSet, family: &[Set]) -> Self {
        let nonempty: Vec<Set> = family.iter().copied().filter(|s| *s != 0).collect();
        FiniteMatroid {
            ground,
            circuits: set::minimal_members(&nonempty),
        }
    }

    pub fn free(ground: GroundSet) -> Self {
        FiniteMatroid {
            ground,
            circuits: Vec::new(),
        }
    }

    /// The uniform matroid U_{r,n} on the given labels.
    pub fn uniform<S: AsRef<str>>(rank: usize, labels: &[S]) -> Result<Self> {
        let ground = GroundSet::new(labels.iter().map(|s| s.as_ref().to_string()))?;
        let circuits = if rank >= ground.len() {
            Vec::new()
        } else {
            set::subsets(ground.all())
                .filter(|s| set::size(*s) == rank + 1)
                .collect()
        };
        FiniteMatroid::new(ground, circuits)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn all(&self) -> Set {
        self.ground.all()
    }

    pub fn circuits(&self) -> &[Set] {
        &self.circuits
    }

    pub fn is_circuit(&self, s: Set) -> bool {
        self.circuits.contains(&s)
    }

    pub fn circuit_labels(&self) -> Vec<Vec<String>> {
        self.circuits
            .iter()
            .map(|c| self.ground.names(*c).into_iter().map(String::from).collect())
            .collect()
    }

    pub fn mask<I, S>(&self, labels: I) -> Result<Set>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.ground.mask(labels)
    }

    pub fn check_cap(&self, cap: usize) -> Result<()> {
        if self.len() > cap {
            Err(KernelError::CapExceeded {
                size: self.len(),
                cap,
            })
        } else {
            Ok(())
        }
    }

    pub fn is_independent(&self, s: Set) -> bool {
        self.circuits.iter().all(|c| !set::is_subset(*c, s))
    }

    /// Size of a maximal independent subset of `s` (greedy in index order).
    pub fn rank(&self, s: Set) -> usize {
        set::size(self.greedy_basis(s))
    }

    /// The lexicographically least maximal independent subset of `s`.
    pub fn greedy_basis(&self, s: Set) -> Set {
        let mut basis = 0;
        for e in set::elems(s) {
            if self.is_independent(basis | set::bit(e)) {
                basis |= set::bit(e);
            }
        }
        basis
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.all())
    }

    pub fn is_base(&self, s: Set) -> bool {
        set::is_subset(s, self.all()) && self.is_independent(s) && set::size(s) == self.full_rank()
    }

    pub fn closure(&self, s: Set) -> Set {
        let r = self.rank(s);
        let mut cl = s;
        for e in set::elems(self.all() & !s) {
            if self.rank(s | set::bit(e)) == r {
                cl |= set::bit(e);
            }
        }
        cl
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.circuits.contains(&set::bit(e))
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.circuits.iter().all(|c| !set::contains(*c, e))
    }

    /// Weak circuit elimination: for distinct circuits `a`, `b` and `e` in both,
    /// `(a ∪ b) - e` includes a circuit. Together with (C1) and (C2) this is
    /// equivalent to the matroid axioms on a finite ground set.
    pub fn satisfies_elimination(&self) -> bool {
        self.elimination_failure().is_none()
    }

    /// Two distinct circuits through a common element whose union minus that element
    /// includes no circuit, if any.
    pub fn elimination_failure(&self) -> Option<(Set, Set, usize)> {
        for (i, a) in self.circuits.iter().enumerate() {
            for b in &self.circuits[i + 1..] {
                for e in set::elems(a & b) {
                    let rest = (a | b) & !set::bit(e);
                    if self.is_independent(rest) {
                        return Some((*a, *b, e));
                    }
                }
            }
        }
        None
    }

    /// Circuits of the dual matroid: minimal nonempty sets meeting every base.
    pub fn dual(&self) -> Result<FiniteMatroid> {
        self.dual_with_cap(DEFAULT_CAP)
    }

    pub fn dual_with_cap(&self, cap: usize) -> Result<FiniteMatroid> {
        self.check_cap(cap)?;
        if self.elimination_failure().is_some() {
            return Err(KernelError::NotAMatroid);
        }
        let all = self.all();
        let r = self.full_rank();
        let cocircuits = minimal_sets_where(all, |d| self.rank(all & !d) < r);
        Ok(FiniteMatroid {
            ground: self.ground.clone(),
            circuits: cocircuits,
        })
    }

    pub fn cocircuits(&self) -> Result<Vec<Set>> {
        Ok(self.dual()?.circuits)
    }

    /// Circuits of `M / contract \ delete`, expressed over this ground set.
    pub fn minor_circuits(&self, contract: Set, delete: Set) -> Result<Vec<Set>> {
        let all = self.all();
        if !set::is_subset(contract | delete, all) {
            return Err(KernelError::Precondition(
                "contract/delete sets leave the ground set".into(),
            ));
        }
        if contract & delete != 0 {
            let e = set::elems(contract & delete).next().unwrap_or(0);
            return Err(KernelError::Overlap(self.ground.label(e).to_string()));
        }
        let family: Vec<Set> = self
            .circuits
            .iter()
            .filter(|c| *c & delete == 0)
            .map(|c| c & !contract)
            .filter(|c| *c != 0)
            .collect();
        Ok(set::minimal_members(&family))
    }

    /// The minor `M / contract \ delete` on the remaining labels.
    pub fn minor(&self, contract: Set, delete: Set) -> Result<FiniteMatroid> {
        let circuits = self.minor_circuits(contract, delete)?;
        let keep = self.all() & !(contract | delete);
        // Compression preserves the relative index order, so the family stays sorted.
        Ok(FiniteMatroid {
            ground: self.ground.restrict(keep),
            circuits: circuits.iter().map(|c| set::compress(*c, keep)).collect(),
        })
    }

    pub fn restrict(&self, keep: Set) -> Result<FiniteMatroid> {
        self.minor(0, self.all() & !keep)
    }

    pub fn contract(&self, c: Set) -> Result<FiniteMatroid> {
        self.minor(c, 0)
    }

    pub fn delete(&self, d: Set) -> Result<FiniteMatroid> {
        self.minor(0, d)
    }

    /// Renames labels; unmapped labels keep their names.
    pub fn relabel(&self, map: &BTreeMap<String, String>) -> Result<FiniteMatroid> {
        let new_names: Vec<String> = self
            .ground
            .labels()
            .iter()
            .map(|l| map.get(l).cloned().unwrap_or_else(|| l.clone()))
            .collect();
        let ground = GroundSet::new(new_names.clone())?;
        let perm: Vec<usize> = new_names
            .iter()
            .map(|l| ground.index(l).expect("label present"))
            .collect();
        let circuits = self
            .circuits
            .iter()
            .map(|c| set::elems(*c).fold(0, |acc, i| acc | set::bit(perm[i])))
            .collect();
        FiniteMatroid::new(ground, circuits)
    }

    /// Transfers a subset of this ground set to `other` by label.
    pub fn transfer(&self, s: Set, other: &GroundSet) -> Result<Set> {
        other.mask(self.ground.names(s))
    }
}

/// Inclusion-minimal nonempty subsets of `universe` satisfying a monotone predicate.
pub fn minimal_sets_where<F: Fn(Set) -> bool>(universe: Set, pred: F) -> Vec<Set> {
    let n = set::size(universe);
    let mut by_size: Vec<Vec<Set>> = vec![Vec::new(); n + 1];
    for s in set::subsets(universe) {
        by_size[set::size(s)].push(s);
    }
    let mut found: Vec<Set> = Vec::new();
    for layer in by_size.iter().skip(1) {
        for s in layer {
            if found.iter().any(|f| set::is_subset(*f, *s)) {
                continue;
            }
            if pred(*s) {
                found.push(*s);
            }
        }
    }
    set::sort_family(&mut found);
    found
}

impl fmt::Display for FiniteMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::write_matroid(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> FiniteMatroid {
        crate::fixtures::k4()
    }

    #[test]
    fn uniform_one_three() {
        let m = FiniteMatroid::uniform(1, &["a", "b", "c"]).unwrap();
        assert_eq!(m.circuits().len(), 3);
        assert_eq!(m.rank(m.all()), 1);
        assert!(m.is_independent(m.mask(["a"]).unwrap()));
        assert!(!m.is_independent(m.mask(["a", "b"]).unwrap()));
    }

    #[test]
    fn free_matroid_everything_independent() {
        let m = FiniteMatroid::free(GroundSet::new(["x", "y"]).unwrap());
        assert!(m.is_independent(m.all()));
        assert_eq!(m.rank(0), 0);
    }

    #[test]
    fn k4_rank_and_dual() {
        let m = k4();
        assert_eq!(m.full_rank(), 3);
        let d = m.dual().unwrap();
        assert_eq!(d.circuits().len(), 7);
        assert_eq!(d.dual().unwrap(), m);
    }

    #[test]
    fn clutter_violation_rejected() {
        let err = FiniteMatroid::from_labels(&["a", "b"], &[vec!["a"], vec!["a", "b"]]);
        assert!(matches!(err, Err(KernelError::NotClutter(..))));
    }

    #[test]
    fn minor_overlap_rejected() {
        let m = k4();
        let e = m.mask(["12"]).unwrap();
        assert!(matches!(m.minor(e, e), Err(KernelError::Overlap(_))));
    }

    #[test]
    fn relabel_keeps_structure() {
        let m = FiniteMatroid::uniform(1, &["a", "b", "c"]).unwrap();
        let mut map = BTreeMap::new();
        map.insert("a".to_string(), "z".to_string());
        let r = m.relabel(&map).unwrap();
        assert_eq!(r.ground().labels(), &["b", "c", "z"]);
        assert_eq!(r.circuits().len(), 3);
    }

    #[test]
    fn empty_matroid_is_fine() {
        let m = FiniteMatroid::free(GroundSet::default());
        assert_eq!(m.full_rank(), 0);
        assert_eq!(m.dual().unwrap(), m);
        assert_eq!(m.minor(0, 0).unwrap(), m);
    }
}
