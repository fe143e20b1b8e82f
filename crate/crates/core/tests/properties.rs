use proptest::prelude::*;

use tdm_core::axioms::{self, c3_failure, cireli_sides};
use tdm_core::lemmas;
use tdm_core::set::{self, Set};
use tdm_core::{FiniteMatroid, Graph};

/// Cycle matroids of multigraphs (loops and parallel edges allowed), their duals,
/// and uniform matroids.
fn matroid(max_elems: usize) -> impl Strategy<Value = FiniteMatroid> {
    let graphic = (2usize..=5, prop::collection::vec((0usize..5, 0usize..5), 0..=max_elems), any::<bool>())
        .prop_map(|(n, pairs, dualize)| {
            let mut g = Graph::new(n);
            for (i, (u, v)) in pairs.iter().enumerate() {
                g.add_edge(u % n, v % n, format!("e{i}"));
            }
            let m = g.cycle_matroid().unwrap();
            if dualize {
                m.dual().unwrap()
            } else {
                m
            }
        });
    let uniform = (0usize..=max_elems, 0usize..=max_elems).prop_map(|(r, n)| {
        let labels: Vec<String> = (0..n).map(|i| format!("u{i}")).collect();
        FiniteMatroid::uniform(r, &labels).unwrap()
    });
    prop_oneof![3 => graphic, 1 => uniform]
}

fn bases(m: &FiniteMatroid) -> Vec<Set> {
    set::subsets(m.all()).filter(|s| m.is_base(*s)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_is_an_involution(m in matroid(8)) {
        prop_assert_eq!(m.dual().unwrap().dual().unwrap(), m);
    }

    #[test]
    fn circuits_and_cocircuits_never_meet_once(m in matroid(8)) {
        let co = m.cocircuits().unwrap();
        for o in m.circuits() {
            for b in &co {
                prop_assert_ne!(set::size(o & b), 1);
            }
        }
    }

    #[test]
    fn fundamental_circuits_and_cocircuits_agree(m in matroid(7)) {
        for s in bases(&m) {
            for e in set::elems(m.all() & !s) {
                let oe = lemmas::fundamental_circuit(&m, s, e).unwrap();
                for f in set::elems(s) {
                    let bf = lemmas::fundamental_cocircuit(&m, s, f).unwrap();
                    let meet = oe & bf;
                    prop_assert!(meet == 0 || meet == set::bit(e) | set::bit(f));
                    prop_assert_eq!(set::contains(oe, f), set::contains(bf, e));
                }
            }
        }
    }

    #[test]
    fn contraction_and_deletion_commute(m in matroid(8), p in any::<u64>(), q in any::<u64>()) {
        let all = m.all();
        let p = p & all;
        let q = q & all & !p;
        let both = m.minor(p, q).unwrap();
        // Indices shift after the first step, so the second set is carried over by label.
        let mp = m.contract(p).unwrap();
        let q_in_mp = m.transfer(q, mp.ground()).unwrap();
        prop_assert_eq!(&mp.delete(q_in_mp).unwrap(), &both);
        let mq = m.delete(q).unwrap();
        let p_in_mq = m.transfer(p, mq.ground()).unwrap();
        prop_assert_eq!(&mq.contract(p_in_mq).unwrap(), &both);
    }

    #[test]
    fn dual_swaps_contraction_and_deletion(m in matroid(8), p in any::<u64>(), q in any::<u64>()) {
        let all = m.all();
        let p = p & all;
        let q = q & all & !p;
        let lhs = m.minor(p, q).unwrap().dual().unwrap();
        let rhs = m.dual().unwrap().minor(q, p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn strong_elimination_is_always_verified(m in matroid(8)) {
        let cs = m.circuits().to_vec();
        for &o in &cs {
            for &o2 in &cs {
                for z in set::elems(o & o2) {
                    let (x, fam) = lemmas::strong_elimination_family(&m, o, o2, z).unwrap();
                    prop_assert!(set::is_subset(x, o & !set::bit(z)));
                    prop_assert_eq!(fam.len(), set::size(x));
                }
            }
        }
    }

    #[test]
    fn scrawl_criteria_agree(m in matroid(6)) {
        for w in set::subsets(m.all()) {
            // `is_scrawl` itself errors if the two criteria disagree.
            let v = lemmas::is_scrawl(&m, w).unwrap();
            let direct = m.circuits().iter().filter(|c| set::is_subset(**c, w)).fold(0, |a, c| a | c) == w;
            prop_assert_eq!(v, direct);
        }
    }

    #[test]
    fn minimization_is_least_outside(m in matroid(7), x in any::<u64>()) {
        let x = x & m.all();
        for &o in m.circuits() {
            for e in set::elems(o & !x) {
                let got = lemmas::minimize_circuit_outside(&m, o, x, e).unwrap();
                prop_assert!(set::contains(got, e) && set::is_subset(got, o | x));
                for &c in m.circuits() {
                    if set::contains(c, e) && set::is_subset(c, o | x) {
                        let (mine, theirs) = (got & !x, c & !x);
                        prop_assert!(!(set::is_subset(theirs, mine) && theirs != mine));
                        if theirs == mine {
                            prop_assert!(set::lex_cmp(got, c) != std::cmp::Ordering::Greater);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hybrid_accepts_every_matroid(m in matroid(7)) {
        let co = m.cocircuits().unwrap();
        let r = axioms::hybrid_check(m.ground(), m.circuits(), &co).unwrap();
        prop_assert!(r.all_pass(), "{}", r.render(m.ground()));
    }

    #[test]
    fn lifted_circuits_sit_between(m in matroid(7), c in any::<u64>(), d in any::<u64>()) {
        let c = c & m.all();
        let d = d & m.all() & !c;
        for oc in m.minor_circuits(c, d).unwrap() {
            let o = lemmas::lift_circuit(&m, c, d, oc).unwrap();
            prop_assert!(m.is_circuit(o));
            prop_assert!(set::is_subset(oc, o) && set::is_subset(o, oc | c));
        }
    }
}

/// All antichains of nonempty subsets of an `n`-element set.
fn antichains(n: usize) -> Vec<Vec<Set>> {
    let subsets: Vec<Set> = (1..(1u64 << n)).collect();
    let mut out = Vec::new();
    fn rec(i: usize, subsets: &[Set], cur: &mut Vec<Set>, out: &mut Vec<Vec<Set>>) {
        if i == subsets.len() {
            out.push(cur.clone());
            return;
        }
        rec(i + 1, subsets, cur, out);
        let s = subsets[i];
        if cur.iter().all(|c| !set::is_subset(*c, s) && !set::is_subset(s, *c)) {
            cur.push(s);
            rec(i + 1, subsets, cur, out);
            cur.pop();
        }
    }
    rec(0, &subsets, &mut Vec::new(), &mut out);
    out
}

// Pairwise weak elimination, checked directly on the family.
fn weak_elimination(family: &[Set]) -> bool {
    family.iter().all(|a| {
        family.iter().all(|b| {
            a == b
                || set::elems(a & b).all(|e| {
                    let rest = (a | b) & !set::bit(e);
                    family.iter().any(|c| set::is_subset(*c, rest))
                })
        })
    })
}

#[test]
fn antichain_counts_match_dedekind_numbers() {
    // Antichains of nonempty sets: Dedekind numbers minus the one containing the empty set.
    let counts: Vec<usize> = (0..=4).map(|n| antichains(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 19, 167]);
}

#[test]
fn exhaustive_elimination_matches_weak_elimination() {
    for n in 0..=4 {
        for fam in antichains(n) {
            assert_eq!(c3_failure(&fam).is_none(), weak_elimination(&fam), "{n} {fam:?}");
        }
    }
}

#[test]
fn orthogonal_partition_criterion_matches_elimination() {
    for n in 0..=4 {
        for fam in antichains(n) {
            let (o2, c3) = cireli_sides(n, &fam);
            assert_eq!(o2, c3, "{n} {fam:?}");
        }
    }
}
