use std::collections::BTreeMap;

use tdm_core::axioms::{self, Axiom, Verdict};
use tdm_core::fixtures;
use tdm_core::lemmas;
use tdm_core::set::{self, Set};
use tdm_core::text;
use tdm_core::{FiniteMatroid, Graph, GroundSet, KernelError};

fn mk(m: &FiniteMatroid, labels: &[&str]) -> Set {
    m.mask(labels.iter().copied()).unwrap()
}

/// Brute-force isomorphism test by trying every bijection of the ground sets.
fn isomorphic(a: &FiniteMatroid, b: &FiniteMatroid) -> bool {
    if a.len() != b.len() || a.circuits().len() != b.circuits().len() {
        return false;
    }
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let target: std::collections::BTreeSet<Set> = b.circuits().iter().copied().collect();
    fn heap(k: usize, perm: &mut Vec<usize>, check: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k <= 1 {
            return check(perm);
        }
        for i in 0..k {
            if heap(k - 1, perm, check) {
                return true;
            }
            if k % 2 == 0 {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
        false
    }
    let mut check = |p: &[usize]| {
        a.circuits().iter().all(|c| {
            let img = set::elems(*c).fold(0, |acc, i| acc | set::bit(p[i]));
            target.contains(&img)
        })
    };
    heap(n, &mut perm, &mut check)
}

#[test]
fn validate_circuits_examples() {
    let g = GroundSet::new(["a", "b", "c"]).unwrap();
    let r = axioms::validate_circuits(&g, &[0b011, 0b101, 0b110]).unwrap();
    assert!(r.all_pass());
    assert!(r.notes.iter().any(|n| n.contains("CM")));
    let err = text::parse_matroid("elements: [a]\ncircuits: [[a, q]]").unwrap_err();
    assert!(err.msg.contains('q'));
}

#[test]
fn rank_examples() {
    let u = fixtures::u13();
    assert_eq!(u.rank(u.all()), 1);
    assert_eq!(u.rank(0), 0);
    // Spanning trees of K4 have 3 edges.
    let k = fixtures::k4();
    assert_eq!(k.rank(k.all()), 3);
}

#[test]
fn dual_examples() {
    let u = fixtures::u13();
    assert_eq!(u.dual().unwrap().circuits(), &[0b111]);
    let k = fixtures::k4();
    assert!(isomorphic(&k.dual().unwrap(), &k));
    let free = FiniteMatroid::free(GroundSet::new(["a"]).unwrap());
    assert_eq!(free.dual().unwrap().circuits(), &[0b1]);
}

#[test]
fn contraction_matches_graph_contraction() {
    // Contracting edge 12 of K4 merges vertices 1 and 2.
    let k = fixtures::k4();
    let minor = k.contract(mk(&k, &["12"])).unwrap();
    let mut g = Graph::new(3);
    g.add_edge(0, 1, "13");
    g.add_edge(0, 1, "23");
    g.add_edge(0, 2, "14");
    g.add_edge(0, 2, "24");
    g.add_edge(1, 2, "34");
    assert_eq!(minor, g.cycle_matroid().unwrap());
    assert_eq!(k.minor(0, 0).unwrap(), k);
    let u = fixtures::u13();
    assert_eq!(u.delete(0b100).unwrap(), FiniteMatroid::uniform(1, &["a", "b"]).unwrap());
}

#[test]
fn lift_examples() {
    let k = fixtures::k4();
    // Contracting everything of a triangle but one edge leaves that edge a loop.
    let tri = mk(&k, &["12", "13", "23"]);
    let rest = mk(&k, &["12", "13"]);
    let loop_e = mk(&k, &["23"]);
    assert_eq!(lemmas::lift_circuit(&k, rest, 0, loop_e).unwrap(), tri);
}

#[test]
fn fundamental_circuit_duality_on_one_base() {
    let k = fixtures::k4();
    let s = mk(&k, &["12", "13", "14"]);
    for e in set::elems(k.all() & !s) {
        let oe = lemmas::fundamental_circuit(&k, s, e).unwrap();
        for f in set::elems(s) {
            let bf = lemmas::fundamental_cocircuit(&k, s, f).unwrap();
            assert_eq!(set::contains(oe, f), set::contains(bf, e));
        }
    }
}

#[test]
fn cocircuit_through_pair_examples() {
    let c4 = fixtures::cycle(4);
    assert_eq!(lemmas::cocircuit_through_pair(&c4, 0b1111, 0, 1).unwrap(), 0b0011);
    let k = fixtures::k4();
    // A 2-circuit appears after contracting an edge; every cocircuit through one of its
    // elements meets it in both.
    let m = k.contract(mk(&k, &["12"])).unwrap();
    let pair = mk(&m, &["13", "23"]);
    let b = lemmas::cocircuit_through_pair(&m, pair, 0, 2).unwrap();
    assert_eq!(b & pair, pair);
}

#[test]
fn scrawl_and_minimization_examples() {
    let k = fixtures::k4();
    assert!(lemmas::is_scrawl(&k, k.all()).unwrap());
    let sq = mk(&k, &["13", "14", "23", "24"]);
    let e = k.ground().index_of("13").unwrap();
    assert_eq!(lemmas::minimize_circuit_outside(&k, sq, 0, e).unwrap(), sq);
    let x = k.all() & !set::bit(e);
    let got = lemmas::minimize_circuit_outside(&k, sq, x, e).unwrap();
    assert_eq!(got & !x, set::bit(e));
}

#[test]
fn perp_of_k4_is_vertex_stars() {
    let k = fixtures::k4();
    let perp = axioms::perp_minimal(k.ground(), k.circuits()).unwrap();
    let mut stars: Vec<Set> = (1..=4)
        .map(|v| {
            let labels: Vec<String> = k
                .ground()
                .labels()
                .iter()
                .filter(|l| l.contains(&v.to_string()))
                .cloned()
                .collect();
            k.mask(labels.iter()).unwrap()
        })
        .collect();
    // Minimal members of C⊥ are the bonds: the four stars and the three 4-edge cuts.
    let cuts = k.cocircuits().unwrap();
    assert_eq!(perp, cuts);
    set::sort_family(&mut stars);
    assert!(stars.iter().all(|s| perp.contains(s)));
}

#[test]
fn hybrid_examples() {
    let k = fixtures::k4();
    let r = axioms::hybrid_check(k.ground(), k.circuits(), &k.cocircuits().unwrap()).unwrap();
    assert!(r.passed(Axiom::Hybrid));
    let u = fixtures::u13();
    let r = axioms::hybrid_check(u.ground(), u.circuits(), &[0b011]).unwrap();
    assert!(matches!(r.get(Axiom::Hybrid), Some(Verdict::Fail(_))));
}

#[test]
fn cireli_examples() {
    let g = GroundSet::new(["a", "b", "c"]).unwrap();
    assert!(axioms::check_cireli_equivalence(&g, fixtures::u13().circuits()).unwrap());
    assert!(axioms::check_cireli_equivalence(&g, &[0b011, 0b110]).unwrap());
}

#[test]
fn caps_are_enforced() {
    let labels: Vec<String> = (0..13).map(|i| format!("x{i:02}")).collect();
    let m = FiniteMatroid::uniform(12, &labels).unwrap();
    assert!(matches!(m.dual(), Err(KernelError::CapExceeded { size: 13, cap: 12 })));
}

#[test]
fn relabel_round_trip() {
    let k = fixtures::k4();
    let map: BTreeMap<String, String> = k
        .ground()
        .labels()
        .iter()
        .map(|l| (l.clone(), format!("k{l}")))
        .collect();
    let back: BTreeMap<String, String> = map.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
    assert_eq!(k.relabel(&map).unwrap().relabel(&back).unwrap(), k);
}
