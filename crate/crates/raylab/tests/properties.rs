use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use tdm_core::{FiniteMatroid, Graph};
use tdm_raylab::relation::sample_objects;
use tdm_raylab::search::finite_circuits_within;
use tdm_raylab::symbolic::label_set;
use tdm_raylab::word::all_words;
use tdm_raylab::*;
use tdm_treeglue::rays::q_ray;

const SEED: u64 = 20_240_601;

fn word() -> impl Strategy<Value = BitWord> {
    (prop::collection::vec(0..2u8, 0..3), prop::collection::vec(0..2u8, 1..4))
        .prop_map(|(p, c)| EPWord::new(p, c).unwrap())
}

fn labels(m: &FiniteMatroid, family: &[tdm_core::Set]) -> BTreeSet<BTreeSet<String>> {
    family
        .iter()
        .map(|c| m.ground().names(*c).into_iter().map(str::to_string).collect())
        .collect()
}

fn symbolic_labels(r: &RaySpec, family: &[SymbolicSet]) -> BTreeSet<BTreeSet<String>> {
    family.iter().map(|s| label_set(r, s)).collect()
}

fn eventually_complementary(v: &BitWord, w: &BitWord) -> bool {
    v.zip_with(w, |a, b| a != b).eventually(|d| *d)
}

fn eventually_equal(v: &BitWord, w: &BitWord) -> bool {
    v.tail() == w.tail()
}

#[test]
fn finfix_suite_has_no_failures() {
    let report = finfix_suite(100, 2024).unwrap();
    assert_eq!(report.cases, 100);
    assert!(report.passed(), "{}", report.render());
}

#[test]
fn cir_closed_suite_has_no_failures() {
    let report = cir_closed_suite(100, 2024).unwrap();
    assert!(report.passed(), "{}", report.render());
}

#[test]
fn exact_simeq_agrees_with_chain_search_and_eventual_agreement() {
    let r = q_ray().unwrap();
    let graph = TailGraph::new(&r).unwrap();
    let circuits = sample_objects::<symbolic::CircuitSide>(&r, 3).unwrap();
    // Primitive tails of length 1, 2 and 3 over the two 4-cycles: 2 + 2 + 6.
    assert_eq!(circuits.len(), 10);
    for x in &circuits {
        for y in &circuits {
            let exact = graph.simeq(&r, x, y).unwrap();
            let chain = chain_simeq(&r, x, y, 3, 3).unwrap();
            let oracle = eventually_equal(&q_class(x).unwrap(), &q_class(y).unwrap());
            assert_eq!(exact == Verdict::Equivalent, oracle, "{} vs {}", x.render_inline(&r), y.render_inline(&r));
            assert_eq!(chain == Verdict::Equivalent, oracle);
            assert_ne!(exact, Verdict::Unknown);
        }
    }
}

#[test]
fn tilde_is_eventual_disagreement() {
    let r = q_ray().unwrap();
    let words = all_words(&[0u8, 1], 1, 3);
    for v in &words {
        for w in &words {
            for n in 0..3 {
                let o = q_circuit(n, v).unwrap();
                let b = q_cocircuit(n, w).unwrap();
                assert_eq!(tilde(&r, &o, &b), eventually_complementary(v, w), "o({n}, {v}) vs b({n}, {w})");
            }
        }
    }
}

#[test]
fn phi_star_star_recovers_phi() {
    let r = q_ray().unwrap();
    let universe: Vec<BitWord> = all_words(&[0u8, 1], 0, 2);
    let cocircuits: Vec<SymbolicRayCocircuit> = universe.iter().map(|w| q_cocircuit(0, w).unwrap()).collect();
    for mask in 0u32..(1 << universe.len()) {
        let chosen: Vec<BitWord> = (0..universe.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| universe[i].clone())
            .collect();
        let phi = q_phi(&chosen).unwrap();
        let star: Vec<&SymbolicRayCocircuit> =
            cocircuits.iter().filter(|b| in_phi_star(&r, b, &phi).unwrap()).collect();
        // A circuit class lies in (Φ*)* iff no cocircuit of Φ* is ≃ to it.
        let back: Vec<BitWord> = universe
            .iter()
            .filter(|v| {
                let o = q_circuit(0, v).unwrap();
                star.iter().all(|b| simeq(&r, &o, *b).unwrap() == Verdict::Inequivalent)
            })
            .cloned()
            .collect();
        assert_eq!(back, chosen, "mask {mask:b}");
    }
}

#[test]
fn finite_circuits_do_not_depend_on_phi() {
    let r = q_ray().unwrap();
    let everything = SymbolicSet::everything(&r);
    for k in 1..=4 {
        let m = truncate(&r, k).unwrap();
        let found = finite_circuits_within(&r, &everything, k, false);
        assert_eq!(symbolic_labels(&r, &found), labels(&m, m.circuits()), "k = {k}");
        for words in [vec![], vec![parse_bits("(0)").unwrap()], mod3_words()] {
            let phi = q_phi(&words).unwrap();
            for c in &found {
                let names: Vec<String> = label_set(&r, c).into_iter().collect();
                assert!(is_finite_phi_circuit(&r, &names).unwrap());
                assert_eq!(phi.len(), words.len());
            }
        }
    }
}

/// The first `k` K4s of the ray glued along shared edges, without the last `z`.
fn q_graph(k: usize) -> Graph {
    let mut g = Graph::new(2 * k + 2);
    for i in 1..=k {
        let v = |j: usize| 2 * (i - 1) + j;
        if i == 1 {
            g.add_edge(v(0), v(1), "a_1");
        }
        g.add_edge(v(0), v(3), format!("b0_{i}"));
        g.add_edge(v(1), v(2), format!("c0_{i}"));
        g.add_edge(v(1), v(3), format!("b1_{i}"));
        g.add_edge(v(0), v(2), format!("c1_{i}"));
    }
    g
}

#[test]
fn dual_search_with_open_end_finds_the_bonds_of_the_truncation() {
    let r = q_ray().unwrap();
    let dual = r.dual().unwrap();
    let everything = SymbolicSet::everything(&dual);
    for k in 1..=3 {
        let bonds = q_graph(k).cycle_matroid().unwrap().dual_with_cap(16).unwrap();
        let found = finite_circuits_within(&dual, &everything, k, true);
        assert_eq!(symbolic_labels(&dual, &found), labels(&bonds, bonds.circuits()), "k = {k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, rng_seed: RngSeed::Fixed(SEED), ..ProptestConfig::default() })]

    #[test]
    fn canonical_form_ignores_unrolling(p in prop::collection::vec(0..2u8, 0..3), c in prop::collection::vec(0..2u8, 1..4)) {
        let w = EPWord::new(p.clone(), c.clone()).unwrap();
        let mut longer = p.clone();
        longer.extend(&c);
        prop_assert_eq!(EPWord::new(longer, c.clone()).unwrap(), w.clone());
        let doubled: Vec<u8> = c.iter().chain(&c).copied().collect();
        prop_assert_eq!(EPWord::new(p, doubled).unwrap(), w);
    }

    #[test]
    fn zip_with_is_pointwise(v in word(), w in word()) {
        let x = v.zip_with(&w, |a, b| a ^ b);
        for i in 0..24 {
            prop_assert_eq!(*x.get(i), v.get(i) ^ w.get(i));
        }
    }

    #[test]
    fn ternary_f_cancels_pairs(x in word(), y in word()) {
        prop_assert_eq!(ternary_f(&x, &x, &y), y.tail());
        prop_assert_eq!(ternary_f(&x, &y, &x), y.tail());
    }

    #[test]
    fn simeq_is_eventual_agreement(v in word(), w in word(), n in 0usize..4, m in 0usize..4) {
        let r = q_ray().unwrap();
        let x = q_circuit(n, &v).unwrap();
        let y = q_circuit(m, &w).unwrap();
        let verdict = simeq(&r, &x, &y).unwrap();
        prop_assert_eq!(verdict == Verdict::Equivalent, eventually_equal(&v, &w));
    }

    #[test]
    fn circuit_and_cocircuit_are_related_iff_complementary(v in word(), w in word(), n in 0usize..4, m in 0usize..4) {
        let r = q_ray().unwrap();
        let x = q_circuit(n, &v).unwrap();
        let b = q_cocircuit(m, &w).unwrap();
        let verdict = simeq(&r, &x, &b).unwrap();
        prop_assert_eq!(verdict == Verdict::Equivalent, eventually_complementary(&v, &w));
    }

    #[test]
    fn finite_circuit_cocircuit_intersections_are_even(k in 1usize..4, n in 0usize..4, w in word()) {
        let r = q_ray().unwrap();
        let cut = q_cocircuit(n, &w).unwrap().underlying(&r);
        for c in finite_circuits_within(&r, &SymbolicSet::everything(&r), k, false) {
            let shared = c.intersection(&cut);
            prop_assert_eq!(label_set(&r, &shared).len() % 2, 0);
        }
    }

    #[test]
    fn finite_changes_stay_in_phi(v in word(), extra in word(), flips in prop::collection::vec(0..2u8, 0..5), n in 0usize..4, m in 0usize..4) {
        let r = q_ray().unwrap();
        let phi = q_phi(&[v.clone(), extra]).unwrap();
        let v2 = flips.iter().enumerate().fold(v.clone(), |w, (i, b)| w.with_letter(i, *b));
        let x = q_circuit(n, &v).unwrap();
        let x2 = q_circuit(m, &v2).unwrap();
        prop_assert!(finfix_check(&r, &x, &x2, &phi).unwrap());
    }
}
