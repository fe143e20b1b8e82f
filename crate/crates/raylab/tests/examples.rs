use std::collections::BTreeSet;

use tdm_core::{FiniteMatroid, Graph};
use tdm_raylab::planar::c4_planar_ray;
use tdm_raylab::search::finite_circuits_within;
use tdm_raylab::symbolic::label_set;
use tdm_raylab::*;
use tdm_treeglue::rays::{q_ray, triangle_ray};

fn bits(s: &str) -> BitWord {
    parse_bits(s).unwrap()
}

fn o(n: usize, v: &str) -> SymbolicRayCircuit {
    q_circuit(n, &bits(v)).unwrap()
}

fn b(n: usize, w: &str) -> SymbolicRayCocircuit {
    q_cocircuit(n, &bits(w)).unwrap()
}

fn circuit_labels(m: &FiniteMatroid) -> BTreeSet<BTreeSet<String>> {
    m.circuits()
        .iter()
        .map(|c| m.ground().names(*c).into_iter().map(str::to_string).collect())
        .collect()
}

/// The first `k` K4s of the ray of K4s as one graph: node `i` has vertices
/// `0_i..3_i` with `2_i = 0_(i+1)` and `3_i = 1_(i+1)`, the shared edge is
/// dropped and so is the last `z`.
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

fn cycle_labels(g: &Graph) -> BTreeSet<BTreeSet<String>> {
    g.cycles()
        .into_iter()
        .map(|c| c.into_iter().map(|e| g.label(e).to_string()).collect())
        .collect()
}

#[test]
fn q_truncations_are_cycle_matroids_of_the_glued_graph() {
    let r = q_ray().unwrap();
    for k in 1..=6 {
        let m = truncate(&r, k).unwrap();
        let g = q_graph(k);
        assert_eq!(m.len(), g.edge_count(), "k = {k}");
        assert_eq!(circuit_labels(&m), cycle_labels(&g), "k = {k}");
    }
}

#[test]
fn first_q_truncation_is_k4_minus_an_edge() {
    let m = truncate(&q_ray().unwrap(), 1).unwrap();
    assert_eq!(m.len(), 5);
    let expected: BTreeSet<BTreeSet<String>> = [
        vec!["a_1", "b0_1", "b1_1"],
        vec!["a_1", "c0_1", "c1_1"],
        vec!["b0_1", "b1_1", "c0_1", "c1_1"],
    ]
    .iter()
    .map(|c| c.iter().map(|s| s.to_string()).collect())
    .collect();
    assert_eq!(circuit_labels(&m), expected);
}

#[test]
fn first_triangle_truncation_has_two_free_elements() {
    let m = truncate(&triangle_ray().unwrap(), 1).unwrap();
    assert_eq!(m.len(), 2);
    assert!(m.circuits().is_empty());
}

#[test]
fn omega_circuit_validity() {
    let r = q_ray().unwrap();
    assert!(is_omega_circuit(&r, &o(0, "(0)")).unwrap());
    assert!(is_omega_circuit(&r, &o(2, "(01)")).unwrap());
    let broken = o(0, "(0)");
    let letters = EPWord::new(vec![broken.letter(1)], vec![q::triangle(0), q::four_cycle(0)]).unwrap();
    let broken = Symbolic::new(1, letters).unwrap();
    assert!(!is_omega_circuit(&r, &broken).unwrap());
}

#[test]
fn omega_cocircuit_validity() {
    let r = q_ray().unwrap();
    for n in 0..4 {
        for w in ["(0)", "(1)", "(01)", "1(0)"] {
            assert!(is_omega_cocircuit(&r, &b(n, w)).unwrap(), "b({n}, {w})");
        }
    }
}

#[test]
fn tilde_examples() {
    let r = q_ray().unwrap();
    assert!(tilde(&r, &o(0, "(0)"), &b(0, "(1)")));
    assert!(!tilde(&r, &o(0, "(0)"), &b(0, "(0)")));
    assert!(tilde(&r, &o(0, "(01)"), &b(0, "(10)")));
}

#[test]
fn simeq_examples() {
    let r = q_ray().unwrap();
    assert_eq!(simeq(&r, &o(0, "(0)"), &o(5, "(0)")).unwrap(), Verdict::Equivalent);
    assert_eq!(simeq(&r, &o(0, "(0)"), &o(0, "(01)")).unwrap(), Verdict::Inequivalent);
    let x = o(3, "01(011)");
    assert_eq!(simeq(&r, &x, &x).unwrap(), Verdict::Equivalent);
}

#[test]
fn phi_star_membership() {
    let r = q_ray().unwrap();
    let phi = q_phi(&[bits("(0)")]).unwrap();
    // o(0, 0^ω) ∼ b(0, 1^ω), so that cocircuit is excluded; b(0, 0^ω) is only
    // related to circuits with tail 1^ω, a different class.
    assert!(!in_phi_star(&r, &b(0, "(1)"), &phi).unwrap());
    assert!(in_phi_star(&r, &b(0, "(0)"), &phi).unwrap());
    for w in ["(0)", "(1)", "(01)", "10(110)"] {
        assert!(in_phi_star(&r, &b(0, w), &PhiSet::empty()).unwrap());
    }
    let constant = q_phi(&[bits("(0)"), bits("(1)")]).unwrap();
    assert!(in_phi_star(&r, &b(0, "(01)"), &constant).unwrap());
}

#[test]
fn phi_circuit_examples() {
    let r = q_ray().unwrap();
    let g = q_graph(3);
    for cycle in cycle_labels(&g) {
        let labels: Vec<String> = cycle.into_iter().collect();
        assert!(is_finite_phi_circuit(&r, &labels).unwrap(), "{labels:?}");
    }
    assert!(!is_finite_phi_circuit(&r, &["a_1", "b0_1"]).unwrap());
    let phi = q_phi(&[bits("(0)")]).unwrap();
    assert!(is_phi_circuit(&r, &o(0, "1(0)"), &phi).unwrap());
    assert!(!is_phi_circuit(&r, &o(0, "(1)"), &phi).unwrap());
    assert!(is_phi_circuit(&r, &o(4, "(0)"), &phi).unwrap());
}

#[test]
fn intersection_cardinalities() {
    let r = q_ray().unwrap();
    let phi = q_phi(&[bits("(0)")]).unwrap();
    let star = b(0, "(0)");
    assert!(in_phi_star(&r, &star, &phi).unwrap());
    assert_eq!(intersection_cardinality(&r, &phi.classes()[0], &star), Cardinality::Infinite);
    assert_eq!(intersection_cardinality(&r, &o(0, "(0)"), &b(0, "(1)")), Cardinality::Finite(1));
    // Finite circuits of the third truncation against assorted cocircuits.
    let within = SymbolicSet::everything(&r);
    let finite = finite_circuits_within(&r, &within, 3, false);
    assert!(!finite.is_empty());
    for c in &finite {
        for n in 0..3 {
            for w in ["(0)", "(1)", "(01)", "1(0)"] {
                let cut = b(n, w).underlying(&r);
                let shared = c.intersection(&cut);
                assert!(shared.is_finite());
                assert_eq!(label_set(&r, &shared).len() % 2, 0);
            }
        }
    }
}

#[test]
fn symmetric_differences() {
    let r = q_ray().unwrap();
    let x = o(0, "(01)");
    assert!(sym_diff(&r, &x, &x).is_empty());
    let w = mod3_words();
    let first = sym_diff(&r, &q_circuit(0, &w[0]).unwrap(), &q_circuit(0, &w[1]).unwrap());
    let all = first.sym_diff(&q_circuit(0, &w[2]).unwrap().underlying(&r));
    assert_eq!(all, o(0, "(1)").underlying(&r));
    let d = sym_diff(&r, &o(0, "(0)"), &o(0, "1(0)"));
    assert!(d.is_finite());
    let names: Vec<String> = label_set(&r, &d).into_iter().collect();
    assert_eq!(names, ["b0_1", "b1_1", "c0_1", "c1_1"]);
}

#[test]
fn ternary_f_examples() {
    let zero = bits("(0)");
    assert_eq!(ternary_f(&zero, &zero, &zero), zero);
    let w = mod3_words();
    assert_eq!(ternary_f(&w[0], &w[1], &w[2]), bits("(1)"));
    let x = bits("1(011)");
    let y = bits("0(10)");
    assert_eq!(ternary_f(&x, &x, &y), y.tail());
}

#[test]
fn closure_under_f() {
    assert!(is_closed_under_f(&[bits("(0)")]).is_ok());
    let witness = is_closed_under_f(&mod3_words()).unwrap_err();
    assert_eq!(witness.image, bits("(1)"));
    // For {0, 1} every triple has an image in {0, 1}, which the eight triples confirm one by one.
    let both = [bits("(0)"), bits("(1)")];
    for a in &both {
        for b in &both {
            for c in &both {
                assert!(both.contains(&ternary_f(a, b, c)));
            }
        }
    }
    assert!(is_closed_under_f(&both).is_ok());
    assert!(is_closed_under_f(&[bits("(0)"), bits("(01)")]).is_ok());
    let witness = is_closed_under_f(&[bits("(0)"), bits("(01)"), bits("(10)")]).unwrap_err();
    assert_eq!(witness.image, bits("(1)"));
}

fn status_line(report: &BinaryReport) -> Vec<(u8, Status)> {
    (2..=9).map(|n| (n, report.status(n))).collect()
}

#[test]
fn binary_report_for_the_constant_zero_class() {
    let report = binary_report(&q_phi(&[bits("(0)")]).unwrap(), 5).unwrap();
    assert!(!report.trivial);
    for n in [3, 4, 5, 6, 7, 8] {
        assert_eq!(report.status(n), Status::Holds, "{}", report.render());
    }
    for n in [2, 9] {
        assert_eq!(report.status(n), Status::Fails);
        assert!(report.condition(n).witness.is_some());
    }
    assert_eq!(report.status(1), Status::DocumentedNegative);
    assert!(report.matches_summary());
}

#[test]
fn binary_report_for_the_mod_three_classes() {
    let report = binary_report(&q_phi(&mod3_words()).unwrap(), 3).unwrap();
    assert_eq!(report.status(7), Status::Fails);
    assert_eq!(report.status(8), Status::Fails);
    let witness = report.condition(7).witness.clone().unwrap();
    assert!(witness.contains("= [(1)]"), "{witness}");
    assert!(report.matches_summary(), "{:?}", status_line(&report));
}

#[test]
fn binary_report_for_the_empty_set_is_trivial() {
    let report = binary_report(&PhiSet::empty(), 3).unwrap();
    assert!(report.trivial);
    for n in 2..=9 {
        assert_eq!(report.status(n), Status::Holds);
    }
    assert!(report.render().contains("finitary"));
}

#[test]
fn report_rendering_is_deterministic() {
    let phi = q_phi(&[bits("(0)")]).unwrap();
    let a = binary_report(&phi, 3).unwrap().render();
    let b = binary_report(&phi, 3).unwrap().render();
    assert_eq!(a, b);
}

#[test]
fn planar_collapse_examples() {
    let chord = planar_ray_collapse(&chord_planar_ray().unwrap(), 3).unwrap();
    assert!(chord.all_collapse(), "{}", chord.render());
    assert!(chord.classes_checked > 0);
    assert!(matches!(planar_ray_collapse(&c4_planar_ray().unwrap(), 3), Err(RayError::NotNice(_))));
    assert!(matches!(planar_ray_collapse(&q_planar_ray().unwrap(), 3), Err(RayError::Certificate(_))));
}

#[test]
fn finfix_examples() {
    let r = q_ray().unwrap();
    let phi = q_phi(&[bits("(0)")]).unwrap();
    let x = o(0, "(0)");
    assert!(finfix_check(&r, &x, &x, &phi).unwrap());
    assert!(finfix_check(&r, &x, &o(0, "101(0)"), &phi).unwrap());
    assert!(finfix_check(&r, &x, &o(3, "(0)"), &phi).unwrap());
    assert!(matches!(finfix_check(&r, &x, &o(0, "(1)"), &phi), Err(RayError::Precondition(_))));
}

#[test]
fn cir_closed_examples() {
    let r = q_ray().unwrap();
    let phi = q_phi(&[bits("(0)")]).unwrap();
    let cut = b(0, "(1)");
    assert!(cir_closed_check(&r, &o(0, "(0)"), &o(2, "11(0)"), &cut, &phi).unwrap());
    assert!(matches!(
        cir_closed_check(&r, &o(0, "(0)"), &o(0, "(1)"), &cut, &phi),
        Err(RayError::Precondition(_))
    ));
}

#[test]
fn symbolic_text_round_trips() {
    let r = q_ray().unwrap();
    for x in [o(0, "(0)"), o(2, "1(01)"), o(1, "(110)")] {
        let text = x.render(&r);
        let back = SymbolicRayCircuit::parse(&r, &text).unwrap();
        assert_eq!(back, x);
        assert_eq!(back.render(&r), text);
    }
    let phi = q_phi(&mod3_words()).unwrap();
    let text = phi.render(&r);
    let back = PhiSet::parse(&r, &text).unwrap();
    assert_eq!(back.render(&r), text);
    assert_eq!(back.len(), 3);
}

#[test]
fn phi_set_deduplicates_equivalent_representatives() {
    let phi = q_phi(&[bits("(0)"), bits("11(0)"), bits("(1)")]).unwrap();
    assert_eq!(phi.len(), 2);
}
