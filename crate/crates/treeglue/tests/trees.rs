use std::collections::BTreeSet;

use tdm_core::fixtures;
use tdm_core::set::{self, Set};
use tdm_core::FiniteMatroid;
use tdm_decomp::{canonical_decomposition, canonical_decomposition_with, glue_tree, MatroidTree, Precircuit, SplitStrategy};
use tdm_treeglue::psi::{self, PsiSpec};
use tdm_treeglue::ray::{parse_ray, write_ray, RayNode, RaySpec};
use tdm_treeglue::{
    contract_tree, delete_tree, dual_tree, enumerate_precircuits, enumerate_psi_circuits, is_phantom, minor_tree,
    rays, validate_matroid_tree, GlueError,
};

fn triangles() -> MatroidTree {
    let a = FiniteMatroid::from_labels(&["a", "b", "p"], &[vec!["a", "b", "p"]]).unwrap();
    let b = FiniteMatroid::from_labels(&["c", "d", "p"], &[vec!["c", "d", "p"]]).unwrap();
    MatroidTree::new(vec!["s".into(), "t".into()], vec![(0, 1)], vec!["p".into()], vec![a, b]).unwrap()
}

/// Decomposition trees of every 2-connected graph with at most `max_edges` edges.
fn decomposition_trees(max_edges: usize) -> Vec<(FiniteMatroid, MatroidTree)> {
    fixtures::two_connected_graphs(max_edges)
        .iter()
        .map(|g| {
            let m = g.cycle_matroid().unwrap();
            let t = canonical_decomposition(&m).unwrap().tree;
            (m, t)
        })
        .collect()
}

fn chain() -> (FiniteMatroid, MatroidTree) {
    let m = fixtures::k4_chain3_graph().cycle_matroid().unwrap();
    let t = canonical_decomposition_with(&m, SplitStrategy::First, 14).unwrap().tree;
    (m, t)
}

fn labels(m: &FiniteMatroid, s: Set) -> BTreeSet<String> {
    m.ground().names(s).into_iter().map(String::from).collect()
}

fn family_labels(ground: &tdm_core::GroundSet, fam: &[Set]) -> BTreeSet<BTreeSet<String>> {
    fam.iter()
        .map(|s| ground.names(*s).into_iter().map(String::from).collect())
        .collect()
}

#[test]
fn validation_examples() {
    assert!(validate_matroid_tree(&triangles()).is_gluable());

    // Two nodes sharing two labels.
    let a = FiniteMatroid::from_labels(&["a", "p", "q"], &[vec!["a", "p", "q"]]).unwrap();
    let b = FiniteMatroid::from_labels(&["b", "p", "q"], &[vec!["b", "p", "q"]]).unwrap();
    let t = MatroidTree {
        nodes: vec!["s".into(), "t".into()],
        edges: vec![(0, 1)],
        edge_labels: vec!["p".into()],
        matroids: vec![a, b],
    };
    let r = validate_matroid_tree(&t);
    assert!(!r.is_valid());
    assert!(r.structure.as_ref().unwrap_err().contains("overlap above 1"));

    // Non-adjacent nodes sharing a label.
    let x = FiniteMatroid::from_labels(&["a", "p", "w"], &[vec!["a", "p", "w"]]).unwrap();
    let y = FiniteMatroid::from_labels(&["b", "p", "q"], &[vec!["b", "p", "q"]]).unwrap();
    let z = FiniteMatroid::from_labels(&["c", "q", "w"], &[vec!["c", "q", "w"]]).unwrap();
    let t = MatroidTree {
        nodes: vec!["r".into(), "s".into(), "t".into()],
        edges: vec![(0, 1), (1, 2)],
        edge_labels: vec!["p".into(), "q".into()],
        matroids: vec![x, y, z],
    };
    let r = validate_matroid_tree(&t);
    assert!(r.structure.as_ref().unwrap_err().contains("non-adjacent"));
    assert!(r.render().contains("valid: false"));

    // A virtual element that is a loop is reported as degenerate.
    let l = FiniteMatroid::from_labels(&["a", "p"], &[vec!["p"]]).unwrap();
    let m = FiniteMatroid::from_labels(&["b", "p"], &[vec!["b", "p"]]).unwrap();
    let t = MatroidTree::new(vec!["s".into(), "t".into()], vec![(0, 1)], vec!["p".into()], vec![l, m]).unwrap();
    let r = validate_matroid_tree(&t);
    assert!(r.is_valid() && !r.is_gluable());
}

#[test]
fn dual_and_minor_identities() {
    let mut cases = decomposition_trees(7);
    cases.push(chain());
    for (_, t) in &cases {
        assert_eq!(&dual_tree(&dual_tree(t).unwrap()).unwrap(), t);
        let ground = t.ground_labels();
        for (i, x) in ground.iter().enumerate() {
            let p = BTreeSet::from([x.clone()]);
            let q = BTreeSet::from([ground[(i + 1) % ground.len()].clone()]);
            let lhs = dual_tree(&contract_tree(t, &p).unwrap()).unwrap();
            let rhs = delete_tree(&dual_tree(t).unwrap(), &p).unwrap();
            assert_eq!(lhs, rhs);
            if p != q {
                let a = delete_tree(&contract_tree(t, &p).unwrap(), &q).unwrap();
                let b = contract_tree(&delete_tree(t, &q).unwrap(), &p).unwrap();
                assert_eq!(a, b);
                assert_eq!(minor_tree(t, &p, &q).unwrap(), a);
            }
        }
    }
}

#[test]
fn glued_minors_commute_with_gluing() {
    let mut checked = 0;
    let mut cases = decomposition_trees(7);
    cases.push(chain());
    for (m, t) in &cases {
        for x in t.ground_labels() {
            let p = BTreeSet::from([x.clone()]);
            let s = m.ground().mask([x.as_str()]).unwrap();
            for (tree, expected) in [
                (contract_tree(t, &p).unwrap(), m.contract(s).unwrap()),
                (delete_tree(t, &p).unwrap(), m.delete(s).unwrap()),
            ] {
                // Gluing needs every virtual element to stay a non-loop, non-coloop.
                if validate_matroid_tree(&tree).is_gluable() {
                    assert_eq!(glue_tree(&tree).unwrap(), expected);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn minor_tree_rejects_virtual_elements() {
    let t = triangles();
    let p = BTreeSet::from(["p".to_string()]);
    assert_eq!(contract_tree(&t, &p), Err(GlueError::VirtualElement("p".into())));
    let both = BTreeSet::from(["a".to_string()]);
    assert!(matches!(minor_tree(&t, &both, &both), Err(GlueError::ContractedAndDeleted(_))));
}

#[test]
fn deleting_a_leaf_leaves_its_virtual_element() {
    let t = triangles();
    let q = BTreeSet::from(["c".to_string(), "d".to_string()]);
    let d = delete_tree(&t, &q).unwrap();
    assert_eq!(d.matroids[1].ground().labels(), &["p".to_string()]);
}

#[test]
fn psi_circuit_examples() {
    let k = fixtures::k4();
    let single = MatroidTree::single("t0", k.clone());
    let pc = enumerate_psi_circuits(&single, &PsiSpec::closed()).unwrap();
    assert_eq!(pc.circuits, k.circuits());

    let pc = enumerate_psi_circuits(&triangles(), &PsiSpec::closed()).unwrap();
    assert_eq!(pc.ground.labels(), &["a", "b", "c", "d"]);
    assert_eq!(pc.circuits, vec![0b1111]);

    let (m, t) = chain();
    let pc = enumerate_psi_circuits(&t, &PsiSpec::closed()).unwrap();
    assert_eq!(family_labels(&pc.ground, &pc.circuits), family_labels(m.ground(), m.circuits()));
}

#[test]
fn psi_circuits_of_decomposition_trees_are_the_circuits() {
    let mut cases = decomposition_trees(8);
    cases.push(chain());
    for (m, t) in &cases {
        let pc = enumerate_psi_circuits(t, &PsiSpec::closed()).unwrap();
        let expected = family_labels(m.ground(), m.circuits());
        assert_eq!(family_labels(&pc.ground, &pc.circuits), expected);
        // On finite trees every underlying set of a precircuit is already a circuit.
        let nonempty: Vec<Set> = pc.underlying.iter().copied().filter(|s| *s != 0).collect();
        assert_eq!(family_labels(&pc.ground, &nonempty), expected);
        if m.len() <= 10 {
            let dual = enumerate_psi_circuits(&dual_tree(t).unwrap(), &PsiSpec::closed()).unwrap();
            let co = m.cocircuits().unwrap();
            assert_eq!(family_labels(&dual.ground, &dual.circuits), family_labels(m.ground(), &co));
        }
    }
}

#[test]
fn canonical_precircuits_are_never_phantom() {
    let mut cases = decomposition_trees(7);
    cases.push((fixtures::k4_two_sum_k4(), canonical_decomposition(&fixtures::k4_two_sum_k4()).unwrap().tree));
    for (m, t) in &cases {
        let d = canonical_decomposition(m).unwrap();
        for o in m.circuits() {
            let p = tdm_decomp::canonical_precircuit(m, &d.deco, *o).unwrap();
            assert!(!is_phantom(t, &PsiSpec::closed(), &p).unwrap());
        }
    }
}

#[test]
fn phantom_in_the_dual_c4_chain() {
    // The dual of a 4-circuit is U(1,4): every pair is a circuit, so the pair of
    // shared elements can be chosen at every node of the tail.
    let r = rays::c4_ray().unwrap().dual().unwrap();
    let (t, psi) = r.truncation(3, true).unwrap();
    let pick = |v: usize, ls: &[&str]| t.matroids[v].ground().mask(ls.iter().copied()).unwrap();
    let p = Precircuit {
        nodes: vec![0, 1, 2],
        choice: vec![pick(0, &["x_1", "a_2"]), pick(1, &["a_2", "a_3"]), pick(2, &["a_3", "a_4"])],
    };
    assert!(is_phantom(&t, &psi, &p).unwrap());
    assert_eq!(psi::phantom_edge(&t, &psi, &p).unwrap(), Some((0, 1)));
    // With the end forbidden the same choice is not a precircuit at all.
    assert!(is_phantom(&t, &psi.complement(), &p).is_err());

    // In the primal chain the only precircuits use every real element.
    let (t, psi) = rays::c4_ray().unwrap().truncation(3, true).unwrap();
    for p in enumerate_precircuits(&t, &psi).unwrap() {
        assert!(!is_phantom(&t, &psi, &p).unwrap());
    }
}

#[test]
fn q_truncations_have_no_phantoms() {
    let q = rays::q_ray().unwrap();
    for k in 1..=3 {
        for permitted in [false, true] {
            let (t, psi) = q.truncation(k, permitted).unwrap();
            for p in enumerate_precircuits(&t, &psi).unwrap() {
                assert!(!is_phantom(&t, &psi, &p).unwrap());
            }
            let dt = dual_tree(&t).unwrap();
            let dpsi = psi.complement();
            for p in enumerate_precircuits(&dt, &dpsi).unwrap() {
                assert!(!is_phantom(&dt, &dpsi, &p).unwrap());
            }
        }
    }
}

#[test]
fn niceness_examples() {
    assert!(rays::q_ray().unwrap().is_nice().unwrap());
    assert!(!rays::c4_ray().unwrap().is_nice().unwrap());
    assert!(!rays::triangle_ray().unwrap().is_nice().unwrap());
    assert!(rays::chord_ray().unwrap().is_nice().unwrap());
    for (_, r) in rays::named_rays().unwrap() {
        assert_eq!(r.is_nice().unwrap(), r.dual().unwrap().is_nice().unwrap());
    }
}

fn pool() -> Vec<RayNode> {
    let u = |n: &[&str]| {
        let m = FiniteMatroid::uniform(1, n).unwrap();
        RayNode::new(m, "a", "z").unwrap()
    };
    vec![
        rays::q_node().unwrap(),
        rays::chord_node().unwrap(),
        rays::c4_ray().unwrap().cycle[0].clone(),
        rays::triangle_ray().unwrap().cycle[0].clone(),
        u(&["a", "x", "z"]),
        u(&["a", "x", "y", "z"]),
    ]
}

/// Brute-force niceness on a truncation: look for a phantom precircuit of the
/// tree or its dual whose invisible part either runs back from a shared loop or
/// covers the whole last period before the open end.
fn phantom_on_truncation(r: &RaySpec) -> bool {
    let k = r.prefix.len() + 2 * r.cycle.len();
    let (t, psi) = r.truncation(k, true).unwrap();
    let dt = dual_tree(&t).unwrap();
    for (tree, spec) in [(&t, psi.clone()), (&dt, psi.clone())] {
        for p in enumerate_precircuits(tree, &spec).unwrap() {
            if let Some((from, to)) = psi::phantom_edge(tree, &spec, &p).unwrap() {
                let towards_end = to > from;
                if !towards_end || k - to >= r.cycle.len() {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn niceness_matches_phantom_search() {
    let nodes = pool();
    let mut specs = Vec::new();
    for a in &nodes {
        specs.push(RaySpec::periodic(vec![a.clone()]).unwrap());
        for b in &nodes {
            specs.push(RaySpec::periodic(vec![a.clone(), b.clone()]).unwrap());
            specs.push(RaySpec::new(vec![a.clone()], vec![b.clone()]).unwrap());
        }
    }
    let mut nice = 0;
    for r in &specs {
        let verdict = r.is_nice().unwrap();
        assert_eq!(verdict, !phantom_on_truncation(r), "{}", write_ray(r));
        nice += usize::from(verdict);
    }
    assert!(nice > 0 && nice < specs.len());
}

/// Every ∅-circuit of the first `k` nodes is an Ω-circuit of the first `k + p` nodes.
fn empty_circuits_are_omega_circuits(r: &RaySpec, k: usize) -> bool {
    let (t, psi) = r.truncation(k, false).unwrap();
    let small = enumerate_psi_circuits(&t, &psi).unwrap();
    let (t2, psi2) = r.truncation(k + r.cycle.len(), true).unwrap();
    let big = enumerate_psi_circuits(&t2, &psi2).unwrap();
    let big_family = family_labels(&big.ground, &big.circuits);
    family_labels(&small.ground, &small.circuits)
        .iter()
        .all(|c| big_family.contains(c))
}

#[test]
fn empty_circuits_of_nice_rays_are_omega_circuits() {
    for r in [rays::q_ray().unwrap(), rays::chord_ray().unwrap()] {
        for k in 1..=3 {
            assert!(empty_circuits_are_omega_circuits(&r, k));
            assert!(empty_circuits_are_omega_circuits(&r.dual().unwrap(), k));
        }
    }
    // Without niceness this fails: in the dual C4 chain `{x_1}` is an Ω-underlying
    // set strictly inside the ∅-circuit `{x_1, y_1}`.
    let bad = rays::c4_ray().unwrap().dual().unwrap();
    assert!(!empty_circuits_are_omega_circuits(&bad, 1));
}

fn never_meet_once(t: &MatroidTree, psi: &PsiSpec) {
    let dt = dual_tree(t).unwrap();
    let dpsi = psi.complement();
    let ground = psi::real_ground(t, psi).unwrap();
    let primal: BTreeSet<Set> = enumerate_precircuits(t, psi)
        .unwrap()
        .iter()
        .map(|p| psi::underlying(t, psi, &ground, p).unwrap())
        .collect();
    let dual: BTreeSet<Set> = enumerate_precircuits(&dt, &dpsi)
        .unwrap()
        .iter()
        .map(|p| psi::underlying(&dt, &dpsi, &ground, p).unwrap())
        .collect();
    for a in &primal {
        for b in &dual {
            assert_ne!(set::size(a & b), 1);
        }
    }
}

#[test]
fn precircuits_and_dual_precircuits_never_meet_once() {
    for r in [rays::q_ray().unwrap(), rays::chord_ray().unwrap(), rays::c4_ray().unwrap()] {
        for permitted in [false, true] {
            let (t, psi) = r.truncation(2, permitted).unwrap();
            never_meet_once(&t, &psi);
        }
    }
    for (_, t) in decomposition_trees(7) {
        never_meet_once(&t, &PsiSpec::closed());
    }
}

#[test]
fn ray_text_round_trip() {
    for (_, r) in rays::named_rays().unwrap() {
        let s = write_ray(&r);
        let back = parse_ray(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(write_ray(&back), s);
    }
    let mixed = RaySpec::new(vec![rays::chord_node().unwrap()], vec![rays::q_node().unwrap()]).unwrap();
    assert_eq!(parse_ray(&write_ray(&mixed)).unwrap(), mixed);
    assert!(parse_ray("prefix: []\ncycle: []").is_err());
}

#[test]
fn q_labels() {
    let q = rays::q_ray().unwrap();
    let n2 = q.realize(2).unwrap();
    let want: Vec<String> = ["a_2", "a_3", "b0_2", "b1_2", "c0_2", "c1_2"].iter().map(|s| s.to_string()).collect();
    assert_eq!(n2.ground().labels(), &want[..]);
    let tri = n2.mask(["b0_2", "c1_2", "a_3"]).unwrap();
    assert!(n2.is_circuit(tri));
    let square = n2.mask(["a_2", "b0_2", "c0_2", "a_3"]).unwrap();
    assert!(n2.is_circuit(square));
    assert_eq!(labels(&n2, tri).len(), 3);
}
