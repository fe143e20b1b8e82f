use proptest::prelude::*;
use std::collections::BTreeSet;

use tdm_core::fixtures;
use tdm_core::FiniteMatroid;
use tdm_decomp::{canonical_decomposition, glue_tree, MatroidTree};
use tdm_treeglue::{contract_tree, delete_tree, dual_tree, minor_tree, validate_matroid_tree};

fn trees() -> Vec<(FiniteMatroid, MatroidTree)> {
    fixtures::two_connected_graphs(8)
        .iter()
        .map(|g| {
            let m = g.cycle_matroid().unwrap();
            let t = canonical_decomposition(&m).unwrap().tree;
            (m, t)
        })
        .collect()
}

/// A tree with disjoint element sets `P` and `Q` drawn by two random masks.
fn tree_with_minor() -> impl Strategy<Value = (FiniteMatroid, MatroidTree, BTreeSet<String>, BTreeSet<String>)> {
    let all = trees();
    (0..all.len(), any::<u16>(), any::<u16>()).prop_map(move |(i, pm, qm)| {
        let (m, t) = all[i].clone();
        let ground = t.ground_labels();
        let pick = |mask: u16| -> BTreeSet<String> {
            ground
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> (j % 16) & 1 == 1)
                .map(|(_, l)| l.clone())
                .collect()
        };
        let p = pick(pm);
        let q: BTreeSet<String> = pick(qm).difference(&p).cloned().collect();
        (m, t, p, q)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn minors_of_trees((_m, t, p, q) in tree_with_minor()) {
        prop_assert_eq!(dual_tree(&dual_tree(&t).unwrap()).unwrap(), t.clone());
        prop_assert_eq!(
            dual_tree(&contract_tree(&t, &p).unwrap()).unwrap(),
            delete_tree(&dual_tree(&t).unwrap(), &p).unwrap()
        );
        prop_assert_eq!(
            dual_tree(&delete_tree(&t, &q).unwrap()).unwrap(),
            contract_tree(&dual_tree(&t).unwrap(), &q).unwrap()
        );
        let a = delete_tree(&contract_tree(&t, &p).unwrap(), &q).unwrap();
        let b = contract_tree(&delete_tree(&t, &q).unwrap(), &p).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(minor_tree(&t, &p, &q).unwrap(), a);
    }

    #[test]
    fn gluing_commutes_with_minors((m, t, p, q) in tree_with_minor()) {
        let tree = minor_tree(&t, &p, &q).unwrap();
        prop_assume!(validate_matroid_tree(&tree).is_gluable());
        let c = m.ground().mask(p.iter()).unwrap();
        let d = m.ground().mask(q.iter()).unwrap();
        prop_assert_eq!(glue_tree(&tree).unwrap(), m.minor(c, d).unwrap());
    }
}
