//! Validation reports and nodewise duality, contraction and deletion for trees of matroids.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use tdm_core::axioms::{self, AxiomReport};
use tdm_core::GroundSet;
use tdm_decomp::MatroidTree;

use crate::error::{GlueError, Result};

/// Outcome of [`validate_matroid_tree`]: the structural verdict, the circuit-axiom
/// report of every node and any virtual elements that are loops or coloops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeReport {
    pub structure: std::result::Result<(), String>,
    pub nodes: Vec<(String, AxiomReport)>,
    pub degenerate: Vec<String>,
    grounds: Vec<GroundSet>,
}

impl TreeReport {
    /// Structure and every node's circuit axioms hold.
    pub fn is_valid(&self) -> bool {
        self.structure.is_ok() && self.nodes.iter().all(|(_, r)| r.all_pass())
    }

    /// Valid, and every virtual element can be glued (no loops or coloops).
    pub fn is_gluable(&self) -> bool {
        self.is_valid() && self.degenerate.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        match &self.structure {
            Ok(()) => out.push_str("structure: pass\n"),
            Err(w) => {
                let _ = writeln!(out, "structure: fail {w}");
            }
        }
        for ((id, r), ground) in self.nodes.iter().zip(&self.grounds) {
            let verdict = if r.all_pass() { "pass" } else { "fail" };
            let _ = writeln!(out, "node {id}: {verdict}");
            if !r.all_pass() {
                for line in r.render(ground).lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
        }
        for d in &self.degenerate {
            let _ = writeln!(out, "degenerate: {d}");
        }
        let _ = writeln!(out, "valid: {}", self.is_valid());
        out
    }
}

/// Checks that the tree has overlap 1 and that labels are shared only along
/// edges, runs the circuit axioms on every node and lists degenerate virtual elements.
pub fn validate_matroid_tree(t: &MatroidTree) -> TreeReport {
    let structure = t.validate().map_err(|e| e.to_string());
    let mut nodes = Vec::with_capacity(t.len());
    let mut degenerate = Vec::new();
    for (id, m) in t.nodes.iter().zip(&t.matroids) {
        let report = match axioms::validate_circuits(m.ground(), m.circuits()) {
            Ok(r) => r,
            Err(e) => {
                let mut r = AxiomReport::default();
                r.notes.push(e.to_string());
                let witness = axioms::Witness {
                    sets: Vec::new(),
                    element: None,
                    note: e.to_string(),
                };
                r.set(axioms::Axiom::C1, axioms::Verdict::Fail(witness));
                r
            }
        };
        nodes.push((id.clone(), report));
        for l in &t.edge_labels {
            if let Some(i) = m.ground().index(l) {
                if m.is_loop(i) {
                    degenerate.push(format!("`{l}` is a loop of {id}"));
                } else if m.is_coloop(i) {
                    degenerate.push(format!("`{l}` is a coloop of {id}"));
                }
            }
        }
    }
    TreeReport {
        structure,
        nodes,
        degenerate,
        grounds: t.matroids.iter().map(|m| m.ground().clone()).collect(),
    }
}

/// The tree of dual matroids.
pub fn dual_tree(t: &MatroidTree) -> Result<MatroidTree> {
    Ok(t.map_nodes(|_, m| Ok(m.dual()?))?)
}

/// Contracts the non-virtual elements `p` in their nodes.
pub fn contract_tree(t: &MatroidTree, p: &BTreeSet<String>) -> Result<MatroidTree> {
    minor_tree(t, p, &BTreeSet::new())
}

/// Deletes the non-virtual elements `q` from their nodes.
pub fn delete_tree(t: &MatroidTree, q: &BTreeSet<String>) -> Result<MatroidTree> {
    minor_tree(t, &BTreeSet::new(), q)
}

/// Contracts `p` and deletes `q` nodewise; `p` and `q` must be disjoint sets of
/// non-virtual elements.
pub fn minor_tree(t: &MatroidTree, p: &BTreeSet<String>, q: &BTreeSet<String>) -> Result<MatroidTree> {
    if let Some(x) = p.intersection(q).next() {
        return Err(GlueError::ContractedAndDeleted(x.clone()));
    }
    let ground: BTreeSet<String> = t.ground_labels().into_iter().collect();
    for l in p.iter().chain(q) {
        if t.is_virtual(l) {
            return Err(GlueError::VirtualElement(l.clone()));
        }
        if !ground.contains(l) {
            return Err(GlueError::UnknownElement(l.clone()));
        }
    }
    Ok(t.map_nodes(|_, m| {
        let c = m.ground().mask(m.ground().labels().iter().filter(|l| p.contains(*l)))?;
        let d = m.ground().mask(m.ground().labels().iter().filter(|l| q.contains(*l)))?;
        Ok(m.minor(c, d)?)
    })?)
}
