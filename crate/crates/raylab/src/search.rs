//! Searches for circuits of a ray inside a given symbolic set.

use tdm_core::set::{self, Set};
use tdm_treeglue::RaySpec;

use crate::error::Result;
use crate::symbolic::{in_bit, out_bit, real_mask, Symbolic, SymbolicRayCircuit, SymbolicSet};
use crate::word::{lcm, EPWord};

/// Underlying sets of the finite precircuits of `r` supported in nodes
/// `1..=max_node` whose real elements lie in `within`, reduced to the minimal
/// ones: the finite circuits of `r` inside `within` that end by `max_node`.
///
/// With `end_open` the local circuits at `max_node` may also use the element
/// shared with the next node, which is then dropped: this contracts it instead
/// of deleting it.
pub fn finite_circuits_within(r: &RaySpec, within: &SymbolicSet, max_node: usize, end_open: bool) -> Vec<SymbolicSet> {
    let mut found: Vec<Vec<Set>> = Vec::new();
    let mut acc = vec![0; max_node];
    for n in 1..=max_node {
        let node = r.node(n);
        for &c in node.matroid.circuits() {
            if n > 1 && c & in_bit(node) != 0 {
                continue;
            }
            extend(r, within, max_node, end_open, n, c, &mut acc, &mut found);
        }
    }
    let mut sets: Vec<SymbolicSet> = found.into_iter().map(SymbolicSet::finite).collect();
    sets.sort();
    sets.dedup();
    let minimal: Vec<SymbolicSet> = sets
        .iter()
        .filter(|s| !s.is_empty() && !sets.iter().any(|t| t != *s && !t.is_empty() && t.is_subset(s)))
        .cloned()
        .collect();
    minimal
}

#[allow(clippy::too_many_arguments)]
fn extend(
    r: &RaySpec,
    within: &SymbolicSet,
    max_node: usize,
    end_open: bool,
    k: usize,
    c: Set,
    acc: &mut Vec<Set>,
    found: &mut Vec<Vec<Set>>,
) {
    let real = c & real_mask(r, k);
    if !set::is_subset(real, within.at(k)) {
        return;
    }
    acc[k - 1] = real;
    let node = r.node(k);
    if c & out_bit(node) == 0 || (k == max_node && end_open) {
        found.push(acc[..k].to_vec());
    } else if k < max_node {
        let next = r.node(k + 1);
        for &d in next.matroid.circuits() {
            if d & in_bit(next) != 0 {
                extend(r, within, max_node, end_open, k + 1, d, acc, found);
            }
        }
    }
    acc[k - 1] = 0;
}

/// Prolonged precircuits inside `within` that follow the tail letters of `rep`
/// from some node on, optionally through the element `(node, bit)`.
///
/// Letters before the common threshold are searched exhaustively; from the
/// threshold on they are `rep`'s. Every result is `≃`-equivalent to `rep`.
pub fn prolonged_within(
    r: &RaySpec,
    within: &SymbolicSet,
    rep: &SymbolicRayCircuit,
    through: Option<(usize, Set)>,
) -> Vec<SymbolicRayCircuit> {
    let (tr, pr) = rep.window(r);
    let (ts, ps) = within.window(r);
    let t = tr.max(ts).max(through.map_or(0, |(k, _)| k + 1));
    let p = lcm(pr, ps);
    for k in t..t + p {
        if !set::is_subset(rep.letter(k) & real_mask(r, k), within.at(k)) {
            return Vec::new();
        }
    }
    let tail: Vec<Set> = (t..t + p).map(|k| rep.letter(k)).collect();
    let mut out = Vec::new();
    for n in 1..t {
        let node = r.node(n);
        for &c in node.matroid.circuits() {
            if c & out_bit(node) == 0 || (n > 1 && c & in_bit(node) != 0) {
                continue;
            }
            let mut letters = Vec::new();
            heads(r, within, t, n, c, &mut letters, &mut |letters: &[Set]| {
                if let Some((k, bit)) = through {
                    if k < n || letters[k - n] & bit == 0 {
                        return;
                    }
                }
                let word = EPWord::new(letters.to_vec(), tail.clone()).expect("nonempty tail");
                out.push(Symbolic::new(n, word).expect("start is positive"));
            });
        }
    }
    out.sort();
    out.dedup();
    out
}

fn heads(
    r: &RaySpec,
    within: &SymbolicSet,
    t: usize,
    k: usize,
    c: Set,
    letters: &mut Vec<Set>,
    emit: &mut dyn FnMut(&[Set]),
) {
    if !set::is_subset(c & real_mask(r, k), within.at(k)) {
        return;
    }
    letters.push(c);
    if k + 1 == t {
        emit(letters);
    } else {
        let next = r.node(k + 1);
        let need = in_bit(next) | out_bit(next);
        for &d in next.matroid.circuits() {
            if d & need == need {
                heads(r, within, t, k + 1, d, letters, emit);
            }
        }
    }
    letters.pop();
}

/// Whether some finite circuit ending by `max_node` or some prolonged circuit
/// following one of `reps` lies inside `within`.
pub fn includes_circuit(r: &RaySpec, within: &SymbolicSet, reps: &[SymbolicRayCircuit], max_node: usize) -> Result<bool> {
    if !finite_circuits_within(r, within, max_node, false).is_empty() {
        return Ok(true);
    }
    Ok(reps.iter().any(|rep| !prolonged_within(r, within, rep, None).is_empty()))
}
