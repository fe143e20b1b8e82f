//! Seeded randomized suites for finite-change closure and closure under `∼`
//! on the ray of K4s.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tdm_treeglue::rays::q_ray;

use crate::error::Result;
use crate::q::{q_circuit, q_cocircuit, q_phi};
use crate::relation::{cir_closed_check, finfix_check};
use crate::word::{BitWord, EPWord};

/// Outcome of a randomized suite: the number of cases and a description of each failing one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.name);
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "cases: {}", self.cases);
        let _ = writeln!(out, "failures: {}", self.failures.len());
        for f in &self.failures {
            let _ = writeln!(out, "failure: {f}");
        }
        out
    }
}

fn random_word(rng: &mut ChaCha8Rng, max_prefix: usize, max_cycle: usize) -> BitWord {
    let prefix = (0..rng.gen_range(0..=max_prefix)).map(|_| rng.gen_range(0..2u8)).collect();
    let cycle = (0..rng.gen_range(1..=max_cycle)).map(|_| rng.gen_range(0..2u8)).collect();
    EPWord::new(prefix, cycle).expect("nonempty cycle")
}

/// `v` with each of its first `n` letters replaced by a random bit.
fn perturb(rng: &mut ChaCha8Rng, v: &BitWord, n: usize) -> BitWord {
    (0..n).fold(v.clone(), |w, i| w.with_letter(i, rng.gen_range(0..2u8)))
}

fn complement(v: &BitWord) -> BitWord {
    v.map(|b| 1 - b)
}

/// `cases` random instances of: `x = o(n, v)` with `[x] ∈ Φ`, `x′ = o(n′, v′)`
/// with `v′` a finite change of `v`; each must have `x′` a `Φ`-circuit.
pub fn finfix_suite(cases: usize, seed: u64) -> Result<SuiteReport> {
    let r = q_ray()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let v = random_word(&mut rng, 2, 3);
        let extra = random_word(&mut rng, 2, 3);
        let phi = q_phi(&[v.clone(), extra])?;
        let x = q_circuit(rng.gen_range(0..4), &v)?;
        let changes = rng.gen_range(0..=4);
        let v2 = perturb(&mut rng, &v, changes);
        let x2 = q_circuit(rng.gen_range(0..4), &v2)?;
        match finfix_check(&r, &x, &x2, &phi) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("case {case}: {} is not a Φ-circuit", x2.render_inline(&r))),
            Err(e) => failures.push(format!("case {case}: {e}")),
        }
    }
    Ok(SuiteReport {
        name: "finfix",
        seed,
        cases,
        failures,
    })
}

/// `cases` random instances of: `x = o(n, v)` with `[x] ∈ Φ`, a cocircuit
/// `b = b(m, w)` with `x ∼ b`, and `x′ = o(n′, v′)` with `x′ ∼ b`, all words
/// of cycle length at most 2; each must have `x′` a `Φ`-circuit.
pub fn cir_closed_suite(cases: usize, seed: u64) -> Result<SuiteReport> {
    let r = q_ray()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let v = random_word(&mut rng, 2, 2);
        let extra = random_word(&mut rng, 2, 2);
        let phi = q_phi(&[v.clone(), extra])?;
        let x = q_circuit(rng.gen_range(0..4), &v)?;
        let changes = rng.gen_range(0..=3);
        let w = perturb(&mut rng, &complement(&v), changes);
        let b = q_cocircuit(rng.gen_range(0..4), &w)?;
        let changes = rng.gen_range(0..=3);
        let v2 = perturb(&mut rng, &complement(&w), changes);
        let x2 = q_circuit(rng.gen_range(0..4), &v2)?;
        match cir_closed_check(&r, &x, &x2, &b, &phi) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("case {case}: {} is not a Φ-circuit", x2.render_inline(&r))),
            Err(e) => failures.push(format!("case {case}: {e}")),
        }
    }
    Ok(SuiteReport {
        name: "cir-closed",
        seed,
        cases,
        failures,
    })
}
