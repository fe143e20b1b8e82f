use std::collections::BTreeSet;
use std::path::Path;

use tdm_core::axioms::{check_cireli_equivalence, hybrid_check, validate_circuits_with_cap};
use tdm_core::fixtures::fixture_set;
use tdm_core::text::{self, Doc, Entry, ParseError};
use tdm_core::{FiniteMatroid, GroundSet, KernelError, Set};
use tdm_decomp::tree::{parse_tree, write_tree};
use tdm_decomp::{
    canonical_decomposition_with, glue_tree, realistic_minor_witness, shape, subtree_torso, Shape, SplitStrategy,
};
use tdm_raylab::relation::{chain_simeq, in_phi_star, is_phi_circuit, PhiSet, TailGraph, Verdict};
use tdm_raylab::symbolic::{intersection_cardinality, sym_diff, tilde, CircuitSide, CocircuitSide, Symbolic};
use tdm_raylab::word::{all_words, parse_bits};
use tdm_raylab::{binary_report, cir_closed_suite, finfix_suite, q_phi, RaySpec};
use tdm_treeglue::psi::{enumerate_precircuits, enumerate_psi_circuits, is_phantom, PsiSpec};
use tdm_treeglue::rays::q_ray;
use tdm_treeglue::{parse_ray, validate_matroid_tree, write_ray};
use tdm_wexample::graph::DEFAULT_DEPTH_CAP;
use tdm_wexample::parity::BOND_DEPTH_CAP;
use tdm_wexample::{
    check_bond_meetings, is_tau_legal, verify_parallel_edges_remark, verify_w_decomposition, Sign, TauSpec, Turn,
    WCircuit, WError,
};

use crate::report::{Outcome, Report};
use crate::{CliError, Result, SUITE_CASES};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parsed<T>(path: &Path, r: std::result::Result<T, ParseError>) -> Result<T> {
    r.map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn read_doc(path: &Path) -> Result<Doc> {
    let src = read(path)?;
    parsed(path, Doc::parse(&src))
}

fn read_matroid(path: &Path) -> Result<FiniteMatroid> {
    let doc = read_doc(path)?;
    parsed(path, text::matroid_from_entries(&doc.entries, 1))
}

fn shape_name(s: Shape) -> &'static str {
    match s {
        Shape::Circuit => "circuit",
        Shape::Cocircuit => "cocircuit",
        Shape::ThreeConnected => "3-connected",
        Shape::Other => "other",
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Equivalent => "equivalent",
        Verdict::Inequivalent => "inequivalent",
        Verdict::Unknown => "unknown",
    }
}

fn names(ground: &GroundSet, s: Set) -> String {
    text::list(&ground.names(s))
}

/// A family of label sets read from an optional field, as masks over `ground`.
fn family_field(path: &Path, doc: &Doc, ground: &GroundSet, key: &str) -> Result<Option<Vec<Set>>> {
    let Some(entry) = doc.get(key) else {
        return Ok(None);
    };
    let sets = parsed(path, text::nested_token_list(entry))?;
    let masks = sets
        .iter()
        .map(|s| ground.mask(s.iter()).map_err(|e| ParseError::new(entry.line, e.to_string())))
        .collect::<std::result::Result<Vec<_>, _>>();
    Ok(Some(parsed(path, masks)?))
}

fn labels_field(path: &Path, entries: &[Entry], key: &str) -> Result<Vec<String>> {
    match text::find(entries, key) {
        Some(e) => parsed(path, text::token_list(e)),
        None => Ok(Vec::new()),
    }
}

pub fn check_axioms(input: &Path, cap: usize) -> Result<Outcome> {
    let doc = read_doc(input)?;
    let el = parsed(input, doc.require("elements"))?;
    let labels = parsed(input, text::token_list(el))?;
    let ground = parsed(
        input,
        GroundSet::new(labels).map_err(|e| ParseError::new(el.line, e.to_string())),
    )?;
    if ground.len() > cap {
        return Err(KernelError::CapExceeded { size: ground.len(), cap }.into());
    }
    let circuits = family_field(input, &doc, &ground, "circuits")?.unwrap_or_default();
    let mut r = Report::new("check-axioms");
    r.field("elements", ground.len());
    r.field("circuits", circuits.len());
    match family_field(input, &doc, &ground, "cocircuits")? {
        Some(cocircuits) => {
            r.field("cocircuits", cocircuits.len());
            let axioms = hybrid_check(&ground, &circuits, &cocircuits)?;
            r.section("axioms", &axioms.render(&ground));
            r.require(axioms.all_pass());
        }
        None => {
            let axioms = validate_circuits_with_cap(&ground, &circuits, cap)?;
            r.section("axioms", &axioms.render(&ground));
            let equivalence = check_cireli_equivalence(&ground, &circuits)?;
            r.field("orthogonal-partition-equivalence", equivalence);
            r.require(axioms.all_pass() && equivalence);
            if axioms.all_pass() {
                let m = FiniteMatroid::new(ground.clone(), circuits)?;
                let dual = m.dual_with_cap(cap)?;
                r.field("derived-cocircuits", text::family(&ground, dual.circuits()));
            }
        }
    }
    Ok(r.finish(None))
}

pub fn dualize(input: &Path, cap: usize) -> Result<Outcome> {
    let m = read_matroid(input)?;
    m.check_cap(cap)?;
    let mut r = Report::new("dualize");
    r.field("elements", m.len());
    r.field("circuits", m.circuits().len());
    if let Some((a, b, e)) = m.elimination_failure() {
        r.field("matroid", false);
        let g = m.ground();
        r.field("witness", format!("{} and {} through {}", names(g, a), names(g, b), g.label(e)));
        r.require(false);
        return Ok(r.finish(None));
    }
    let dual = m.dual_with_cap(cap)?;
    r.field("matroid", true);
    r.field("rank", m.full_rank());
    r.field("corank", dual.full_rank());
    r.field("cocircuits", dual.circuits().len());
    let back = dual.dual_with_cap(cap)? == m;
    r.field("double-dual-is-identity", back);
    r.require(back);
    Ok(r.finish(Some(text::write_matroid(&dual))))
}

pub fn minorize(input: &Path) -> Result<Outcome> {
    let doc = read_doc(input)?;
    let m = parsed(input, text::matroid_from_entries(&doc.entries, 1))?;
    let contract_labels = labels_field(input, &doc.entries, "contract")?;
    let delete_labels = labels_field(input, &doc.entries, "delete")?;
    let contract = m.mask(contract_labels.iter())?;
    let delete = m.mask(delete_labels.iter())?;
    let minor = m.minor(contract, delete)?;
    let mut r = Report::new("minorize");
    r.field("contract", names(m.ground(), contract));
    r.field("delete", names(m.ground(), delete));
    r.field("elements", minor.len());
    r.field("circuits", minor.circuits().len());
    r.field("rank", minor.full_rank());
    let ok = minor.satisfies_elimination();
    r.field("matroid", ok);
    r.require(ok);
    Ok(r.finish(Some(text::write_matroid(&minor))))
}

pub fn decompose(input: &Path, cap: usize) -> Result<Outcome> {
    let m = read_matroid(input)?;
    let d = canonical_decomposition_with(&m, SplitStrategy::First, cap)?;
    d.deco.validate(&m)?;
    let shapes = d.shapes()?;
    let mut r = Report::new("decompose");
    r.field("elements", m.len());
    r.field("nodes", d.tree.len());
    r.field("edges", d.tree.edges.len());
    for (t, s) in shapes.iter().enumerate() {
        r.field(
            &format!("node {}", d.tree.nodes[t]),
            format!("{}, {} elements", shape_name(*s), d.tree.matroids[t].len()),
        );
    }
    let like_adjacent = d.tree.edges.iter().any(|(a, b)| {
        matches!(
            (shapes[*a], shapes[*b]),
            (Shape::Circuit, Shape::Circuit) | (Shape::Cocircuit, Shape::Cocircuit)
        )
    });
    let canonical = !like_adjacent && !shapes.contains(&Shape::Other);
    r.field("canonical", canonical);
    let round_trip = glue_tree(&d.tree)? == m;
    r.field("round-trip", round_trip);
    r.require(canonical && round_trip);
    Ok(r.finish(Some(d.write(&m))))
}

pub fn glue(inputs: &[std::path::PathBuf]) -> Result<Outcome> {
    let tree_path = &inputs[0];
    let src = read(tree_path)?;
    let t = parsed(tree_path, parse_tree(&src))?;
    let mut r = Report::new("glue");
    r.field("nodes", t.len());
    let validity = validate_matroid_tree(&t);
    r.section("tree", &validity.render());
    if !validity.is_gluable() {
        r.require(false);
        return Ok(r.finish(None));
    }
    let glued = glue_tree(&t)?;
    r.field("elements", glued.len());
    r.field("circuits", glued.circuits().len());
    if let Some(expected_path) = inputs.get(1) {
        let expected = read_matroid(expected_path)?;
        let equal = expected == glued;
        r.field("equal", equal);
        r.require(equal);
    }
    Ok(r.finish(Some(text::write_matroid(&glued))))
}

pub fn torso(input: &Path, cap: usize) -> Result<Outcome> {
    let m = read_matroid(input)?;
    let d = canonical_decomposition_with(&m, SplitStrategy::First, cap)?;
    let mut r = Report::new("torso");
    r.field("nodes", d.tree.len());
    let mut all_ok = true;
    for v in 0..d.deco.len() {
        let s = BTreeSet::from([v]);
        let target = subtree_torso(&m, &d.deco, &s)?;
        let w = realistic_minor_witness(&m, &d.deco, &s)?;
        let minor = m.minor(w.contract, w.delete)?.relabel(&w.relabel)?;
        let realistic = w
            .relabel
            .iter()
            .all(|(from, to)| m.ground().contains(from) && !m.ground().contains(to));
        let ok = minor == target && realistic;
        all_ok &= ok;
        let renamed: Vec<String> = w.relabel.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        r.field(
            &format!("node {}", d.tree.nodes[v]),
            format!(
                "{}, contract {}, delete {}, rename {}, witness {}",
                shape_name(shape(&target)?),
                names(m.ground(), w.contract),
                names(m.ground(), w.delete),
                text::list(&renamed),
                if ok { "ok" } else { "mismatch" }
            ),
        );
    }
    r.require(all_ok);
    Ok(r.finish(Some(write_tree(&d.tree))))
}

pub fn precircuit(input: &Path) -> Result<Outcome> {
    let doc = read_doc(input)?;
    let t = parsed(input, tdm_decomp::tree::tree_from_entries(&doc.entries, 1))?;
    let mut psi = PsiSpec::closed();
    for l in labels_field(input, &doc.entries, "permitted")? {
        psi.open.insert(l, true);
    }
    for l in labels_field(input, &doc.entries, "forbidden")? {
        psi.open.insert(l, false);
    }
    psi.validate(&t)?;
    let precircuits = enumerate_precircuits(&t, &psi)?;
    let mut phantom = 0;
    for p in &precircuits {
        if is_phantom(&t, &psi, p)? {
            phantom += 1;
        }
    }
    let found = enumerate_psi_circuits(&t, &psi)?;
    let mut r = Report::new("precircuit");
    r.field("nodes", t.len());
    let open: Vec<String> = psi
        .open
        .iter()
        .map(|(l, p)| format!("{l}={}", if *p { "permitted" } else { "forbidden" }))
        .collect();
    r.field("open", text::list(&open));
    r.field("precircuits", precircuits.len());
    r.field("phantom", phantom);
    r.field("underlying-sets", found.underlying.len());
    r.field("psi-circuits", text::family(&found.ground, &found.circuits));
    let m = FiniteMatroid::new(found.ground.clone(), found.circuits.clone())?;
    if psi.open.is_empty() {
        let matches = glue_tree(&t)? == m;
        r.field("matches-glue", matches);
        r.require(matches);
    }
    Ok(r.finish(Some(text::write_matroid(&m))))
}

pub fn ray_validate(input: &Path) -> Result<Outcome> {
    let src = read(input)?;
    let ray = parsed(input, parse_ray(&src))?;
    ray.validate()?;
    let mut r = Report::new("ray-validate");
    r.field("prefix-nodes", ray.prefix.len());
    r.field("cycle-nodes", ray.cycle.len());
    for (k, node) in ray.prefix.iter().chain(&ray.cycle).enumerate() {
        r.field(
            &format!("node {}", k + 1),
            format!("{} elements, in {}, out {}", node.matroid.len(), node.input, node.output),
        );
    }
    let failure = ray.niceness_failure()?;
    r.field("nice", failure.is_none());
    if let Some(why) = &failure {
        r.field("witness", why);
    }
    let dual_nice = ray.dual()?.is_nice()?;
    r.field("dual-nice", dual_nice);
    r.require(failure.is_none());
    Ok(r.finish(Some(write_ray(&ray))))
}

/// A prolonged circuit or cocircuit read from a file with a `kind` field.
enum Object {
    Circuit(Symbolic<CircuitSide>),
    Cocircuit(Symbolic<CocircuitSide>),
}

fn read_object(ray: &RaySpec, path: &Path) -> Result<Object> {
    let doc = read_doc(path)?;
    let kind = parsed(path, doc.require("kind").and_then(text::single_token))?;
    match kind {
        "circuit" => Ok(Object::Circuit(parsed(path, Symbolic::from_entries(ray, &doc.entries, 1))?)),
        "cocircuit" => Ok(Object::Cocircuit(parsed(path, Symbolic::from_entries(ray, &doc.entries, 1))?)),
        other => Err(CliError::Parse {
            path: path.display().to_string(),
            source: ParseError::new(1, format!("kind must be circuit or cocircuit, not `{other}`")),
        }),
    }
}

impl Object {
    fn render(&self, r: &RaySpec) -> String {
        match self {
            Object::Circuit(x) => format!("circuit {}", x.render_inline(r)),
            Object::Cocircuit(x) => format!("cocircuit {}", x.render_inline(r)),
        }
    }

    fn failure(&self, r: &RaySpec) -> Result<Option<String>> {
        Ok(match self {
            Object::Circuit(x) => x.failure(r)?,
            Object::Cocircuit(x) => x.failure(r)?,
        })
    }
}

pub fn ray_equiv(inputs: &[std::path::PathBuf], depth: usize, max_cycle: usize) -> Result<Outcome> {
    let src = read(&inputs[0])?;
    let ray = parsed(&inputs[0], parse_ray(&src))?;
    let x = read_object(&ray, &inputs[1])?;
    let y = read_object(&ray, &inputs[2])?;
    let mut r = Report::new("ray-equiv");
    r.field("x", x.render(&ray));
    r.field("y", y.render(&ray));
    let mut valid = true;
    for (name, o) in [("x", &x), ("y", &y)] {
        if let Some(why) = o.failure(&ray)? {
            r.field(&format!("{name}-invalid"), why);
            valid = false;
        }
    }
    if !valid {
        r.require(false);
        return Ok(r.finish(None));
    }
    let graph = TailGraph::new(&ray)?;
    macro_rules! both {
        ($f:expr) => {
            match (&x, &y) {
                (Object::Circuit(a), Object::Circuit(b)) => $f(a, b),
                (Object::Circuit(a), Object::Cocircuit(b)) => $f(a, b),
                (Object::Cocircuit(a), Object::Circuit(b)) => $f(a, b),
                (Object::Cocircuit(a), Object::Cocircuit(b)) => $f(a, b),
            }
        };
    }
    let exact = both!(|a, b| graph.simeq(&ray, a, b))?;
    let chain = both!(|a, b| chain_simeq(&ray, a, b, depth, max_cycle))?;
    let difference = both!(|a, b| sym_diff(&ray, a, b));
    r.field("exact", verdict_name(exact));
    r.field("chain-search", format!("{} (depth {depth}, cycles up to {max_cycle})", verdict_name(chain)));
    r.field("symmetric-difference", difference.cardinality());
    let consistent = chain == Verdict::Unknown || chain == exact;
    if let (Object::Circuit(o), Object::Cocircuit(b)) | (Object::Cocircuit(b), Object::Circuit(o)) = (&x, &y) {
        r.field("tilde", tilde(&ray, o, b));
        r.field("intersection", intersection_cardinality(&ray, o, b));
    }
    r.field("consistent", consistent);
    r.require(consistent);
    Ok(r.finish(None))
}

pub fn ray_member(inputs: &[std::path::PathBuf], phi_path: &Path) -> Result<Outcome> {
    let src = read(&inputs[0])?;
    let ray = parsed(&inputs[0], parse_ray(&src))?;
    let x = read_object(&ray, &inputs[1])?;
    let phi_src = read(phi_path)?;
    let phi = parsed(phi_path, PhiSet::parse(&ray, &phi_src))?;
    let mut r = Report::new("ray-member");
    r.field("object", x.render(&ray));
    r.field("phi-classes", phi.len());
    if let Some(why) = x.failure(&ray)? {
        r.field("invalid", why);
        r.require(false);
        return Ok(r.finish(None));
    }
    match &x {
        Object::Circuit(o) => {
            r.field("in-phi", is_phi_circuit(&ray, o, &phi)?);
        }
        Object::Cocircuit(b) => {
            r.field("in-phi-star", in_phi_star(&ray, b, &phi)?);
        }
    }
    Ok(r.finish(None))
}

/// Φ on the ray of K4s, given either as `words: [...]` of circuit classes or as symbolic `classes`.
fn read_q_phi(path: &Path) -> Result<PhiSet> {
    let src = read(path)?;
    let doc = parsed(path, Doc::parse(&src))?;
    match doc.get("words") {
        Some(entry) => {
            let words = parsed(path, text::token_list(entry))?;
            let bits = words
                .iter()
                .map(|w| parse_bits(w).map_err(|e| ParseError::new(entry.line, e.to_string())))
                .collect::<std::result::Result<Vec<_>, _>>();
            Ok(q_phi(&parsed(path, bits)?)?)
        }
        None => {
            let ray = q_ray()?;
            parsed(path, PhiSet::parse(&ray, &src))
        }
    }
}

pub fn q_report(phi_path: &Path, depth: usize) -> Result<Outcome> {
    let phi = read_q_phi(phi_path)?;
    let report = binary_report(&phi, depth)?;
    let mut r = Report::new("q-report");
    r.section("report", &report.render());
    r.require(report.matches_summary());
    Ok(r.finish(None))
}

/// Circuits towards the ends `τ` assigns and the ends `(0)`, `(1)`, `(01)`,
/// turning at the root or below levels 1 and 2 and following every choice
/// word with prefix at most 1 and cycle at most 2.
fn sample_w_circuits(tau: &TauSpec) -> Result<Vec<WCircuit>> {
    let mut ends: BTreeSet<_> = tau.assignments().keys().cloned().collect();
    for e in ["(0)", "(1)", "(01)"] {
        ends.insert(parse_bits(e)?);
    }
    let mut turns = vec![Turn::Root];
    for level in 1..=2 {
        for side in 1..=2 {
            turns.push(Turn::Below { level, side });
        }
    }
    let choices = all_words(&[Sign::Plus, Sign::Minus], 1, 2);
    let mut out = Vec::new();
    for end in &ends {
        for turn in &turns {
            for c in &choices {
                out.push(WCircuit::new(end.clone(), *turn, c.clone())?);
            }
        }
    }
    Ok(out)
}

pub fn w_verify(depth: usize, tau_path: Option<&Path>) -> Result<Outcome> {
    if depth > DEFAULT_DEPTH_CAP {
        return Err(WError::CapExceeded { depth, cap: DEFAULT_DEPTH_CAP }.into());
    }
    let mut r = Report::new("w-verify");
    let shape = verify_w_decomposition(depth)?;
    r.section("decomposition", &shape.render());
    let remark = verify_parallel_edges_remark()?;
    r.section("remark", &remark.render());
    r.require(shape.passed() && remark.passed() && remark.cases.len() == 32);
    if let Some(path) = tau_path {
        let src = read(path)?;
        let tau = parsed(path, TauSpec::parse(&src))?;
        let mut legal = Vec::new();
        for x in sample_w_circuits(&tau)? {
            if is_tau_legal(&x, &tau)? {
                legal.push(x);
            }
        }
        let bonds = check_bond_meetings(depth.min(BOND_DEPTH_CAP), &legal)?;
        r.field("tau-legal-circuits", legal.len());
        r.section("bonds", &bonds.render());
        r.require(bonds.passed());
    }
    Ok(r.finish(None))
}

pub fn roundtrip_suite(seed: u64, cap: usize) -> Result<Outcome> {
    let mut r = Report::new("roundtrip-suite");
    r.field("seed", seed);
    let fixtures = fixture_set();
    let mut glue_failures = Vec::new();
    let mut text_failures = Vec::new();
    for (name, m) in &fixtures {
        let d = canonical_decomposition_with(m, SplitStrategy::First, cap)?;
        if glue_tree(&d.tree)? != *m {
            glue_failures.push(name.clone());
        }
        let matroid_back = text::parse_matroid(&text::write_matroid(m)).ok();
        let tree_back = parse_tree(&write_tree(&d.tree)).ok();
        if matroid_back.as_ref() != Some(m) || tree_back.as_ref() != Some(&d.tree) {
            text_failures.push(name.clone());
        }
    }
    r.field("fixtures", fixtures.len());
    r.field("decompose-glue-failures", glue_failures.len());
    for f in &glue_failures {
        r.field("decompose-glue-failure", f);
    }
    r.field("text-failures", text_failures.len());
    for f in &text_failures {
        r.field("text-failure", f);
    }
    let finfix = finfix_suite(SUITE_CASES, seed)?;
    r.section("finfix", &finfix.render());
    let cir_closed = cir_closed_suite(SUITE_CASES, seed)?;
    r.section("cir-closed", &cir_closed.render());
    r.require(glue_failures.is_empty() && text_failures.is_empty() && finfix.passed() && cir_closed.passed());
    Ok(r.finish(None))
}
