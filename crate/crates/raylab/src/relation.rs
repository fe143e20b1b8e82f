//! The relation `∼` between prolonged circuits and cocircuits, the equivalence
//! `≃` it generates, sets `Φ` of circuit classes and membership in `M_Φ`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use tdm_core::set::Set;
use tdm_core::graph::UnionFind;
use tdm_core::FiniteMatroid;
use tdm_treeglue::RaySpec;

use crate::error::{RayError, Result};
use crate::symbolic::{
    in_bit, label_set, out_bit, side_ray, sym_diff, template_count, template_index, tilde, Kind, Side, Symbolic,
    SymbolicRayCircuit, SymbolicRayCocircuit, SymbolicSet,
};
use crate::word::{lcm, EPWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Equivalent,
    Inequivalent,
    Unknown,
}

/// The local compatibility structure of every template: the circuits and
/// cocircuits through both shared elements, and the components of the graph
/// joining a circuit to a cocircuit when they meet only in the shared elements.
#[derive(Debug, Clone)]
pub struct TailGraph {
    components: Vec<BTreeMap<(Kind, Set), usize>>,
    has_partner: Vec<BTreeMap<(Kind, Set), bool>>,
}

impl TailGraph {
    pub fn new(r: &RaySpec) -> Result<Self> {
        let dual = r.dual()?;
        let mut components = Vec::new();
        let mut has_partner = Vec::new();
        for j in 0..template_count(r) {
            let (node, conode) = if j < r.prefix.len() {
                (&r.prefix[j], &dual.prefix[j])
            } else {
                (&r.cycle[j - r.prefix.len()], &dual.cycle[j - r.prefix.len()])
            };
            let shared = in_bit(node) | out_bit(node);
            let through = |cs: &[Set]| -> Vec<Set> { cs.iter().copied().filter(|c| c & shared == shared).collect() };
            let cs = through(node.matroid.circuits());
            let ds = through(conode.matroid.circuits());
            let mut uf = UnionFind::new(cs.len() + ds.len());
            let mut partner = BTreeMap::new();
            for (i, c) in cs.iter().enumerate() {
                partner.insert((Kind::Circuit, *c), false);
                for (j, d) in ds.iter().enumerate() {
                    partner.entry((Kind::Cocircuit, *d)).or_insert(false);
                    if c & d & !shared == 0 {
                        uf.union(i, cs.len() + j);
                        partner.insert((Kind::Circuit, *c), true);
                        partner.insert((Kind::Cocircuit, *d), true);
                    }
                }
            }
            let mut comp = BTreeMap::new();
            for (i, c) in cs.iter().enumerate() {
                comp.insert((Kind::Circuit, *c), uf.find(i));
            }
            for (j, d) in ds.iter().enumerate() {
                comp.insert((Kind::Cocircuit, *d), uf.find(cs.len() + j));
            }
            components.push(comp);
            has_partner.push(partner);
        }
        Ok(TailGraph {
            components,
            has_partner,
        })
    }

    fn component(&self, r: &RaySpec, k: usize, kind: Kind, letter: Set) -> Result<usize> {
        self.components[template_index(r, k)]
            .get(&(kind, letter))
            .copied()
            .ok_or_else(|| RayError::InvalidSymbolic(format!("letter at node {k} is not a tail {kind}")))
    }

    /// Whether `x` is `∼`-related to anything at all.
    fn has_partner<S: Side>(&self, r: &RaySpec, x: &Symbolic<S>) -> bool {
        let (t, p) = x.window(r);
        (t..t + p).all(|k| {
            self.has_partner[template_index(r, k)]
                .get(&(S::KIND, x.letter(k)))
                .copied()
                .unwrap_or(false)
        })
    }

    /// Exact `≃` between prolonged (co)circuits of the same ray.
    ///
    /// Tails are all that `∼` sees, and any sequence of tail letters continues a
    /// valid start, so `x ≃ y` iff from some node on the letters of `x` and `y`
    /// lie in the same component of their node's compatibility graph. An object
    /// with no `∼`-partner is equivalent only to itself.
    pub fn simeq<A: Side, B: Side>(&self, r: &RaySpec, x: &Symbolic<A>, y: &Symbolic<B>) -> Result<Verdict> {
        if A::KIND == B::KIND && x.underlying(r) == y.underlying(r) {
            return Ok(Verdict::Equivalent);
        }
        if !self.has_partner(r, x) || !self.has_partner(r, y) {
            return Ok(Verdict::Inequivalent);
        }
        let (tx, px) = x.window(r);
        let (ty, py) = y.window(r);
        let t = tx.max(ty);
        for k in t..t + lcm(px, py) {
            if self.component(r, k, A::KIND, x.letter(k))? != self.component(r, k, B::KIND, y.letter(k))? {
                return Ok(Verdict::Inequivalent);
            }
        }
        Ok(Verdict::Equivalent)
    }
}

/// `x ≃ y`, exact; see [`TailGraph::simeq`].
pub fn simeq<A: Side, B: Side>(r: &RaySpec, x: &Symbolic<A>, y: &Symbolic<B>) -> Result<Verdict> {
    TailGraph::new(r)?.simeq(r, x, y)
}

/// Prolonged (co)circuits starting at node 1 whose tails run over every word of
/// tail letters with period at most `max_cycle` (a multiple of the ray's period).
pub fn sample_objects<S: Side>(r: &RaySpec, max_cycle: usize) -> Result<Vec<Symbolic<S>>> {
    let sr = side_ray(r, S::KIND)?;
    let head = r.prefix.len() + 1;
    let mut prefix = Vec::new();
    for k in 1..=head {
        let node = sr.node(k);
        let need = if k == 1 { out_bit(node) } else { out_bit(node) | in_bit(node) };
        let c = node
            .matroid
            .circuits()
            .iter()
            .copied()
            .find(|c| c & need == need)
            .ok_or_else(|| RayError::NotNice(format!("no {} continues through node {k}", S::KIND)))?;
        prefix.push(c);
    }
    let tail_letters = |k: usize| -> Vec<Set> {
        let node = sr.node(k);
        let shared = in_bit(node) | out_bit(node);
        node.matroid.circuits().iter().copied().filter(|c| c & shared == shared).collect()
    };
    let mut out = Vec::new();
    let period = r.cycle.len();
    let mut len = period;
    while len <= max_cycle {
        let mut words: Vec<Vec<Set>> = vec![Vec::new()];
        for i in 0..len {
            let letters = tail_letters(head + 1 + i);
            words = words
                .into_iter()
                .flat_map(|w| {
                    letters.iter().map(move |c| {
                        let mut w = w.clone();
                        w.push(*c);
                        w
                    })
                })
                .collect();
        }
        for w in words {
            out.push(Symbolic::new(1, EPWord::new(prefix.clone(), w)?)?);
        }
        len += period;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Bounded search for a chain `x ∼ b₁ ∼ o₁ ∼ ... ∼ y` of at most `depth` steps
/// through the sampled objects of [`sample_objects`]. Finding one proves
/// `x ≃ y`; not finding one proves nothing, so the answer is then `Unknown`.
pub fn chain_simeq<A: Side, B: Side>(
    r: &RaySpec,
    x: &Symbolic<A>,
    y: &Symbolic<B>,
    depth: usize,
    max_cycle: usize,
) -> Result<Verdict> {
    if A::KIND == B::KIND && x.underlying(r) == y.underlying(r) {
        return Ok(Verdict::Equivalent);
    }
    let circuits: Vec<SymbolicSet> = sample_objects::<crate::symbolic::CircuitSide>(r, max_cycle)?
        .iter()
        .map(|o| o.underlying(r))
        .collect();
    let cocircuits: Vec<SymbolicSet> = sample_objects::<crate::symbolic::CocircuitSide>(r, max_cycle)?
        .iter()
        .map(|b| b.underlying(r))
        .collect();
    let related = |a: &SymbolicSet, b: &SymbolicSet| a.intersection(b).is_finite();
    let pool = |k: Kind| if k == Kind::Circuit { &circuits } else { &cocircuits };
    let source = x.underlying(r);
    let target = y.underlying(r);
    let mut seen = BTreeSet::new();
    let mut queue: VecDeque<(Kind, Option<usize>, usize)> = VecDeque::from([(A::KIND, None, 0)]);
    while let Some((kind, idx, steps)) = queue.pop_front() {
        let here = idx.map_or(&source, |i| &pool(kind)[i]);
        let other = match kind {
            Kind::Circuit => Kind::Cocircuit,
            Kind::Cocircuit => Kind::Circuit,
        };
        if other == B::KIND && related(here, &target) {
            return Ok(Verdict::Equivalent);
        }
        if steps + 2 > depth {
            continue;
        }
        for (i, s) in pool(other).iter().enumerate() {
            if related(here, s) && seen.insert((other, i)) {
                queue.push_back((other, Some(i), steps + 1));
            }
        }
    }
    Ok(Verdict::Unknown)
}

/// A set `Φ` of `≃`-classes of prolonged circuits, one representative each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiSet {
    classes: Vec<SymbolicRayCircuit>,
}

impl PhiSet {
    /// Keeps the first representative of each class; every representative
    /// must be a prolonged precircuit of `r`.
    pub fn new(r: &RaySpec, reps: Vec<SymbolicRayCircuit>) -> Result<Self> {
        let g = TailGraph::new(r)?;
        let mut classes: Vec<SymbolicRayCircuit> = Vec::new();
        for x in reps {
            if let Some(why) = x.failure(r)? {
                return Err(RayError::InvalidSymbolic(why));
            }
            let mut fresh = true;
            for c in &classes {
                if g.simeq(r, c, &x)? == Verdict::Equivalent {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                classes.push(x);
            }
        }
        Ok(PhiSet { classes })
    }

    pub fn empty() -> Self {
        PhiSet { classes: Vec::new() }
    }

    pub fn classes(&self) -> &[SymbolicRayCircuit] {
        &self.classes
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    /// The representative whose class contains `x`.
    pub fn class_of<S: Side>(&self, r: &RaySpec, x: &Symbolic<S>) -> Result<Option<&SymbolicRayCircuit>> {
        let g = TailGraph::new(r)?;
        for c in &self.classes {
            if g.simeq(r, c, x)? == Verdict::Equivalent {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// Text form: `classes: [{start: .., prefix: .., cycle: ..}, ...]`.
    pub fn render(&self, r: &RaySpec) -> String {
        let items: Vec<String> = self.classes.iter().map(|c| c.render_inline(r)).collect();
        format!("classes: [{}]\n", items.join(", "))
    }

    pub fn parse(r: &RaySpec, src: &str) -> std::result::Result<Self, tdm_core::text::ParseError> {
        use tdm_core::text::{self, ParseError, Value};
        let doc = text::Doc::parse(src)?;
        let entry = doc.require("classes")?;
        let items = entry
            .value
            .as_list()
            .ok_or_else(|| ParseError::new(entry.line, "`classes` must be a list"))?;
        let mut reps = Vec::new();
        for item in items {
            let Value::Map(fields) = item else {
                return Err(ParseError::new(entry.line, "each class must be a map"));
            };
            reps.push(Symbolic::from_entries(r, fields, entry.line)?);
        }
        PhiSet::new(r, reps).map_err(|e| ParseError::new(entry.line, e.to_string()))
    }
}

/// `[b] ∈ Φ*`: no class of `Φ` is `≃`-related to `b`.
pub fn in_phi_star(r: &RaySpec, b: &SymbolicRayCocircuit, phi: &PhiSet) -> Result<bool> {
    if let Some(why) = b.failure(r)? {
        return Err(RayError::InvalidSymbolic(why));
    }
    Ok(phi.class_of(r, b)?.is_none())
}

/// The finite matroid of nodes `1..=k` with the end not permitted.
pub fn truncate(r: &RaySpec, k: usize) -> Result<FiniteMatroid> {
    Ok(r.finite_part(k)?)
}

/// A finite set of ray elements is a circuit of `M_Φ` iff it is a circuit of
/// the truncation at its last node.
pub fn is_finite_phi_circuit<S: AsRef<str>>(r: &RaySpec, labels: &[S]) -> Result<bool> {
    let s = SymbolicSet::from_labels(r, labels)?;
    let Some(k) = s.last_node() else {
        return Ok(false);
    };
    if k == 0 {
        return Ok(false);
    }
    let m = truncate(r, k)?;
    let names = label_set(r, &s);
    let mask = m.ground().mask(names.iter())?;
    Ok(m.is_circuit(mask))
}

/// A prolonged set is a circuit of `M_Φ` iff it is a prolonged circuit whose
/// class lies in `Φ`.
pub fn is_phi_circuit(r: &RaySpec, x: &SymbolicRayCircuit, phi: &PhiSet) -> Result<bool> {
    if !x.is_valid(r)? {
        return Ok(false);
    }
    Ok(phi.class_of(r, x)?.is_some())
}

/// Finite changes preserve membership: given a `Φ`-circuit `x` and a prolonged
/// circuit `x′` with `x △ x′` finite, reports whether `x′` is a `Φ`-circuit.
/// `false` would contradict the closure of `M_Φ` under finite changes.
pub fn finfix_check(r: &RaySpec, x: &SymbolicRayCircuit, x2: &SymbolicRayCircuit, phi: &PhiSet) -> Result<bool> {
    if !is_phi_circuit(r, x, phi)? {
        return Err(RayError::Precondition("x is not a Φ-circuit".into()));
    }
    if !sym_diff(r, x, x2).is_finite() {
        return Err(RayError::Precondition("x △ x′ is infinite".into()));
    }
    if let Some(why) = x2.failure(r)? {
        return Err(RayError::Precondition(format!("x′ is not a prolonged circuit: {why}")));
    }
    is_phi_circuit(r, x2, phi)
}

/// Given a `Φ`-circuit `x`, a prolonged circuit `x′` and a prolonged cocircuit
/// `b` with `x ∼ b` and `x′ ∼ b`, reports whether `x′` is a `Φ`-circuit.
pub fn cir_closed_check(
    r: &RaySpec,
    x: &SymbolicRayCircuit,
    x2: &SymbolicRayCircuit,
    b: &SymbolicRayCocircuit,
    phi: &PhiSet,
) -> Result<bool> {
    if !is_phi_circuit(r, x, phi)? {
        return Err(RayError::Precondition("x is not a Φ-circuit".into()));
    }
    for (what, ok) in [("x′", x2.is_valid(r)?), ("b", b.is_valid(r)?)] {
        if !ok {
            return Err(RayError::Precondition(format!("{what} is not prolonged")));
        }
    }
    if !tilde(r, x, b) || !tilde(r, x2, b) {
        return Err(RayError::Precondition("x ∼ b and x′ ∼ b are required".into()));
    }
    is_phi_circuit(r, x2, phi)
}
