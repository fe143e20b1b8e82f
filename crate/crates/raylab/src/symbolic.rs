//! Prolonged circuits and cocircuits of a ray as eventually periodic words of
//! local circuits, and subsets of the ray's ground set as eventually periodic
//! words of per-node masks.

use std::collections::BTreeSet;
use std::fmt;
use std::marker::PhantomData;

use tdm_core::set::{self, Set};
use tdm_treeglue::{RayNode, RaySpec};

use crate::error::{RayError, Result};
use crate::word::{lcm, EPWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Circuit,
    Cocircuit,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Circuit => "circuit",
            Kind::Cocircuit => "cocircuit",
        })
    }
}

/// Marker for the two flavours of [`Symbolic`].
pub trait Side: Clone + fmt::Debug + Eq + Ord + std::hash::Hash {
    const KIND: Kind;
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CircuitSide {}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CocircuitSide {}

impl Side for CircuitSide {
    const KIND: Kind = Kind::Circuit;
}

impl Side for CocircuitSide {
    const KIND: Kind = Kind::Cocircuit;
}

/// A prolonged precircuit (or precocircuit) of a ray: its support is the nodes
/// `start, start + 1, ...` and letter `i` is the local circuit (or cocircuit)
/// at node `start + i`, as a mask over that node's template ground set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbolic<S: Side> {
    pub start: usize,
    pub letters: EPWord<Set>,
    side: PhantomData<S>,
}

pub type SymbolicRayCircuit = Symbolic<CircuitSide>;
pub type SymbolicRayCocircuit = Symbolic<CocircuitSide>;

/// Index of node `k`'s template in `prefix ++ cycle`.
pub fn template_index(r: &RaySpec, k: usize) -> usize {
    let p = r.prefix.len();
    if k <= p {
        k - 1
    } else {
        p + (k - 1 - p) % r.cycle.len()
    }
}

/// Number of templates of the ray.
pub fn template_count(r: &RaySpec) -> usize {
    r.prefix.len() + r.cycle.len()
}

pub(crate) fn in_bit(n: &RayNode) -> Set {
    set::bit(n.matroid.ground().index(&n.input).expect("validated node"))
}

pub(crate) fn out_bit(n: &RayNode) -> Set {
    set::bit(n.matroid.ground().index(&n.output).expect("validated node"))
}

/// Mask of the real elements of node `k` over its template.
pub fn real_mask(r: &RaySpec, k: usize) -> Set {
    let n = r.node(k);
    let mut m = n.matroid.all() & !out_bit(n);
    if k > 1 {
        m &= !in_bit(n);
    }
    m
}

/// The ray whose node circuits are the letters of `kind`.
pub fn side_ray(r: &RaySpec, kind: Kind) -> Result<RaySpec> {
    Ok(match kind {
        Kind::Circuit => r.clone(),
        Kind::Cocircuit => r.dual()?,
    })
}

impl<S: Side> Symbolic<S> {
    pub fn new(start: usize, letters: EPWord<Set>) -> Result<Self> {
        if start == 0 {
            return Err(RayError::InvalidSymbolic("nodes are numbered from 1".into()));
        }
        Ok(Symbolic {
            start,
            letters,
            side: PhantomData,
        })
    }

    pub fn kind(&self) -> Kind {
        S::KIND
    }

    /// Local (co)circuit at node `k`; empty outside the support.
    pub fn letter(&self, k: usize) -> Set {
        if k < self.start {
            0
        } else {
            *self.letters.get(k - self.start)
        }
    }

    /// First node from which letters and templates repeat, and the period.
    pub fn window(&self, r: &RaySpec) -> (usize, usize) {
        let t = (self.start + self.letters.prefix().len())
            .max(r.prefix.len() + 1)
            .max(self.start + 1)
            .max(2);
        (t, lcm(self.letters.cycle().len(), r.cycle.len()))
    }

    /// Why the object is not a prolonged precircuit (or precocircuit) of `r`.
    pub fn failure(&self, r: &RaySpec) -> Result<Option<String>> {
        let sr = side_ray(r, S::KIND)?;
        let (t, p) = self.window(r);
        for k in self.start..t + p {
            let node = sr.node(k);
            let c = self.letter(k);
            let m = &node.matroid;
            if !set::is_subset(c, m.all()) {
                return Ok(Some(format!("letter at node {k} is not a subset of the node")));
            }
            if !m.is_circuit(c) {
                return Ok(Some(format!("letter {} at node {k} is not a {}", m.ground().show(c), S::KIND)));
            }
            if c & out_bit(node) == 0 {
                return Ok(Some(format!("letter at node {k} does not continue to node {}", k + 1)));
            }
            let uses_in = c & in_bit(node) != 0;
            if k > self.start && !uses_in {
                return Ok(Some(format!("letter at node {k} misses the element shared with node {}", k - 1)));
            }
            if k == self.start && k > 1 && uses_in {
                return Ok(Some(format!("letter at start node {k} uses the element shared with node {}", k - 1)));
            }
        }
        Ok(None)
    }

    pub fn is_valid(&self, r: &RaySpec) -> Result<bool> {
        Ok(self.failure(r)?.is_none())
    }

    /// The underlying set: every real element of every letter.
    pub fn underlying(&self, r: &RaySpec) -> SymbolicSet {
        let (t, p) = self.window(r);
        let masks: Vec<Set> = (1..t + p).map(|k| self.letter(k) & real_mask(r, k)).collect();
        SymbolicSet::from_window(masks, t - 1)
    }

    /// Text form over template labels:
    ///
    /// ```text
    /// start: 1
    /// prefix: [[a, b0, c0, z]]
    /// cycle: [[a, b1, c1, z]]
    /// ```
    pub fn render(&self, r: &RaySpec) -> String {
        let letters = |range: std::ops::Range<usize>| -> Vec<Vec<String>> {
            range
                .map(|i| {
                    let g = r.node(self.start + i).matroid.ground();
                    g.names(*self.letters.get(i)).into_iter().map(str::to_string).collect()
                })
                .collect()
        };
        let u = self.letters.prefix().len();
        let v = self.letters.cycle().len();
        format!(
            "start: {}\nprefix: {}\ncycle: {}\n",
            self.start,
            tdm_core::text::nested_list(&letters(0..u)),
            tdm_core::text::nested_list(&letters(u..u + v))
        )
    }

    /// One-line form `{start: n, prefix: [...], cycle: [...]}`.
    pub fn render_inline(&self, r: &RaySpec) -> String {
        let body: Vec<String> = self.render(r).lines().map(str::to_string).collect();
        format!("{{{}}}", body.join(", "))
    }

    /// Reads the text form of [`Symbolic::render`]; letters are resolved
    /// against the template of the node they first occupy.
    pub fn from_entries(
        r: &RaySpec,
        entries: &[tdm_core::text::Entry],
        line: usize,
    ) -> std::result::Result<Self, tdm_core::text::ParseError> {
        use tdm_core::text::{self, ParseError};
        let start = text::number(text::require(entries, "start", line)?)?;
        if start == 0 {
            return Err(ParseError::new(line, "`start` counts nodes from 1"));
        }
        let prefix = match text::find(entries, "prefix") {
            Some(e) => text::nested_token_list(e)?,
            None => Vec::new(),
        };
        let cycle = text::nested_token_list(text::require(entries, "cycle", line)?)?;
        let mut masks = Vec::new();
        for (i, letter) in prefix.iter().chain(&cycle).enumerate() {
            let g = r.node(start + i).matroid.ground();
            masks.push(g.mask(letter.iter()).map_err(|e| ParseError::new(line, e.to_string()))?);
        }
        let cyc = masks.split_off(prefix.len());
        let word = EPWord::new(masks, cyc).map_err(|e| ParseError::new(line, e.to_string()))?;
        Symbolic::new(start, word).map_err(|e| ParseError::new(line, e.to_string()))
    }

    pub fn parse(r: &RaySpec, src: &str) -> std::result::Result<Self, tdm_core::text::ParseError> {
        let doc = tdm_core::text::Doc::parse(src)?;
        Symbolic::from_entries(r, &doc.entries, 1)
    }
}

/// A subset of the ray's real elements: position `i` holds the mask of the
/// real elements of node `i + 1` over its template.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolicSet {
    pub nodes: EPWord<Set>,
}

/// Size of `o ∩ b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinality {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => f.write_str("infinite"),
        }
    }
}

impl SymbolicSet {
    pub fn empty() -> Self {
        SymbolicSet {
            nodes: EPWord::constant(0),
        }
    }

    /// The set with masks `masks[i]` at node `i + 1`, repeating `masks[t..]` forever.
    pub(crate) fn from_window(mut masks: Vec<Set>, t: usize) -> Self {
        let cycle = masks.split_off(t);
        SymbolicSet {
            nodes: EPWord::new(masks, cycle).expect("nonempty period"),
        }
    }

    /// Every real element of the ray.
    pub fn everything(r: &RaySpec) -> Self {
        let t = r.prefix.len() + 2;
        let masks = (1..t + r.cycle.len()).map(|k| real_mask(r, k)).collect();
        SymbolicSet::from_window(masks, t - 1)
    }

    /// A finite set with masks `masks[i]` at node `i + 1`.
    pub fn finite(masks: Vec<Set>) -> Self {
        SymbolicSet {
            nodes: EPWord::new(masks, vec![0]).expect("nonempty cycle"),
        }
    }

    /// Parses ray element names `x_k`.
    pub fn from_labels<S: AsRef<str>>(r: &RaySpec, labels: &[S]) -> Result<Self> {
        let mut masks = Vec::new();
        for l in labels {
            let (k, bit) = locate(r, l.as_ref())?;
            if masks.len() < k {
                masks.resize(k, 0);
            }
            masks[k - 1] |= bit;
        }
        Ok(SymbolicSet::finite(masks))
    }

    /// The set restricted to nodes `1..k`.
    pub fn before(&self, k: usize) -> Self {
        SymbolicSet::finite(self.nodes.take(k - 1))
    }

    /// First node with a nonzero mask, and the lowest bit there.
    pub fn first_element(&self) -> Option<(usize, Set)> {
        let n = self.nodes.window();
        (1..=n).find(|k| self.at(*k) != 0).map(|k| (k, self.at(k) & self.at(k).wrapping_neg()))
    }

    pub fn at(&self, k: usize) -> Set {
        *self.nodes.get(k - 1)
    }

    fn combine(&self, other: &Self, f: impl Fn(Set, Set) -> Set) -> Self {
        SymbolicSet {
            nodes: self.nodes.zip_with(&other.nodes, |a, b| f(*a, *b)),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a & !b)
    }

    pub fn sym_diff(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a ^ b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.cycle() == [0] && self.nodes.prefix().is_empty()
    }

    /// Meets only finitely many node ground sets.
    pub fn is_finite(&self) -> bool {
        self.nodes.cycle() == [0]
    }

    pub fn cardinality(&self) -> Cardinality {
        if self.is_finite() {
            Cardinality::Finite(self.nodes.prefix().iter().map(|m| set::size(*m)).sum())
        } else {
            Cardinality::Infinite
        }
    }

    /// Last node with a nonzero mask, for finite sets.
    pub fn last_node(&self) -> Option<usize> {
        if !self.is_finite() {
            return None;
        }
        Some(self.nodes.prefix().len())
    }

    /// First node from which the masks repeat and the period, jointly with the ray.
    pub fn window(&self, r: &RaySpec) -> (usize, usize) {
        let t = (self.nodes.prefix().len() + 1).max(r.prefix.len() + 1).max(2);
        (t, lcm(self.nodes.cycle().len(), r.cycle.len()))
    }

    /// Element names at nodes `1..=upto`.
    pub fn labels(&self, r: &RaySpec, upto: usize) -> Vec<String> {
        let mut out = Vec::new();
        for k in 1..=upto {
            let g = r.node(k).matroid.ground();
            out.extend(g.names(self.at(k)).into_iter().map(|l| tdm_treeglue::ray::element(l, k)));
        }
        out
    }

    pub fn contains_label(&self, r: &RaySpec, label: &str) -> Result<bool> {
        let (k, bit) = locate(r, label)?;
        Ok(self.at(k) & bit != 0)
    }

    /// Finite sets as `{x_1, y_2}`; infinite ones list the repeating window
    /// followed by `...` and the period.
    pub fn render(&self, r: &RaySpec) -> String {
        if self.is_finite() {
            return format!("{{{}}}", self.labels(r, self.nodes.prefix().len()).join(", "));
        }
        let (t, p) = self.window(r);
        format!(
            "{{{}, ...}} periodic from node {t} with period {p}",
            self.labels(r, t + p - 1).join(", ")
        )
    }
}

/// Node and template bit of the real element `x_k`.
pub fn locate(r: &RaySpec, label: &str) -> Result<(usize, Set)> {
    let unknown = || RayError::UnknownElement(label.to_string());
    let (name, k) = label.rsplit_once('_').ok_or_else(unknown)?;
    let k: usize = k.parse().map_err(|_| unknown())?;
    if k == 0 {
        return Err(unknown());
    }
    let i = r.node(k).matroid.ground().index(name).ok_or_else(unknown)?;
    let bit = set::bit(i);
    if bit & real_mask(r, k) == 0 {
        return Err(unknown());
    }
    Ok((k, bit))
}

/// Labels of a finite set as a sorted set.
pub fn label_set(r: &RaySpec, s: &SymbolicSet) -> BTreeSet<String> {
    s.labels(r, s.last_node().unwrap_or(0)).into_iter().collect()
}

/// `o ∼ b`: the underlying sets meet only finitely many node ground sets.
pub fn tilde(r: &RaySpec, o: &SymbolicRayCircuit, b: &SymbolicRayCocircuit) -> bool {
    o.underlying(r).intersection(&b.underlying(r)).is_finite()
}

pub fn intersection_cardinality(r: &RaySpec, o: &SymbolicRayCircuit, b: &SymbolicRayCocircuit) -> Cardinality {
    o.underlying(r).intersection(&b.underlying(r)).cardinality()
}

/// Positionwise symmetric difference of the underlying sets.
pub fn sym_diff<A: Side, B: Side>(r: &RaySpec, x: &Symbolic<A>, y: &Symbolic<B>) -> SymbolicSet {
    x.underlying(r).sym_diff(&y.underlying(r))
}

/// Validates `x` as a prolonged precircuit of `r`.
pub fn is_omega_circuit(r: &RaySpec, x: &SymbolicRayCircuit) -> Result<bool> {
    x.is_valid(r)
}

/// Validates `b` as a prolonged precocircuit of `r`.
pub fn is_omega_cocircuit(r: &RaySpec, b: &SymbolicRayCocircuit) -> Result<bool> {
    b.is_valid(r)
}
