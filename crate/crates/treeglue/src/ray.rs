//! Eventually periodic rays of matroids of overlap 1, their finite truncations
//! and the niceness test.
//!
//! A ray is given by template nodes: a finite prefix followed by a cycle that
//! repeats forever. Node `k` (counting from 1) realizes its template by renaming
//! each element `x` to `x_k`. The template's `out` element is identified with the
//! `in` element of node `k + 1`, so the shared element `e(k)` is `{in}_{k+1}`.
//! The `in` element of node 1 has no predecessor and is an ordinary element.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use tdm_core::text::{self, Doc, Entry, ParseError, Value};
use tdm_core::FiniteMatroid;
use tdm_decomp::{glue_tree, MatroidTree};

use crate::error::{GlueError, Result};
use crate::psi::PsiSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayNode {
    pub matroid: FiniteMatroid,
    pub input: String,
    pub output: String,
}

impl RayNode {
    pub fn new(matroid: FiniteMatroid, input: &str, output: &str) -> Result<Self> {
        let node = RayNode {
            matroid,
            input: input.to_string(),
            output: output.to_string(),
        };
        node.validate()?;
        Ok(node)
    }

    fn validate(&self) -> Result<()> {
        let g = self.matroid.ground();
        if self.input == self.output {
            return Err(GlueError::InvalidRay("in and out elements coincide".into()));
        }
        for l in [&self.input, &self.output] {
            if !g.contains(l) {
                return Err(GlueError::InvalidRay(format!("`{l}` is not an element of its node")));
            }
        }
        for l in g.labels() {
            if l.contains('_') || l.contains('!') {
                return Err(GlueError::InvalidRay(format!("template label `{l}` uses `_` or `!`")));
            }
        }
        Ok(())
    }

    fn input_index(&self) -> usize {
        self.matroid.ground().index(&self.input).expect("validated node")
    }

    fn output_index(&self) -> usize {
        self.matroid.ground().index(&self.output).expect("validated node")
    }

    /// `in` and `out` form a circuit: they are parallel.
    pub fn in_out_parallel(&self) -> bool {
        let pair = tdm_core::set::bit(self.input_index()) | tdm_core::set::bit(self.output_index());
        self.matroid.is_circuit(pair)
    }

    /// `in` and `out` form a cocircuit: they are in series.
    pub fn in_out_series(&self) -> Result<bool> {
        let pair = tdm_core::set::bit(self.input_index()) | tdm_core::set::bit(self.output_index());
        Ok(self.matroid.dual()?.is_circuit(pair))
    }

    pub fn dual(&self) -> Result<RayNode> {
        Ok(RayNode {
            matroid: self.matroid.dual()?,
            input: self.input.clone(),
            output: self.output.clone(),
        })
    }
}

/// A ray of matroids: `prefix` nodes, then `cycle` repeated forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaySpec {
    pub prefix: Vec<RayNode>,
    pub cycle: Vec<RayNode>,
}

/// Name of element `name` of node `k`.
pub fn element(name: &str, k: usize) -> String {
    format!("{name}_{k}")
}

impl RaySpec {
    pub fn new(prefix: Vec<RayNode>, cycle: Vec<RayNode>) -> Result<Self> {
        let r = RaySpec { prefix, cycle };
        r.validate()?;
        Ok(r)
    }

    /// A purely periodic ray.
    pub fn periodic(cycle: Vec<RayNode>) -> Result<Self> {
        RaySpec::new(Vec::new(), cycle)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cycle.is_empty() {
            return Err(GlueError::InvalidRay("the cycle must be nonempty".into()));
        }
        for n in self.prefix.iter().chain(&self.cycle) {
            n.validate()?;
        }
        Ok(())
    }

    /// Template of node `k`, counting from 1.
    pub fn node(&self, k: usize) -> &RayNode {
        assert!(k >= 1, "nodes are numbered from 1");
        let i = k - 1;
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The shared element `e(k)` of nodes `k` and `k + 1`.
    pub fn edge_element(&self, k: usize) -> String {
        element(&self.node(k + 1).input, k + 1)
    }

    /// Node `k` with its elements renamed to their ray names.
    pub fn realize(&self, k: usize) -> Result<FiniteMatroid> {
        let node = self.node(k);
        let map: BTreeMap<String, String> = node
            .matroid
            .ground()
            .labels()
            .iter()
            .map(|l| {
                let to = if *l == node.output {
                    self.edge_element(k)
                } else {
                    element(l, k)
                };
                (l.clone(), to)
            })
            .collect();
        Ok(node.matroid.relabel(&map)?)
    }

    /// Nodes `1..=k` as a tree of matroids with ids `t1..tk`, together with the
    /// boundary spec that leaves `e(k)` open towards the end.
    pub fn truncation(&self, k: usize, end_permitted: bool) -> Result<(MatroidTree, PsiSpec)> {
        if k == 0 {
            return Err(GlueError::InvalidRay("truncation depth must be at least 1".into()));
        }
        let nodes: Vec<String> = (1..=k).map(|i| format!("t{i}")).collect();
        let edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
        let labels: Vec<String> = (1..k).map(|i| self.edge_element(i)).collect();
        let mut ms = Vec::with_capacity(k);
        for i in 1..=k {
            ms.push(self.realize(i)?);
        }
        let t = MatroidTree::new(nodes, edges, labels, ms)?;
        Ok((t, PsiSpec::with(self.edge_element(k), end_permitted)))
    }

    /// The finite matroid of the first `k` nodes: the 2-sum of the truncation
    /// with the open element `e(k)` deleted.
    pub fn finite_part(&self, k: usize) -> Result<FiniteMatroid> {
        let (mut t, psi) = self.truncation(k, false)?;
        let open = psi.open.keys().next().expect("one open element").clone();
        let last = t.len() - 1;
        let m = &t.matroids[last];
        let d = m.ground().mask([open.as_str()])?;
        t.matroids[last] = m.delete(d)?;
        Ok(glue_tree(&t)?)
    }

    pub fn dual(&self) -> Result<RaySpec> {
        Ok(RaySpec {
            prefix: self.prefix.iter().map(RayNode::dual).collect::<Result<_>>()?,
            cycle: self.cycle.iter().map(RayNode::dual).collect::<Result<_>>()?,
        })
    }

    /// Why the ray is not nice, or `None` when it is.
    ///
    /// A phantom precircuit either runs into a loop at a shared element or has
    /// a tail whose local circuits are all `{in, out}`, which on a periodic ray
    /// means `in` and `out` are parallel in every cycle node. Dually for phantom
    /// precocircuits with coloops and series pairs.
    pub fn niceness_failure(&self) -> Result<Option<String>> {
        self.validate()?;
        let nodes = self.prefix.len() + self.cycle.len();
        for k in 1..=nodes {
            let node = self.node(k);
            let mut shared = vec![(node.output_index(), &node.output)];
            if k > 1 {
                shared.push((node.input_index(), &node.input));
            }
            for (i, l) in shared {
                if node.matroid.is_loop(i) {
                    return Ok(Some(format!("`{l}` is a loop of template node {k}")));
                }
                if node.matroid.is_coloop(i) {
                    return Ok(Some(format!("`{l}` is a coloop of template node {k}")));
                }
            }
        }
        if self.cycle.iter().all(RayNode::in_out_parallel) {
            return Ok(Some("in and out are parallel in every cycle node".into()));
        }
        let mut series = true;
        for n in &self.cycle {
            series &= n.in_out_series()?;
        }
        if series {
            return Ok(Some("in and out are in series in every cycle node".into()));
        }
        Ok(None)
    }

    pub fn is_nice(&self) -> Result<bool> {
        Ok(self.niceness_failure()?.is_none())
    }
}

pub fn is_nice_ray(r: &RaySpec) -> Result<bool> {
    r.is_nice()
}

fn node_block(n: &RayNode) -> String {
    let inline = text::inline_matroid(&n.matroid);
    format!("{}, in: {}, out: {}}}", &inline[..inline.len() - 1], n.input, n.output)
}

/// Text form:
///
/// ```text
/// prefix: [{elements: [...], circuits: [...], in: a, out: z}]
/// cycle: [{elements: [...], circuits: [...], in: a, out: z}]
/// ```
pub fn write_ray(r: &RaySpec) -> String {
    let mut out = String::new();
    for (key, nodes) in [("prefix", &r.prefix), ("cycle", &r.cycle)] {
        let blocks: Vec<String> = nodes.iter().map(node_block).collect();
        let _ = writeln!(out, "{key}: [{}]", blocks.join(", "));
    }
    out
}

fn nodes_from(entry: Option<&Entry>) -> std::result::Result<Vec<RayNode>, ParseError> {
    let Some(entry) = entry else {
        return Ok(Vec::new());
    };
    let items = entry
        .value
        .as_list()
        .ok_or_else(|| ParseError::new(entry.line, format!("`{}` must be a list of nodes", entry.key)))?;
    let mut out = Vec::new();
    for item in items {
        let Value::Map(fields) = item else {
            return Err(ParseError::new(entry.line, "each node must be a map"));
        };
        let m = text::matroid_from_entries(fields, entry.line)?;
        let input = text::single_token(text::require(fields, "in", entry.line)?)?;
        let output = text::single_token(text::require(fields, "out", entry.line)?)?;
        out.push(RayNode::new(m, input, output).map_err(|e| ParseError::new(entry.line, e.to_string()))?);
    }
    Ok(out)
}

pub fn ray_from_entries(entries: &[Entry], line: usize) -> std::result::Result<RaySpec, ParseError> {
    let prefix = nodes_from(text::find(entries, "prefix"))?;
    let cycle = nodes_from(Some(text::require(entries, "cycle", line)?))?;
    RaySpec::new(prefix, cycle).map_err(|e| ParseError::new(line, e.to_string()))
}

pub fn parse_ray(src: &str) -> std::result::Result<RaySpec, ParseError> {
    let doc = Doc::parse(src)?;
    ray_from_entries(&doc.entries, 1)
}
