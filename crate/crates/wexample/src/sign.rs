//! Circuits of `W` running to a single end, the `{+, -}` words they induce
//! there, and the choices `τ` that decide which of them are circuits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use tdm_core::text::{self, Doc, Entry, ParseError, Value};
use tdm_raylab::word::{parse_bits, parse_letters, BitWord, EPWord};

use crate::error::{Result, WError};
use crate::graph::{gadget_label, ROOT_EDGE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

pub type SignWord = EPWord<Sign>;

/// Parses `u(v)` over `+` and `-`, for example `-(+-)`.
pub fn parse_signs(s: &str) -> Result<SignWord> {
    let (u, v) = parse_letters(s, &['+', '-'])?;
    let sign = |cs: Vec<char>| cs.into_iter().map(|c| if c == '+' { Sign::Plus } else { Sign::Minus }).collect();
    Ok(EPWord::new(sign(u), sign(v))?)
}

/// Where the two rays of a circuit meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Turn {
    /// Through the edge joining the two root vertices.
    Root,
    /// Through the vertex `(ρ↾(level-1), side)`, using its two edges up to the pair at `level ≥ 1`.
    Below { level: usize, side: u8 },
}

/// A double ray of `W` with both tails converging to the end `end`: it turns at
/// `turn` and from the turning level `n` on uses, between the pairs at levels
/// `n + i` and `n + i + 1` along `end`, the straight edges when letter `i` of
/// `choices` is `+` and the crossing edges when it is `-`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WCircuit {
    pub end: BitWord,
    pub turn: Turn,
    pub choices: SignWord,
}

fn address(end: &BitWord, n: usize) -> String {
    end.take(n).iter().map(|b| if *b == 0 { '0' } else { '1' }).collect()
}

impl WCircuit {
    pub fn new(end: BitWord, turn: Turn, choices: SignWord) -> Result<Self> {
        if end.prefix().iter().chain(end.cycle()).any(|b| *b > 1) {
            return Err(WError::InvalidCircuit("end addresses are words over 0 and 1".into()));
        }
        if let Turn::Below { level, side } = turn {
            if level == 0 || !(1..=2).contains(&side) {
                return Err(WError::InvalidCircuit(format!("turn at level {level}, side {side}")));
            }
        }
        Ok(WCircuit { end, turn, choices })
    }

    /// The level from which the circuit follows `choices`.
    pub fn start(&self) -> usize {
        match self.turn {
            Turn::Root => 0,
            Turn::Below { level, .. } => level,
        }
    }

    /// Edge labels of the circuit within the truncation at depth `d`.
    pub fn edges_up_to(&self, d: usize) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        match self.turn {
            Turn::Root => {
                out.insert(ROOT_EDGE.to_string());
            }
            Turn::Below { level, side } if level <= d => {
                let t = address(&self.end, level);
                out.insert(gadget_label(&t, side, 1));
                out.insert(gadget_label(&t, side, 2));
            }
            Turn::Below { .. } => {}
        }
        for n in self.start()..d {
            let t = address(&self.end, n + 1);
            let pairs = match self.choices.get(n - self.start()) {
                Sign::Plus => [(1, 1), (2, 2)],
                Sign::Minus => [(1, 2), (2, 1)],
            };
            for (x, y) in pairs {
                out.insert(gadget_label(&t, x, y));
            }
        }
        out
    }

    /// `end: ..., turn: ..., choices: ...` on one line; the turn is `root` or `level.side`.
    pub fn render(&self) -> String {
        let turn = match self.turn {
            Turn::Root => "root".to_string(),
            Turn::Below { level, side } => format!("{level}.{side}"),
        };
        format!("{{end: {}, turn: {turn}, choices: {}}}", self.end, self.choices)
    }

    pub fn from_entries(entries: &[Entry], line: usize) -> std::result::Result<Self, ParseError> {
        let field = |k: &str| -> std::result::Result<String, ParseError> {
            Ok(text::single_token(text::require(entries, k, line)?)?.to_string())
        };
        let bad = |e: WError| ParseError::new(line, e.to_string());
        let end = parse_bits(&field("end")?).map_err(|e| bad(e.into()))?;
        let turn = match field("turn")?.as_str() {
            "root" => Turn::Root,
            t => {
                let parsed = t
                    .split_once('.')
                    .and_then(|(l, s)| Some((l.parse().ok()?, s.parse().ok()?)));
                let (level, side) =
                    parsed.ok_or_else(|| ParseError::new(line, format!("turn `{t}` is not `root` or `level.side`")))?;
                Turn::Below { level, side }
            }
        };
        let choices = parse_signs(&field("choices")?).map_err(bad)?;
        WCircuit::new(end, turn, choices).map_err(bad)
    }

    pub fn parse(src: &str) -> std::result::Result<Self, ParseError> {
        let doc = Doc::parse(src)?;
        WCircuit::from_entries(&doc.entries, 1)
    }
}

/// The `{+, -}` word induced towards `rho`: digit `n` is `+` iff both straight
/// edges between the pairs at levels `n` and `n + 1` lie in the circuit.
pub fn induce_sign_word(x: &WCircuit, rho: &BitWord) -> Result<SignWord> {
    if x.end != *rho {
        return Err(WError::NotConvergent {
            wanted: rho.to_string(),
            found: x.end.to_string(),
        });
    }
    Ok(x.choices.prepend(&vec![Sign::Minus; x.start()]))
}

/// What `τ` allows at ends without an assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    AllowAll,
    ForbidAll,
}

/// A choice, for finitely many ends, of a set of sign words closed under
/// finite changes, stored as tail classes, and a policy for all other ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauSpec {
    assignments: BTreeMap<BitWord, BTreeSet<SignWord>>,
    pub default: Policy,
}

impl TauSpec {
    pub fn new(default: Policy) -> Self {
        TauSpec {
            assignments: BTreeMap::new(),
            default,
        }
    }

    /// Allows at `end` exactly the words eventually equal to one of `words`.
    pub fn assign(mut self, end: BitWord, words: &[SignWord]) -> Self {
        self.assignments.insert(end, words.iter().map(EPWord::tail).collect());
        self
    }

    pub fn assignments(&self) -> &BTreeMap<BitWord, BTreeSet<SignWord>> {
        &self.assignments
    }

    pub fn allows(&self, end: &BitWord, word: &SignWord) -> bool {
        match self.assignments.get(end) {
            Some(classes) => classes.contains(&word.tail()),
            None => self.default == Policy::AllowAll,
        }
    }

    pub fn render(&self) -> String {
        let default = match self.default {
            Policy::AllowAll => "allow",
            Policy::ForbidAll => "forbid",
        };
        let ends: Vec<String> = self
            .assignments
            .iter()
            .map(|(end, words)| {
                let words: Vec<String> = words.iter().map(ToString::to_string).collect();
                format!("{{end: {end}, signs: {}}}", text::list(&words))
            })
            .collect();
        format!("default: {default}\nends: [{}]\n", ends.join(", "))
    }

    pub fn parse(src: &str) -> std::result::Result<Self, ParseError> {
        let doc = Doc::parse(src)?;
        let entry = doc.require("default")?;
        let default = match text::single_token(entry)? {
            "allow" => Policy::AllowAll,
            "forbid" => Policy::ForbidAll,
            other => return Err(ParseError::new(entry.line, format!("default must be allow or forbid, not `{other}`"))),
        };
        let mut tau = TauSpec::new(default);
        if let Some(entry) = doc.get("ends") {
            let items = entry
                .value
                .as_list()
                .ok_or_else(|| ParseError::new(entry.line, "`ends` must be a list"))?;
            for item in items {
                let Value::Map(fields) = item else {
                    return Err(ParseError::new(entry.line, "each end must be a map"));
                };
                let bad = |e: tdm_raylab::RayError| ParseError::new(entry.line, e.to_string());
                let end = parse_bits(text::single_token(text::require(fields, "end", entry.line)?)?).map_err(bad)?;
                let words = text::token_list(text::require(fields, "signs", entry.line)?)?
                    .iter()
                    .map(|s| parse_signs(s).map_err(|e| ParseError::new(entry.line, e.to_string())))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                if tau.assignments.contains_key(&end) {
                    return Err(ParseError::new(entry.line, format!("end {end} is assigned twice")));
                }
                tau = tau.assign(end, &words);
            }
        }
        Ok(tau)
    }
}

/// Whether `x` induces a word allowed by `τ` at the one end it converges to.
pub fn is_tau_legal(x: &WCircuit, tau: &TauSpec) -> Result<bool> {
    Ok(tau.allows(&x.end, &induce_sign_word(x, &x.end)?))
}
