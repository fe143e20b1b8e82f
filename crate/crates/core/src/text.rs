//! Line-oriented `key: value` documents with bracketed lists and braced maps.
//!
//! ```text
//! elements: [a, b, c]
//! circuits: [[a, b], [a, c], [b, c]]
//! ```
//!
//! Tokens are runs of characters other than whitespace and `[]{},:#`; `#`
//! starts a comment running to the end of the line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::matroid::{FiniteMatroid, GroundSet};
use crate::set;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Token(String),
    List(Vec<Value>),
    Map(Vec<Entry>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: Value,
    pub line: usize,
}

impl Value {
    pub fn as_token(&self) -> Option<&str> {
        match self {
            Value::Token(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Value]> {
        match self {
            Value::List(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_map(&self) -> Option<&[Entry]> {
        match self {
            Value::Map(v) => Some(v),
            _ => None,
        }
    }
}

/// A parsed document: the top-level entries in file order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Doc {
    pub entries: Vec<Entry>,
}

impl Doc {
    pub fn parse(src: &str) -> Result<Doc, ParseError> {
        let mut p = Parser::new(src);
        let entries = p.entries(None)?;
        Ok(Doc { entries })
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        find(&self.entries, key)
    }

    pub fn require(&self, key: &str) -> Result<&Entry, ParseError> {
        self.get(key)
            .ok_or_else(|| ParseError::new(0, format!("missing field `{key}`")))
    }
}

pub fn find<'a>(entries: &'a [Entry], key: &str) -> Option<&'a Entry> {
    entries.iter().find(|e| e.key == key)
}

pub fn require<'a>(entries: &'a [Entry], key: &str, line: usize) -> Result<&'a Entry, ParseError> {
    find(entries, key).ok_or_else(|| ParseError::new(line, format!("missing field `{key}`")))
}

/// Reads a `[a, b, c]` value as a list of tokens.
pub fn token_list(entry: &Entry) -> Result<Vec<String>, ParseError> {
    tokens_of(&entry.value, entry.line, &entry.key)
}

pub fn tokens_of(v: &Value, line: usize, field: &str) -> Result<Vec<String>, ParseError> {
    let items = v
        .as_list()
        .ok_or_else(|| ParseError::new(line, format!("field `{field}` must be a list")))?;
    items
        .iter()
        .map(|i| {
            i.as_token()
                .map(str::to_string)
                .ok_or_else(|| ParseError::new(line, format!("field `{field}` must hold labels")))
        })
        .collect()
}

/// Reads a `[[a, b], [c]]` value as a list of token lists.
pub fn nested_token_list(entry: &Entry) -> Result<Vec<Vec<String>>, ParseError> {
    let items = entry
        .value
        .as_list()
        .ok_or_else(|| ParseError::new(entry.line, format!("field `{}` must be a list", entry.key)))?;
    items
        .iter()
        .map(|i| tokens_of(i, entry.line, &entry.key))
        .collect()
}

pub fn single_token(entry: &Entry) -> Result<&str, ParseError> {
    entry
        .value
        .as_token()
        .ok_or_else(|| ParseError::new(entry.line, format!("field `{}` must be a single value", entry.key)))
}

pub fn number(entry: &Entry) -> Result<usize, ParseError> {
    let t = single_token(entry)?;
    t.parse()
        .map_err(|_| ParseError::new(entry.line, format!("field `{}` must be a natural number", entry.key)))
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

const STRUCTURAL: &[char] = &['[', ']', '{', '}', ',', ':', '#'];

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c == '#' {
                while let Some(&c) = self.chars.get(self.pos) {
                    if c == '\n' {
                        break;
                    }
                    self.pos += 1;
                }
            } else if c.is_whitespace() {
                if c == '\n' {
                    self.line += 1;
                }
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.err(format!("expected `{want}`, found end of input"))),
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, msg)
    }

    fn token(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_whitespace() || STRUCTURAL.contains(&c) {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.chars.get(self.pos) {
                Some(c) => self.err(format!("unexpected `{c}`")),
                None => self.err("unexpected end of input"),
            });
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    /// Entries up to `close` (or end of input at top level).
    fn entries(&mut self, close: Option<char>) -> Result<Vec<Entry>, ParseError> {
        let mut out = Vec::new();
        loop {
            match (self.peek(), close) {
                (None, None) => return Ok(out),
                (None, Some(c)) => return Err(self.err(format!("missing `{c}`"))),
                (Some(c), Some(want)) if c == want => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => {}
            }
            let line = self.line;
            let key = self.token()?;
            self.expect(':')?;
            let value = self.value()?;
            if out.iter().any(|e: &Entry| e.key == key) {
                return Err(ParseError::new(line, format!("duplicate field `{key}`")));
            }
            out.push(Entry { key, value, line });
            if close.is_some() && self.peek() == Some(',') {
                self.pos += 1;
            }
        }
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    if self.peek() == Some(']') {
                        self.pos += 1;
                        return Ok(Value::List(items));
                    }
                    items.push(self.value()?);
                    match self.peek() {
                        Some(',') => self.pos += 1,
                        Some(']') => {}
                        Some(c) => return Err(self.err(format!("expected `,` or `]`, found `{c}`"))),
                        None => return Err(self.err("missing `]`")),
                    }
                }
            }
            Some('{') => {
                self.pos += 1;
                Ok(Value::Map(self.entries(Some('}'))?))
            }
            _ => Ok(Value::Token(self.token()?)),
        }
    }
}

/// `[a, b, c]`
pub fn list<S: AsRef<str>>(items: &[S]) -> String {
    let parts: Vec<&str> = items.iter().map(|s| s.as_ref()).collect();
    format!("[{}]", parts.join(", "))
}

/// `[[a, b], [c]]`
pub fn nested_list<S: AsRef<str>>(items: &[Vec<S>]) -> String {
    let parts: Vec<String> = items.iter().map(|i| list(i)).collect();
    format!("[{}]", parts.join(", "))
}

/// Rejects labels that the format cannot carry.
pub fn check_label(label: &str, line: usize) -> Result<(), ParseError> {
    if label.is_empty() || label.chars().any(|c| c.is_whitespace() || STRUCTURAL.contains(&c)) {
        return Err(ParseError::new(line, format!("invalid label `{label}`")));
    }
    Ok(())
}

/// Reads a matroid from the `elements` / `circuits` fields of an entry list.
pub fn matroid_from_entries(entries: &[Entry], line: usize) -> Result<FiniteMatroid, ParseError> {
    let el = require(entries, "elements", line)?;
    let elements = token_list(el)?;
    let ground = GroundSet::new(elements.clone()).map_err(|e| ParseError::new(el.line, e.to_string()))?;
    let circuits = match find(entries, "circuits") {
        Some(c) => nested_token_list(c)?,
        None => Vec::new(),
    };
    let cl = find(entries, "circuits").map(|c| c.line).unwrap_or(line);
    let mut masks = Vec::new();
    for c in &circuits {
        let m = ground
            .mask(c.iter())
            .map_err(|e| ParseError::new(cl, e.to_string()))?;
        masks.push(m);
    }
    FiniteMatroid::new(ground, masks).map_err(|e| ParseError::new(cl, e.to_string()))
}

pub fn parse_matroid(src: &str) -> Result<FiniteMatroid, ParseError> {
    let doc = Doc::parse(src)?;
    matroid_from_entries(&doc.entries, 1)
}

/// Canonical two-line serialization; byte-stable for equal matroids.
pub fn write_matroid(m: &FiniteMatroid) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "elements: {}", list(m.ground().labels()));
    let _ = writeln!(out, "circuits: {}", circuits_field(m));
    out
}

/// `{elements: [...], circuits: [...]}` on one line, for embedding in larger documents.
pub fn inline_matroid(m: &FiniteMatroid) -> String {
    format!(
        "{{elements: {}, circuits: {}}}",
        list(m.ground().labels()),
        circuits_field(m)
    )
}

fn circuits_field(m: &FiniteMatroid) -> String {
    let cs: Vec<Vec<&str>> = m.circuits().iter().map(|c| m.ground().names(*c)).collect();
    nested_list(&cs)
}

/// Renders a family of subsets of `ground` in canonical order.
pub fn family(ground: &GroundSet, fam: &[set::Set]) -> String {
    let mut sorted = fam.to_vec();
    set::sort_family(&mut sorted);
    let cs: Vec<Vec<&str>> = sorted.iter().map(|c| ground.names(*c)).collect();
    nested_list(&cs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let src = "# triangle\nelements: [c, a, b]\ncircuits: [[b, a, c]]\n";
        let m = parse_matroid(src).unwrap();
        let out = write_matroid(&m);
        assert_eq!(out, "elements: [a, b, c]\ncircuits: [[a, b, c]]\n");
        assert_eq!(parse_matroid(&out).unwrap(), m);
    }

    #[test]
    fn nested_maps_parse() {
        let doc = Doc::parse("nodes: {t0: {elements: [a], circuits: []}, t1: {elements: []}}").unwrap();
        let nodes = doc.get("nodes").unwrap().value.as_map().unwrap();
        assert_eq!(nodes.len(), 2);
        assert_eq!(nodes[1].key, "t1");
    }

    #[test]
    fn errors_cite_lines() {
        let err = Doc::parse("elements: [a, b\n\ncircuits: [[a]").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_matroid("elements: [a]\ncircuits: [[z]]").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.msg.contains('z'));
    }

    #[test]
    fn duplicate_keys_rejected() {
        assert!(Doc::parse("a: x\na: y").is_err());
    }
}
