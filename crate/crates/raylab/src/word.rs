//! Eventually periodic words `u v v v ...` in canonical form.

use std::fmt;

use crate::error::{RayError, Result};

/// An infinite word `prefix · cycle^ω`.
///
/// Construction canonicalizes: the cycle is replaced by its primitive root and
/// the prefix is shortened as far as possible by rotating the cycle, so two
/// words are equal as infinite sequences iff they are equal as values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EPWord<T> {
    prefix: Vec<T>,
    cycle: Vec<T>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl<T: Clone + Eq> EPWord<T> {
    pub fn new(prefix: Vec<T>, cycle: Vec<T>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(RayError::InvalidWord("the cycle must be nonempty".into()));
        }
        let mut w = EPWord { prefix, cycle };
        w.canonicalize();
        Ok(w)
    }

    /// `cycle^ω`.
    pub fn periodic(cycle: Vec<T>) -> Result<Self> {
        EPWord::new(Vec::new(), cycle)
    }

    /// `x^ω`.
    pub fn constant(x: T) -> Self {
        EPWord {
            prefix: Vec::new(),
            cycle: vec![x],
        }
    }

    fn canonicalize(&mut self) {
        let n = self.cycle.len();
        let root = (1..=n)
            .filter(|d| n % d == 0)
            .find(|d| (0..n).all(|i| self.cycle[i] == self.cycle[i % d]))
            .unwrap_or(n);
        self.cycle.truncate(root);
        while let Some(last) = self.prefix.last() {
            if *last != self.cycle[self.cycle.len() - 1] {
                break;
            }
            self.prefix.pop();
            self.cycle.rotate_right(1);
        }
    }

    pub fn prefix(&self) -> &[T] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[T] {
        &self.cycle
    }

    /// Letter at position `i`, counting from 0.
    pub fn get(&self, i: usize) -> &T {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The first `n` letters.
    pub fn take(&self, n: usize) -> Vec<T> {
        (0..n).map(|i| self.get(i).clone()).collect()
    }

    pub fn map<U: Clone + Eq>(&self, f: impl Fn(&T) -> U) -> EPWord<U> {
        let mut w = EPWord {
            prefix: self.prefix.iter().map(&f).collect(),
            cycle: self.cycle.iter().map(&f).collect(),
        };
        w.canonicalize();
        w
    }

    /// Positionwise combination of two words, aligned on the longer prefix and
    /// the least common multiple of the cycle lengths.
    pub fn zip_with<U: Clone + Eq, V: Clone + Eq>(&self, other: &EPWord<U>, f: impl Fn(&T, &U) -> V) -> EPWord<V> {
        let p = self.prefix.len().max(other.prefix.len());
        let c = lcm(self.cycle.len(), other.cycle.len());
        let at = |i: usize| f(self.get(i), other.get(i));
        let mut w = EPWord {
            prefix: (0..p).map(at).collect(),
            cycle: (p..p + c).map(at).collect(),
        };
        w.canonicalize();
        w
    }

    /// The same word with letter `i` replaced.
    pub fn with_letter(&self, i: usize, x: T) -> Self {
        let n = self.prefix.len().max(i + 1);
        let mut prefix = self.take(n);
        prefix[i] = x;
        let cycle = (n..n + self.cycle.len()).map(|j| self.get(j).clone()).collect();
        let mut w = EPWord { prefix, cycle };
        w.canonicalize();
        w
    }

    /// The word with its first `n` letters removed.
    pub fn drop_front(&self, n: usize) -> Self {
        let prefix = self.prefix.iter().skip(n).cloned().collect();
        let shift = n.saturating_sub(self.prefix.len()) % self.cycle.len();
        let mut cycle = self.cycle.clone();
        cycle.rotate_left(shift);
        let mut w = EPWord { prefix, cycle };
        w.canonicalize();
        w
    }

    /// The word `letters · self`.
    pub fn prepend(&self, letters: &[T]) -> Self {
        let mut prefix = letters.to_vec();
        prefix.extend(self.prefix.iter().cloned());
        let mut w = EPWord {
            prefix,
            cycle: self.cycle.clone(),
        };
        w.canonicalize();
        w
    }

    /// The purely periodic word that agrees with `self` from some point on.
    /// Two words agree eventually iff their tails are equal.
    pub fn tail(&self) -> Self {
        let n = self.cycle.len();
        let mut cycle = self.cycle.clone();
        cycle.rotate_right(self.prefix.len() % n);
        let mut w = EPWord {
            prefix: Vec::new(),
            cycle,
        };
        w.canonicalize();
        w
    }

    pub fn eventually_equal(&self, other: &Self) -> bool {
        self.tail() == other.tail()
    }

    /// Whether `pred` holds at every position from some point on.
    pub fn eventually(&self, pred: impl Fn(&T) -> bool) -> bool {
        self.cycle.iter().all(pred)
    }

    /// Positions of the finitely many letters not covered by [`EPWord::eventually`]
    /// reasoning: the prefix followed by one full cycle.
    pub fn window(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }
}

impl<T: Clone + Eq + fmt::Display> fmt::Display for EPWord<T> {
    /// `u(v)` for the word `u v v v ...`, letters separated by nothing when
    /// each is a single character and by `.` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.prefix.iter().chain(&self.cycle).map(|x| x.to_string()).collect();
        let sep = if strs.iter().all(|s| s.chars().count() == 1) { "" } else { "." };
        let (u, v) = strs.split_at(self.prefix.len());
        write!(f, "{}({})", u.join(sep), v.join(sep))
    }
}

/// A word over `{0, 1}`.
pub type BitWord = EPWord<u8>;

/// Parses `u(v)` over the digits `0` and `1`, for example `1(01)` or `(0)`.
pub fn parse_bits(s: &str) -> Result<BitWord> {
    let (u, v) = parse_letters(s, &['0', '1'])?;
    let digits = |cs: Vec<char>| cs.into_iter().map(|c| c as u8 - b'0').collect();
    EPWord::new(digits(u), digits(v))
}

/// Splits `u(v)` into its prefix and cycle characters, accepting only `alphabet`.
pub fn parse_letters(s: &str, alphabet: &[char]) -> Result<(Vec<char>, Vec<char>)> {
    let bad = || RayError::InvalidWord(format!("`{s}` is not of the form u(v)"));
    let s = s.trim();
    let open = s.find('(').ok_or_else(bad)?;
    let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let (u, v): (Vec<char>, Vec<char>) = (s[..open].chars().collect(), inner.chars().collect());
    if let Some(c) = u.iter().chain(&v).find(|c| !alphabet.contains(c)) {
        return Err(RayError::InvalidWord(format!("unexpected letter `{c}` in `{s}`")));
    }
    if v.is_empty() {
        return Err(RayError::InvalidWord("the cycle must be nonempty".into()));
    }
    Ok((u, v))
}

/// All words over `alphabet` with prefix length at most `max_prefix` and cycle
/// length at most `max_cycle`, each once, in canonical form.
pub fn all_words<T: Clone + Eq + Ord>(alphabet: &[T], max_prefix: usize, max_cycle: usize) -> Vec<EPWord<T>> {
    let mut out = std::collections::BTreeSet::new();
    for p in 0..=max_prefix {
        for c in 1..=max_cycle {
            for letters in tuples(alphabet, p + c) {
                let (u, v) = letters.split_at(p);
                out.insert(EPWord::new(u.to_vec(), v.to_vec()).expect("nonempty cycle"));
            }
        }
    }
    out.into_iter().collect()
}

fn tuples<T: Clone>(alphabet: &[T], n: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                alphabet.iter().map(move |x| {
                    let mut t = t.clone();
                    t.push(x.clone());
                    t
                })
            })
            .collect();
    }
    out
}
