//! Bitmask subsets of a ground set of at most 64 elements.

use std::cmp::Ordering;

/// A subset of a ground set, one bit per element index.
pub type Set = u64;

pub const MAX_GROUND: usize = 64;

#[inline]
pub fn bit(i: usize) -> Set {
    1u64 << i
}

#[inline]
pub fn contains(s: Set, i: usize) -> bool {
    s & bit(i) != 0
}

#[inline]
pub fn is_subset(a: Set, b: Set) -> bool {
    a & !b == 0
}

#[inline]
pub fn size(s: Set) -> usize {
    s.count_ones() as usize
}

/// Mask of the first `n` indices.
#[inline]
pub fn full(n: usize) -> Set {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Element indices of `s` in increasing order.
pub fn elems(s: Set) -> Elems {
    Elems(s)
}

pub struct Elems(Set);

impl Iterator for Elems {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// All subsets of `s`, in increasing numeric order, starting with the empty set.
pub fn subsets(s: Set) -> Subsets {
    Subsets {
        whole: s,
        next: Some(0),
    }
}

pub struct Subsets {
    whole: Set,
    next: Option<Set>,
}

impl Iterator for Subsets {
    type Item = Set;
    fn next(&mut self) -> Option<Set> {
        let cur = self.next?;
        self.next = if cur == self.whole {
            None
        } else {
            Some(cur.wrapping_sub(self.whole) & self.whole)
        };
        Some(cur)
    }
}

/// Lexicographic comparison of the sorted index lists of two sets.
pub fn lex_cmp(a: Set, b: Set) -> Ordering {
    let d = a ^ b;
    if d == 0 {
        return Ordering::Equal;
    }
    let i = d.trailing_zeros();
    let higher = if i == 63 { 0 } else { !0u64 << (i + 1) };
    let a_has = a & (1u64 << i) != 0;
    let other = if a_has { b } else { a };
    // The set without `i` either ends here (a proper prefix) or continues with a larger index.
    let other_ends = other & higher == 0;
    if a_has != other_ends {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Sorts a family lexicographically and removes duplicates.
pub fn sort_family(family: &mut Vec<Set>) {
    family.sort_by(|a, b| lex_cmp(*a, *b));
    family.dedup();
}

/// Inclusion-minimal members of a family (sorted, deduplicated).
pub fn minimal_members(family: &[Set]) -> Vec<Set> {
    let mut by_size: Vec<Set> = family.to_vec();
    by_size.sort_by_key(|s| (size(*s), *s));
    by_size.dedup();
    let mut out: Vec<Set> = Vec::new();
    for s in by_size {
        if !out.iter().any(|m| is_subset(*m, s)) {
            out.push(s);
        }
    }
    sort_family(&mut out);
    out
}

/// True when no member of the family is a subset of another.
pub fn is_antichain(family: &[Set]) -> bool {
    family
        .iter()
        .enumerate()
        .all(|(i, a)| family.iter().skip(i + 1).all(|b| !is_subset(*a, *b) && !is_subset(*b, *a)))
}

/// Re-indexes `s` onto the elements of `keep`, packing them to the low bits.
pub fn compress(s: Set, keep: Set) -> Set {
    let mut out = 0;
    for (j, i) in elems(keep).enumerate() {
        if contains(s, i) {
            out |= bit(j);
        }
    }
    out
}

/// Inverse of [`compress`]: spreads the low bits of `s` onto the elements of `keep`.
pub fn expand(s: Set, keep: Set) -> Set {
    let mut out = 0;
    for (j, i) in elems(keep).enumerate() {
        if contains(s, j) {
            out |= bit(i);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_list(s: Set) -> Vec<usize> {
        elems(s).collect()
    }

    #[test]
    fn lex_matches_list_order() {
        for a in 0..64u64 {
            for b in 0..64u64 {
                assert_eq!(lex_cmp(a, b), sorted_list(a).cmp(&sorted_list(b)), "{a} {b}");
            }
        }
    }

    #[test]
    fn subsets_enumerates_all() {
        let s = 0b1011_0100;
        let subs: Vec<Set> = subsets(s).collect();
        assert_eq!(subs.len(), 16);
        assert!(subs.iter().all(|x| is_subset(*x, s)));
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn compress_expand_roundtrip() {
        let keep = 0b1101_0010;
        for s in subsets(keep) {
            assert_eq!(expand(compress(s, keep), keep), s);
        }
    }

    #[test]
    fn minimal_members_drops_supersets() {
        let fam = vec![0b011, 0b001, 0b110, 0b111];
        assert_eq!(minimal_members(&fam), vec![0b001, 0b110]);
    }
}
