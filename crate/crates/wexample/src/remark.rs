//! The partition of `M(K4)` into three pairs of non-adjacent edges, and the
//! trichotomy for an element `e` of the third pair against any split of the
//! other two pairs: one side spans `e`, the other cospans `e`, or the split is
//! the pair partition itself.

use tdm_core::fixtures::k4;
use tdm_core::set::{self, Set};
use tdm_core::FiniteMatroid;

use crate::error::{Result, WError};

/// The pairs of elements lying in no common triangle, when they partition the ground set.
pub fn non_adjacent_pairs(m: &FiniteMatroid) -> Result<Vec<Set>> {
    let triangles: Vec<Set> = m.circuits().iter().copied().filter(|c| set::size(*c) == 3).collect();
    let mut pairs = Vec::new();
    for a in 0..m.len() {
        for b in a + 1..m.len() {
            let p = set::bit(a) | set::bit(b);
            if triangles.iter().all(|t| !set::is_subset(p, *t)) {
                pairs.push(p);
            }
        }
    }
    let union = pairs.iter().fold(0, |acc, p| acc | p);
    let disjoint = pairs.iter().map(|p| set::size(*p)).sum::<usize>() == set::size(union);
    if !disjoint || union != m.all() {
        return Err(WError::Precondition("the non-adjacent pairs do not partition the ground set".into()));
    }
    Ok(pairs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemarkCase {
    pub y1: Vec<String>,
    pub y2: Vec<String>,
    pub e: String,
    pub spans: bool,
    pub cospans: bool,
    pub same_partition: bool,
}

impl RemarkCase {
    pub fn holds(&self) -> bool {
        self.spans || self.cospans || self.same_partition
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemarkReport {
    pub pairs: Vec<Vec<String>>,
    pub cases: Vec<RemarkCase>,
}

impl RemarkReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(RemarkCase::holds)
    }

    pub fn count(&self, f: impl Fn(&RemarkCase) -> bool) -> usize {
        self.cases.iter().filter(|c| f(c)).count()
    }

    pub fn render(&self) -> String {
        let pairs: Vec<String> = self.pairs.iter().map(|p| format!("[{}]", p.join(", "))).collect();
        let mut out = format!(
            "pairs: [{}]\ncases: {}\nspans: {}\ncospans: {}\nsame-partition: {}\nfailures: {}\n",
            pairs.join(", "),
            self.cases.len(),
            self.count(|c| c.spans),
            self.count(|c| c.cospans),
            self.count(|c| c.same_partition),
            self.count(|c| !c.holds()),
        );
        for c in self.cases.iter().filter(|c| !c.holds()) {
            out.push_str(&format!("witness: Y1 = [{}], Y2 = [{}], e = {}\n", c.y1.join(", "), c.y2.join(", "), c.e));
        }
        out
    }
}

/// Runs every split `Y1 ∪ Y2` of the union of the pairs other than pair
/// `third` against both elements of pair `third`.
pub fn check_remark(m: &FiniteMatroid, third: usize) -> Result<RemarkReport> {
    let pairs = non_adjacent_pairs(m)?;
    if pairs.len() != 3 || third >= 3 {
        return Err(WError::Precondition(format!("expected three pairs and an index below 3, found {} pairs", pairs.len())));
    }
    let dual = m.dual()?;
    let x3 = pairs[third];
    let others: Vec<Set> = (0..3).filter(|i| *i != third).map(|i| pairs[i]).collect();
    let rest: Vec<usize> = set::elems(others[0] | others[1]).collect();
    let names = |s: Set| m.ground().names(s).into_iter().map(str::to_string).collect::<Vec<_>>();
    let mut cases = Vec::new();
    for mask in 0u32..(1 << rest.len()) {
        let y1 = rest
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(0, |acc, (_, e)| acc | set::bit(*e));
        let y2 = (others[0] | others[1]) & !y1;
        for e in set::elems(x3) {
            cases.push(RemarkCase {
                y1: names(y1),
                y2: names(y2),
                e: m.ground().label(e).to_string(),
                spans: set::contains(m.closure(y1), e),
                cospans: set::contains(dual.closure(y2), e),
                same_partition: (y1 == others[0] && y2 == others[1]) || (y1 == others[1] && y2 == others[0]),
            });
        }
    }
    Ok(RemarkReport {
        pairs: pairs.iter().map(|p| names(*p)).collect(),
        cases,
    })
}

/// [`check_remark`] on `M(K4)` with the last pair as the third: 16 splits against 2 elements.
pub fn verify_parallel_edges_remark() -> Result<RemarkReport> {
    check_remark(&k4(), 2)
}
