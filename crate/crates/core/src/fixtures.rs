//! Small named matroids and graph families used by tests, the CLI and the acceptance suite.

use std::collections::BTreeSet;

use crate::graph::Graph;
use crate::matroid::FiniteMatroid;

/// K4 with vertices 1..4; edge `uv` is labelled `"{u}{v}"`.
pub fn k4_graph() -> Graph {
    let mut g = Graph::new(4);
    for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        g.add_edge(u, v, format!("{}{}", u + 1, v + 1));
    }
    g
}

pub fn k4() -> FiniteMatroid {
    k4_graph().cycle_matroid().expect("K4 is a valid graph")
}

/// The cycle graph C_n with edges `e1..en`.
pub fn cycle_graph(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n, format!("e{}", i + 1));
    }
    g
}

/// M(C_n): a single circuit on `e1..en`.
pub fn cycle(n: usize) -> FiniteMatroid {
    cycle_graph(n).cycle_matroid().expect("cycle graph is valid")
}

pub fn u13() -> FiniteMatroid {
    FiniteMatroid::uniform(1, &["a", "b", "c"]).expect("valid uniform matroid")
}

/// Two copies of K4 glued along the edge `01`, which is then removed.
/// Edges are labelled `"{u}{v}"` over vertices 0..5.
pub fn k4_k4_graph() -> Graph {
    Graph::from_pairs(
        6,
        &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (1, 4), (1, 5), (4, 5)],
    )
}

pub fn k4_two_sum_k4() -> FiniteMatroid {
    k4_k4_graph().cycle_matroid().expect("glued graph is valid")
}

/// The 4-cycle glued to another 4-cycle along one edge, which is removed: a 6-cycle.
pub fn c4_two_sum_c4() -> FiniteMatroid {
    cycle(6)
}

/// Three copies of K4 in a chain, glued along edges `01` and `23`, both removed.
pub fn k4_chain3_graph() -> Graph {
    Graph::from_pairs(
        8,
        &[
            (0, 4), (0, 5), (1, 4), (1, 5), (4, 5),
            (0, 2), (0, 3), (1, 2), (1, 3),
            (2, 6), (2, 7), (3, 6), (3, 7), (6, 7),
        ],
    )
}

/// Isomorphism classes of simple 2-connected graphs with at most `max_edges` edges,
/// each on vertices `0..n` with edges labelled `"{u}{v}"`, ordered by vertex count
/// and then by canonical edge list.
///
/// Every such graph has an ear decomposition starting from a cycle, so the classes
/// are generated by adding ears to cycles.
pub fn two_connected_graphs(max_edges: usize) -> Vec<Graph> {
    let mut seen: BTreeSet<(usize, Vec<(usize, usize)>)> = BTreeSet::new();
    let mut stack = Vec::new();
    for k in 3..=max_edges {
        let edges: Vec<(usize, usize)> = (0..k).map(|i| (i.min((i + 1) % k), i.max((i + 1) % k))).collect();
        let key = (k, canonical_edges(k, &edges));
        if seen.insert(key.clone()) {
            stack.push(key);
        }
    }
    while let Some((n, edges)) = stack.pop() {
        for u in 0..n {
            for v in (u + 1)..n {
                for len in 1..=(max_edges - edges.len().min(max_edges)) {
                    if len == 1 && edges.contains(&(u, v)) {
                        continue;
                    }
                    let mut e = edges.clone();
                    let mut prev = u;
                    for k in 0..len - 1 {
                        e.push((prev.min(n + k), prev.max(n + k)));
                        prev = n + k;
                    }
                    e.push((prev.min(v), prev.max(v)));
                    let m = n + len - 1;
                    let key = (m, canonical_edges(m, &e));
                    if seen.insert(key.clone()) {
                        stack.push(key);
                    }
                }
            }
        }
    }
    seen.into_iter().map(|(n, e)| Graph::from_pairs(n, &e)).collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

// Least sorted edge list over relabellings that list vertices by non-increasing degree.
fn canonical_edges(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut deg = vec![0usize; n];
    for (u, v) in edges {
        deg[*u] += 1;
        deg[*v] += 1;
    }
    let deg = &deg[..];
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        n: usize,
        edges: &[(usize, usize)],
        deg: &[usize],
        order: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut Option<Vec<(usize, usize)>>,
    ) {
        if order.len() == n {
            let mut pos = vec![0; n];
            for (i, v) in order.iter().enumerate() {
                pos[*v] = i;
            }
            let mut e: Vec<(usize, usize)> = edges
                .iter()
                .map(|(u, v)| {
                    let (a, b) = (pos[*u], pos[*v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            e.sort();
            if best.as_ref().map_or(true, |b| e < *b) {
                *best = Some(e);
            }
            return;
        }
        let want = (0..n).filter(|v| !used[*v]).map(|v| deg[v]).max().unwrap_or(0);
        for v in 0..n {
            if used[v] || deg[v] != want {
                continue;
            }
            used[v] = true;
            order.push(v);
            rec(n, edges, deg, order, used, best);
            order.pop();
            used[v] = false;
        }
    }
    rec(n, edges, deg, &mut order, &mut used, &mut best);
    best.unwrap_or_default()
}

/// Fixture matroids: every simple 2-connected graph with at most 7 edges,
/// plus U_{1,3}, M(K4) and M(C4)..M(C6), each with a name.
pub fn fixture_set() -> Vec<(String, FiniteMatroid)> {
    let mut out = vec![
        ("U13".to_string(), u13()),
        ("K4".to_string(), k4()),
        ("C4".to_string(), cycle(4)),
        ("C5".to_string(), cycle(5)),
        ("C6".to_string(), cycle(6)),
    ];
    for g in two_connected_graphs(7) {
        let name = format!(
            "G{}:{}",
            g.vertex_count(),
            g.edges().iter().map(|e| e.2.as_str()).collect::<Vec<_>>().join(",")
        );
        out.push((name, g.cycle_matroid().expect("graph matroid")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_labels() {
        let m = k4();
        assert_eq!(m.ground().labels(), &["12", "13", "14", "23", "24", "34"]);
        assert_eq!(m.circuits().len(), 7);
    }

    #[test]
    fn small_two_connected_counts() {
        // Simple 2-connected graphs by edge count: 3 -> C3; 4 -> C4; 5 -> C5, K4-e;
        // 6 -> C6, K4, K_{2,3}, and C5 plus a chord.
        let gs = two_connected_graphs(6);
        let by_m = |m: usize| gs.iter().filter(|g| g.edge_count() == m).count();
        assert_eq!(by_m(3), 1);
        assert_eq!(by_m(4), 1);
        assert_eq!(by_m(5), 2);
        assert_eq!(by_m(6), 4);
    }

    #[test]
    fn glued_k4s_have_22_cycles() {
        assert_eq!(k4_two_sum_k4().circuits().len(), 22);
    }
}
