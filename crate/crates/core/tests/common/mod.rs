//! Brute-force oracles and the seeded instance corpus shared by the
//! integration suites.
//!
//! The oracles deliberately avoid the library's algorithms: reachability is
//! an iterated bitmask closure (not a lowlink search), articulation points
//! come from per-vertex removal and component counting (not a DFS tree).
//! Graphs here stay at or below 64 vertices.

#![allow(dead_code)] // each test target uses its own slice of this module

use sbss::graph::{Digraph, UndirectedView};
use sbss::instances::gen_random_sb;

/// Reflexive-transitive closure over mask adjacency: `reach[v]` is the set
/// of vertices reachable from `v`, including `v` itself.
pub fn reach_closure(n: usize, step: &[u64]) -> Vec<u64> {
    let mut reach: Vec<u64> = (0..n).map(|v| step[v] | (1u64 << v)).collect();
    loop {
        let mut changed = false;
        for v in 0..n {
            let mut acc = reach[v];
            let mut bits = reach[v];
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                acc |= reach[w];
            }
            if acc != reach[v] {
                reach[v] = acc;
                changed = true;
            }
        }
        if !changed {
            return reach;
        }
    }
}

fn out_masks(g: &Digraph) -> Vec<u64> {
    let mut step = vec![0u64; g.n()];
    for a in g.arcs() {
        step[a.tail.index()] |= 1u64 << a.head.index();
    }
    step
}

/// Component id per vertex by mutual reachability, numbered by smallest
/// contained vertex — the same numbering contract the library promises.
pub fn oracle_scc_ids(g: &Digraph) -> Vec<usize> {
    let n = g.n();
    let reach = reach_closure(n, &out_masks(g));
    let mut ids = vec![usize::MAX; n];
    let mut count = 0usize;
    for v in 0..n {
        if ids[v] != usize::MAX {
            continue;
        }
        for w in v..n {
            if reach[v] & (1u64 << w) != 0 && reach[w] & (1u64 << v) != 0 {
                ids[w] = count;
            }
        }
        count += 1;
    }
    ids
}

pub fn oracle_scc_count(g: &Digraph) -> usize {
    oracle_scc_ids(g).iter().copied().max().map_or(0, |m| m + 1)
}

pub fn oracle_is_strongly_connected(g: &Digraph) -> bool {
    g.n() >= 1 && oracle_scc_count(g) == 1
}

/// Undirected adjacency masks straight from the arc list (independent of
/// the library's `underlying`).
pub fn und_masks(g: &Digraph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n()];
    for a in g.arcs() {
        let (t, h) = a.endpoints();
        adj[t] |= 1u64 << h;
        adj[h] |= 1u64 << t;
    }
    adj
}

pub fn view_masks(u: &UndirectedView) -> Vec<u64> {
    let mut adj = vec![0u64; u.n()];
    for &(a, b) in u.edges() {
        adj[a.index()] |= 1u64 << b.index();
        adj[b.index()] |= 1u64 << a.index();
    }
    adj
}

/// Connected components of mask adjacency, optionally ignoring one vertex.
pub fn component_count(n: usize, adj: &[u64], skip: Option<usize>) -> usize {
    let mut seen = vec![false; n];
    if let Some(s) = skip {
        seen[s] = true;
    }
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            let mut bits = adj[v];
            if let Some(s) = skip {
                bits &= !(1u64 << s);
            }
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// A vertex is an articulation point iff its removal increases the number
/// of connected components.
pub fn oracle_articulation_points(n: usize, adj: &[u64]) -> Vec<usize> {
    let base = component_count(n, adj, None);
    (0..n)
        .filter(|&v| component_count(n, adj, Some(v)) > base)
        .collect()
}

pub fn oracle_is_biconnected(n: usize, adj: &[u64]) -> bool {
    n >= 1 && component_count(n, adj, None) == 1 && oracle_articulation_points(n, adj).is_empty()
}

pub fn oracle_is_strongly_biconnected(g: &Digraph) -> bool {
    oracle_is_strongly_connected(g) && oracle_is_biconnected(g.n(), &und_masks(g))
}

/// Strong articulation points by definition: removing the vertex leaves
/// more than one mutual-reachability class among the others.
pub fn oracle_strong_articulation_points(g: &Digraph) -> Vec<usize> {
    let n = g.n();
    let mut result = Vec::new();
    for v in 0..n {
        let keep: Vec<usize> = (0..n).filter(|&w| w != v).collect();
        let mut step = vec![0u64; keep.len()];
        let mut local = vec![usize::MAX; n];
        for (li, &w) in keep.iter().enumerate() {
            local[w] = li;
        }
        for a in g.arcs() {
            let (t, h) = a.endpoints();
            if t != v && h != v {
                step[local[t]] |= 1u64 << local[h];
            }
        }
        let reach = reach_closure(keep.len(), &step);
        let mut classes = 0;
        let mut assigned = vec![false; keep.len()];
        for a in 0..keep.len() {
            if assigned[a] {
                continue;
            }
            classes += 1;
            for b in a..keep.len() {
                if reach[a] & (1u64 << b) != 0 && reach[b] & (1u64 << a) != 0 {
                    assigned[b] = true;
                }
            }
        }
        if classes > 1 {
            result.push(v);
        }
    }
    result
}

// ---------------------------------------------------------------------------
// Seeded corpus
// ---------------------------------------------------------------------------

/// 200 strongly biconnected instances, 20 per n for n in 3..=12, arc counts
/// spread from n (a bare cycle) up to the full n(n-1).
pub fn sb_corpus() -> Vec<Digraph> {
    let mut out = Vec::new();
    for n in 3..=12usize {
        let max_m = n * (n - 1);
        for i in 0..20usize {
            let m = n + (max_m - n) * i / 19;
            let seed = (n * 1000 + i) as u64;
            out.push(gen_random_sb(n, m, seed).expect("corpus bounds are valid"));
        }
    }
    out
}

/// 100 strongly biconnected instances with at most 18 arcs, small enough for
/// the exact searches: 20 per n for n in 4..=8.
pub fn oracle_corpus() -> Vec<Digraph> {
    let mut out = Vec::new();
    for n in 4..=8usize {
        let max_m = (n * (n - 1)).min(18);
        for i in 0..20usize {
            let m = n + (max_m - n) * i / 19;
            let seed = (40_000 + n * 100 + i) as u64;
            out.push(gen_random_sb(n, m, seed).expect("corpus bounds are valid"));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Exhaustive families
// ---------------------------------------------------------------------------

/// All ordered non-loop pairs, lexicographic.
pub fn directed_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (0..n).map(move |w| (u, w)))
        .filter(|&(u, w)| u != w)
        .collect()
}

/// All unordered pairs, lexicographic.
pub fn undirected_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |w| (u, w)))
        .collect()
}

/// Every subset of `slots` as a digraph on `n` vertices.
pub fn digraphs_over(n: usize, slots: &[(usize, usize)]) -> impl Iterator<Item = Digraph> + '_ {
    assert!(slots.len() < 31, "family too large to enumerate");
    (0u32..1u32 << slots.len()).map(move |mask| {
        let arcs = slots
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &p)| p);
        Digraph::new(n, arcs).expect("slots are valid arcs")
    })
}

/// Every subset of `slots` as an undirected view on `n` vertices.
pub fn views_over(
    n: usize,
    slots: &[(usize, usize)],
) -> impl Iterator<Item = UndirectedView> + '_ {
    assert!(slots.len() < 31, "family too large to enumerate");
    (0u32..1u32 << slots.len()).map(move |mask| {
        let edges = slots
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &p)| p);
        UndirectedView::from_edges(n, edges).expect("slots are valid edges")
    })
}

/// Fixed 12-arc slot pool for the n = 5, 6 directed families: both rotation
/// directions of the Hamiltonian cycle, padded with short chords.
pub fn directed_pool_12(n: usize) -> Vec<(usize, usize)> {
    assert!(n >= 4);
    let mut slots: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    slots.extend((0..n).map(|i| ((i + 1) % n, i)));
    let mut skip = 2;
    while slots.len() < 12 {
        for i in 0..n {
            if slots.len() == 12 {
                break;
            }
            let arc = (i, (i + skip) % n);
            if !slots.contains(&arc) {
                slots.push(arc);
            }
        }
        skip += 1;
    }
    slots.truncate(12);
    slots
}
