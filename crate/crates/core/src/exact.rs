//! Brute-force exact solvers for desk-scale instances, and a greedy
//! 1-minimality explorer.
//!
//! The searches enumerate k-subsets for k = lower bound, lower bound + 1, ...
//! in lexicographic index order, so the first feasible subset found is both
//! minimum-size and the lexicographically smallest witness of that size.
//! Degree-deficit and suffix-availability pruning keep the enumeration fast
//! at the default cap.

use crate::connectivity::{
    check_strongly_biconnected, is_biconnected, is_connected, is_strongly_biconnected,
    is_strongly_connected,
};
use crate::error::Error;
use crate::graph::{ArcSubset, Digraph, UndirectedView, VertexId};
use crate::Result;

/// Default limit on the number of arcs (or edges) the exact search accepts.
pub const DEFAULT_ARC_CAP: usize = 22;

// Subset predicates run on u64 vertex masks, so the search is limited to 63
// elements regardless of the configured cap.
const HARD_CAP: usize = 63;

/// Outcome of an exact search: the optimum size, a witness achieving it, and
/// how many candidate subsets were tested along the way.
#[derive(Clone, Debug)]
pub struct ExactResult<W> {
    pub optimum_size: usize,
    pub witness: W,
    pub subsets_explored: u64,
}

/// Greedy 1-minimal solution: deleting any single member arc breaks strong
/// biconnectivity. `size / 2n` is reported for exploration, never asserted.
#[derive(Clone, Debug)]
pub struct MinimalityReport {
    pub minimal_solution: ArcSubset,
    pub size: usize,
    pub n: usize,
}

impl MinimalityReport {
    /// Exact ratio as a (numerator, denominator) pair.
    pub fn ratio_parts(&self) -> (usize, usize) {
        (self.size, 2 * self.n)
    }

    pub fn ratio_to_2n(&self) -> f64 {
        self.size as f64 / (2 * self.n) as f64
    }
}

/// Minimum arc subset whose spanning subgraph is strongly biconnected.
pub fn exact_msbss(g: &Digraph) -> Result<ExactResult<ArcSubset>> {
    exact_msbss_capped(g, DEFAULT_ARC_CAP)
}

pub fn exact_msbss_capped(g: &Digraph, cap: usize) -> Result<ExactResult<ArcSubset>> {
    check_cap(g.m(), cap)?;
    check_strongly_biconnected(g)?;
    directed_search(g, DirectedGoal::StronglyBiconnected)
}

/// Minimum arc subset whose spanning subgraph is strongly connected.
pub fn exact_msccs(g: &Digraph) -> Result<ExactResult<ArcSubset>> {
    exact_msccs_capped(g, DEFAULT_ARC_CAP)
}

pub fn exact_msccs_capped(g: &Digraph, cap: usize) -> Result<ExactResult<ArcSubset>> {
    check_cap(g.m(), cap)?;
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    directed_search(g, DirectedGoal::StronglyConnected)
}

/// Minimum undirected edge subset whose spanning subgraph is biconnected.
pub fn exact_2vcss(u: &UndirectedView) -> Result<ExactResult<Vec<(VertexId, VertexId)>>> {
    exact_2vcss_capped(u, DEFAULT_ARC_CAP)
}

pub fn exact_2vcss_capped(
    u: &UndirectedView,
    cap: usize,
) -> Result<ExactResult<Vec<(VertexId, VertexId)>>> {
    check_cap(u.edge_count(), cap)?;
    if !is_connected(u) {
        return Err(Error::NotConnected);
    }
    if !is_biconnected(u) {
        let blocks = crate::connectivity::articulation_points(u)?;
        let v = blocks.articulation_points()[0];
        return Err(Error::HasArticulationPoint { vertex: v });
    }
    undirected_search(u)
}

fn check_cap(size: usize, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_CAP);
    if size > cap {
        return Err(Error::InstanceTooLarge { size, cap });
    }
    Ok(())
}

/// Deletes arcs greedily in descending index order whenever the deletion
/// preserves strong biconnectivity. Feasibility only shrinks as arcs leave,
/// so one pass yields a 1-minimal set.
pub fn minimalize(g: &Digraph, start: &ArcSubset) -> Result<MinimalityReport> {
    let order: Vec<usize> = (0..g.m()).rev().collect();
    minimalize_in_order(g, start, &order)
}

/// [`minimalize`] with a seed-shuffled deletion order, for exploring
/// different minimal solutions of the same instance.
pub fn minimalize_shuffled(g: &Digraph, start: &ArcSubset, seed: u64) -> Result<MinimalityReport> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..g.m()).collect();
    for i in 0..order.len() {
        let j = rng.random_range(i..order.len());
        order.swap(i, j);
    }
    minimalize_in_order(g, start, &order)
}

/// Like [`minimalize`] but tries deletions in the caller's order, which must
/// be a permutation of all arc indices so that 1-minimality still holds.
pub fn minimalize_in_order(
    g: &Digraph,
    start: &ArcSubset,
    order: &[usize],
) -> Result<MinimalityReport> {
    start.check_parent(g)?;
    let mut seen = vec![false; g.m()];
    for &i in order {
        if i >= g.m() || seen[i] {
            return Err(Error::DeletionOrderNotPermutation { m: g.m() });
        }
        seen[i] = true;
    }
    if order.len() != g.m() {
        return Err(Error::DeletionOrderNotPermutation { m: g.m() });
    }
    check_strongly_biconnected(&g.subgraph(start)?)?;

    let mut current = start.clone();
    for &i in order {
        if !current.contains(i) {
            continue;
        }
        current.remove(i);
        if !is_strongly_biconnected(&g.subgraph(&current)?) {
            current.insert(i);
        }
    }
    Ok(MinimalityReport {
        size: current.len(),
        n: g.n(),
        minimal_solution: current,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum DirectedGoal {
    StronglyConnected,
    StronglyBiconnected,
}

fn all_mask(n: usize) -> u64 {
    debug_assert!(n <= HARD_CAP + 1);
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

fn directed_search(g: &Digraph, goal: DirectedGoal) -> Result<ExactResult<ArcSubset>> {
    let n = g.n();
    let m = g.m();
    let tails: Vec<usize> = g.arcs().iter().map(|a| a.tail.index()).collect();
    let heads: Vec<usize> = g.arcs().iter().map(|a| a.head.index()).collect();

    // suffix availability: vertices still coverable by arcs[i..]
    let mut suffix_out = vec![0u64; m + 1];
    let mut suffix_in = vec![0u64; m + 1];
    for i in (0..m).rev() {
        suffix_out[i] = suffix_out[i + 1] | (1 << tails[i]);
        suffix_in[i] = suffix_in[i + 1] | (1 << heads[i]);
    }

    let mut search = DirectedSearch {
        n,
        tails,
        heads,
        suffix_out,
        suffix_in,
        goal,
        chosen: Vec::with_capacity(m),
        out_deg: vec![0u8; n],
        in_deg: vec![0u8; n],
        und_deg: vec![0u8; n],
        missing_out: all_mask(n),
        missing_in: all_mask(n),
        und0: all_mask(n),
        und1: 0,
        explored: 0,
        witness: None,
    };

    // Any strongly connected spanning subgraph on n >= 2 vertices needs at
    // least n arcs (every vertex has out-degree >= 1).
    let lower = if n <= 1 { 0 } else { n };
    for k in lower..=m {
        if search.run(k) {
            let indices = search.witness.take().expect("witness recorded on success");
            return Ok(ExactResult {
                optimum_size: k,
                witness: ArcSubset::from_indices(g, indices)?,
                subsets_explored: search.explored,
            });
        }
    }
    unreachable!("the full arc set satisfies the verified precondition");
}

struct DirectedSearch {
    n: usize,
    tails: Vec<usize>,
    heads: Vec<usize>,
    suffix_out: Vec<u64>,
    suffix_in: Vec<u64>,
    goal: DirectedGoal,
    chosen: Vec<usize>,
    out_deg: Vec<u8>,
    in_deg: Vec<u8>,
    und_deg: Vec<u8>,
    missing_out: u64,
    missing_in: u64,
    und0: u64,
    und1: u64,
    explored: u64,
    witness: Option<Vec<usize>>,
}

impl DirectedSearch {
    fn run(&mut self, k: usize) -> bool {
        debug_assert!(self.chosen.is_empty());
        self.recurse(0, k)
    }

    fn recurse(&mut self, next: usize, remaining: usize) -> bool {
        if remaining == 0 {
            self.explored += 1;
            if self.leaf_ok() {
                self.witness = Some(self.chosen.clone());
                return true;
            }
            return false;
        }
        let m = self.tails.len();
        if next + remaining > m {
            return false;
        }
        // a vertex with no remaining source of coverage kills the branch
        if self.missing_out & !self.suffix_out[next] != 0 {
            return false;
        }
        if self.missing_in & !self.suffix_in[next] != 0 {
            return false;
        }
        let rem = remaining as u32;
        if self.missing_out.count_ones() > rem || self.missing_in.count_ones() > rem {
            return false;
        }
        if self.goal == DirectedGoal::StronglyBiconnected && self.n >= 3 {
            // biconnected needs underlying degree >= 2 everywhere; each arc
            // raises at most two endpoint degrees by one
            let deficit = 2 * self.und0.count_ones() + self.und1.count_ones();
            if deficit > 2 * rem {
                return false;
            }
        }

        self.push_arc(next);
        if self.recurse(next + 1, remaining - 1) {
            return true;
        }
        self.pop_arc(next);
        self.recurse(next + 1, remaining)
    }

    fn push_arc(&mut self, i: usize) {
        let (t, h) = (self.tails[i], self.heads[i]);
        self.chosen.push(i);
        self.out_deg[t] += 1;
        if self.out_deg[t] == 1 {
            self.missing_out &= !(1 << t);
        }
        self.in_deg[h] += 1;
        if self.in_deg[h] == 1 {
            self.missing_in &= !(1 << h);
        }
        for v in [t, h] {
            self.und_deg[v] += 1;
            match self.und_deg[v] {
                1 => {
                    self.und0 &= !(1 << v);
                    self.und1 |= 1 << v;
                }
                2 => self.und1 &= !(1 << v),
                _ => {}
            }
        }
    }

    fn pop_arc(&mut self, i: usize) {
        let (t, h) = (self.tails[i], self.heads[i]);
        self.chosen.pop();
        self.out_deg[t] -= 1;
        if self.out_deg[t] == 0 {
            self.missing_out |= 1 << t;
        }
        self.in_deg[h] -= 1;
        if self.in_deg[h] == 0 {
            self.missing_in |= 1 << h;
        }
        for v in [t, h] {
            self.und_deg[v] -= 1;
            match self.und_deg[v] {
                0 => {
                    self.und0 |= 1 << v;
                    self.und1 &= !(1 << v);
                }
                1 => self.und1 |= 1 << v,
                _ => {}
            }
        }
    }

    fn leaf_ok(&self) -> bool {
        let n = self.n;
        let full = all_mask(n);
        let mut out_mask = [0u64; 64];
        let mut in_mask = [0u64; 64];
        for &i in &self.chosen {
            out_mask[self.tails[i]] |= 1 << self.heads[i];
            in_mask[self.heads[i]] |= 1 << self.tails[i];
        }
        if mask_closure(1, &out_mask) != full || mask_closure(1, &in_mask) != full {
            return false;
        }
        if self.goal == DirectedGoal::StronglyConnected {
            return true;
        }
        let mut adj = [0u64; 64];
        for &i in &self.chosen {
            adj[self.tails[i]] |= 1 << self.heads[i];
            adj[self.heads[i]] |= 1 << self.tails[i];
        }
        mask_biconnected(n, &adj)
    }
}

/// Reachable set from the vertices in `start` following mask adjacency.
fn mask_closure(start: u64, adj: &[u64; 64]) -> u64 {
    let mut reach = start;
    loop {
        let mut next = reach;
        let mut bits = reach;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[v];
        }
        if next == reach {
            return reach;
        }
        reach = next;
    }
}

/// Connected and articulation-point-free, on mask adjacency. Conventions
/// match [`is_biconnected`]: a single vertex and a single edge pass.
fn mask_biconnected(n: usize, adj: &[u64; 64]) -> bool {
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    struct Dfs<'a> {
        adj: &'a [u64; 64],
        disc: [u32; 64],
        low: [u32; 64],
        timer: u32,
        count: u32,
        separated: bool,
    }
    impl Dfs<'_> {
        fn go(&mut self, v: usize, parent: usize) {
            self.disc[v] = self.timer;
            self.low[v] = self.timer;
            self.timer += 1;
            self.count += 1;
            let mut children = 0u32;
            let mut bits = self.adj[v];
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if w == parent {
                    continue;
                }
                if self.disc[w] == u32::MAX {
                    children += 1;
                    self.go(w, v);
                    self.low[v] = self.low[v].min(self.low[w]);
                    if parent != usize::MAX && self.low[w] >= self.disc[v] {
                        self.separated = true;
                    }
                } else {
                    self.low[v] = self.low[v].min(self.disc[w]);
                }
            }
            if parent == usize::MAX && children >= 2 {
                self.separated = true;
            }
        }
    }
    let mut dfs = Dfs {
        adj,
        disc: [u32::MAX; 64],
        low: [0; 64],
        timer: 0,
        count: 0,
        separated: false,
    };
    dfs.go(0, usize::MAX);
    dfs.count == n as u32 && !dfs.separated
}

fn undirected_search(u: &UndirectedView) -> Result<ExactResult<Vec<(VertexId, VertexId)>>> {
    let n = u.n();
    let m = u.edge_count();
    let eu: Vec<usize> = u.edges().iter().map(|&(a, _)| a.index()).collect();
    let ev: Vec<usize> = u.edges().iter().map(|&(_, b)| b.index()).collect();
    let mut suffix_touch = vec![0u64; m + 1];
    for i in (0..m).rev() {
        suffix_touch[i] = suffix_touch[i + 1] | (1 << eu[i]) | (1 << ev[i]);
    }

    let mut search = UndirectedSearch {
        n,
        eu,
        ev,
        suffix_touch,
        chosen: Vec::with_capacity(m),
        deg: vec![0u8; n],
        deg0: all_mask(n),
        deg1: 0,
        explored: 0,
        witness: None,
    };

    // a biconnected spanning subgraph needs >= n edges once n >= 3 (every
    // vertex has degree >= 2); K2 needs its single edge
    let lower = match n {
        0 | 1 => 0,
        2 => 1,
        _ => n,
    };
    for k in lower..=m {
        if search.run(k) {
            let indices = search.witness.take().expect("witness recorded on success");
            let witness = indices.into_iter().map(|i| u.edges()[i]).collect();
            return Ok(ExactResult {
                optimum_size: k,
                witness,
                subsets_explored: search.explored,
            });
        }
    }
    unreachable!("the full edge set satisfies the verified precondition");
}

struct UndirectedSearch {
    n: usize,
    eu: Vec<usize>,
    ev: Vec<usize>,
    suffix_touch: Vec<u64>,
    chosen: Vec<usize>,
    deg: Vec<u8>,
    deg0: u64,
    deg1: u64,
    explored: u64,
    witness: Option<Vec<usize>>,
}

impl UndirectedSearch {
    fn run(&mut self, k: usize) -> bool {
        debug_assert!(self.chosen.is_empty());
        self.recurse(0, k)
    }

    fn recurse(&mut self, next: usize, remaining: usize) -> bool {
        if remaining == 0 {
            self.explored += 1;
            if self.leaf_ok() {
                self.witness = Some(self.chosen.clone());
                return true;
            }
            return false;
        }
        let m = self.eu.len();
        if next + remaining > m {
            return false;
        }
        if self.deg0 & !self.suffix_touch[next] != 0 {
            return false;
        }
        if self.n >= 3 {
            let deficit = 2 * self.deg0.count_ones() + self.deg1.count_ones();
            if deficit > 2 * remaining as u32 {
                return false;
            }
        }

        self.push_edge(next);
        if self.recurse(next + 1, remaining - 1) {
            return true;
        }
        self.pop_edge(next);
        self.recurse(next + 1, remaining)
    }

    fn push_edge(&mut self, i: usize) {
        self.chosen.push(i);
        for v in [self.eu[i], self.ev[i]] {
            self.deg[v] += 1;
            match self.deg[v] {
                1 => {
                    self.deg0 &= !(1 << v);
                    self.deg1 |= 1 << v;
                }
                2 => self.deg1 &= !(1 << v),
                _ => {}
            }
        }
    }

    fn pop_edge(&mut self, i: usize) {
        self.chosen.pop();
        for v in [self.eu[i], self.ev[i]] {
            self.deg[v] -= 1;
            match self.deg[v] {
                0 => {
                    self.deg0 |= 1 << v;
                    self.deg1 &= !(1 << v);
                }
                1 => self.deg1 |= 1 << v,
                _ => {}
            }
        }
    }

    fn leaf_ok(&self) -> bool {
        let mut adj = [0u64; 64];
        for &i in &self.chosen {
            adj[self.eu[i]] |= 1 << self.ev[i];
            adj[self.ev[i]] |= 1 << self.eu[i];
        }
        mask_biconnected(self.n, &adj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{figure1a, gen_hamiltonian_chords};

    fn triangle() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn showcase_optimum_is_fifteen() {
        let res = exact_msbss(&figure1a()).unwrap();
        assert_eq!(res.optimum_size, 15);
        // lexicographically smallest witness: the first fifteen arcs
        assert_eq!(res.witness.iter().collect::<Vec<_>>(), (0..15).collect::<Vec<_>>());
    }

    #[test]
    fn showcase_strongly_connected_optimum_is_fourteen() {
        let res = exact_msccs(&figure1a()).unwrap();
        assert_eq!(res.optimum_size, 14);
        assert_eq!(res.witness.iter().collect::<Vec<_>>(), (0..14).collect::<Vec<_>>());
    }

    #[test]
    fn triangle_needs_every_arc() {
        assert_eq!(exact_msbss(&triangle()).unwrap().optimum_size, 3);
        assert_eq!(exact_msccs(&triangle()).unwrap().optimum_size, 3);
    }

    #[test]
    fn cycle_with_chords_collapses_to_the_cycle() {
        let g = gen_hamiltonian_chords(6, 3, 11).unwrap();
        assert_eq!(g.m(), 9);
        let res = exact_msbss(&g).unwrap();
        assert_eq!(res.optimum_size, 6);
    }

    #[test]
    fn bidirected_triangle_strongly_connected_optimum() {
        let g = Digraph::new(3, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)]).unwrap();
        let res = exact_msccs(&g).unwrap();
        assert_eq!(res.optimum_size, 3);
    }

    #[test]
    fn undirected_triangle_needs_all_edges() {
        let u = UndirectedView::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(exact_2vcss(&u).unwrap().optimum_size, 3);
    }

    #[test]
    fn k4_minimum_biconnected_cover_is_a_four_cycle() {
        let u = UndirectedView::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        let res = exact_2vcss(&u).unwrap();
        assert_eq!(res.optimum_size, 4);
    }

    #[test]
    fn showcase_underlying_cover_optimum() {
        // all eight degree-2 vertices force 14 edges, which leave a cut
        // vertex; one more edge is needed and suffices
        let res = exact_2vcss(&figure1a().underlying()).unwrap();
        assert_eq!(res.optimum_size, 15);
        assert!(res.optimum_size <= 15);
    }

    #[test]
    fn cap_is_enforced() {
        let g = figure1a();
        assert_eq!(
            exact_msbss_capped(&g, 10).unwrap_err(),
            Error::InstanceTooLarge { size: 16, cap: 10 }
        );
    }

    #[test]
    fn exact_witnesses_are_minimal() {
        let g = gen_hamiltonian_chords(5, 4, 3).unwrap();
        let res = exact_msbss(&g).unwrap();
        let sub = g.subgraph(&res.witness).unwrap();
        assert!(is_strongly_biconnected(&sub));
        for i in res.witness.iter() {
            let mut smaller = res.witness.clone();
            smaller.remove(i);
            assert!(!is_strongly_biconnected(&g.subgraph(&smaller).unwrap()));
        }
    }

    #[test]
    fn minimalize_showcase_keeps_fifteen_arcs() {
        let g = figure1a();
        let report = minimalize(&g, &ArcSubset::full(&g)).unwrap();
        assert_eq!(report.size, 15);
        assert_eq!(report.ratio_parts(), (15, 26));
    }

    #[test]
    fn minimalize_leaves_triangle_alone() {
        let g = triangle();
        let report = minimalize(&g, &ArcSubset::full(&g)).unwrap();
        assert_eq!(report.size, 3);
        assert!((report.ratio_to_2n() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn minimalize_reduces_bidirected_triangle() {
        let g = Digraph::new(3, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)]).unwrap();
        let report = minimalize(&g, &ArcSubset::full(&g)).unwrap();
        assert_eq!(report.size, 3);
    }

    #[test]
    fn minimalize_rejects_infeasible_start() {
        let g = figure1a();
        let start = ArcSubset::from_indices(&g, 0..14).unwrap();
        assert!(minimalize(&g, &start).is_err());
    }

    #[test]
    fn minimalize_validates_order() {
        let g = triangle();
        let start = ArcSubset::full(&g);
        assert_eq!(
            minimalize_in_order(&g, &start, &[0, 0, 1]).unwrap_err(),
            Error::DeletionOrderNotPermutation { m: 3 }
        );
        assert_eq!(
            minimalize_in_order(&g, &start, &[0, 1]).unwrap_err(),
            Error::DeletionOrderNotPermutation { m: 3 }
        );
    }
}
