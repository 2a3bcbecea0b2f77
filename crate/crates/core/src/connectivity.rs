//! Connectivity primitives: strongly connected components, undirected blocks
//! and articulation points, strong articulation points, and the strongly
//! biconnected predicate and decomposition.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::graph::{Digraph, UndirectedView, VertexId};
use crate::Result;

const UNVISITED: usize = usize::MAX;

/// Partition of a digraph's vertices into strongly connected components.
/// Component ids are dense and numbered by smallest contained vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccPartition {
    component_of: Vec<usize>,
    count: usize,
}

impl SccPartition {
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.component_of[v.index()]
    }

    pub fn same_component(&self, u: VertexId, w: VertexId) -> bool {
        self.component_of[u.index()] == self.component_of[w.index()]
    }

    /// Vertex sets grouped by component id; each set ascending.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut groups = vec![Vec::new(); self.count];
        for (v, &c) in self.component_of.iter().enumerate() {
            groups[c].push(VertexId::new(v));
        }
        groups
    }
}

/// Strongly connected components via a single-pass lowlink search
/// (iterative, so deep graphs cannot overflow the stack).
pub fn scc(g: &Digraph) -> SccPartition {
    let n = g.n();
    let mut disc = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut raw = vec![UNVISITED; n];
    let mut raw_count = 0usize;
    let mut timer = 0usize;
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNVISITED {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, 0));

        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            let out = g.out_arc_indices(VertexId::new(v));
            if frame.1 < out.len() {
                let w = g.arc(out[frame.1]).head.index();
                frame.1 += 1;
                if disc[w] == UNVISITED {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if low[v] == disc[v] {
                    loop {
                        let w = stack.pop().expect("component stack underflow");
                        on_stack[w] = false;
                        raw[w] = raw_count;
                        if w == v {
                            break;
                        }
                    }
                    raw_count += 1;
                }
                if let Some(parent) = frames.last() {
                    low[parent.0] = low[parent.0].min(low[v]);
                }
            }
        }
    }

    // Renumber so components appear in order of their smallest vertex.
    let mut remap = vec![UNVISITED; raw_count];
    let mut next = 0usize;
    let mut component_of = vec![0usize; n];
    for v in 0..n {
        let c = raw[v];
        if remap[c] == UNVISITED {
            remap[c] = next;
            next += 1;
        }
        component_of[v] = remap[c];
    }
    SccPartition {
        component_of,
        count: raw_count,
    }
}

pub fn is_strongly_connected(g: &Digraph) -> bool {
    g.n() >= 1 && scc(g).count() == 1
}

/// Blocks (maximal biconnected pieces, including bridge edges and isolated
/// vertices) and articulation points of an undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSet {
    blocks: Vec<Vec<VertexId>>,
    articulation_points: Vec<VertexId>,
    blocks_of: Vec<Vec<usize>>,
}

impl BlockSet {
    /// Vertex sets of the blocks, each ascending, ordered by smallest vertex
    /// then lexicographically.
    pub fn blocks(&self) -> &[Vec<VertexId>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Articulation points in ascending order.
    pub fn articulation_points(&self) -> &[VertexId] {
        &self.articulation_points
    }

    pub fn is_articulation_point(&self, v: VertexId) -> bool {
        self.articulation_points.binary_search(&v).is_ok()
    }

    /// Ids of the blocks containing `v`, ascending.
    pub fn blocks_of(&self, v: VertexId) -> &[usize] {
        &self.blocks_of[v.index()]
    }

    /// True when some single block contains both endpoints.
    pub fn share_block(&self, u: VertexId, w: VertexId) -> bool {
        let (mut a, mut b) = (
            self.blocks_of[u.index()].iter().peekable(),
            self.blocks_of[w.index()].iter().peekable(),
        );
        while let (Some(&&x), Some(&&y)) = (a.peek(), b.peek()) {
            match x.cmp(&y) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

struct BlockFrame {
    v: usize,
    pos: usize,
    // edge_stack index of the tree edge that discovered v
    base: usize,
    children: usize,
}

/// Block decomposition of an arbitrary (possibly disconnected) graph.
/// Isolated vertices become singleton blocks.
pub(crate) fn block_decomposition(u: &UndirectedView) -> BlockSet {
    let n = u.n();
    let mut disc = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut parent_edge = vec![UNVISITED; n];
    let mut is_artic = vec![false; n];
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut raw_blocks: Vec<Vec<usize>> = Vec::new();
    let mut timer = 0usize;

    for root in 0..n {
        if disc[root] != UNVISITED {
            continue;
        }
        if u.adjacency(root).is_empty() {
            disc[root] = timer;
            timer += 1;
            raw_blocks.push(vec![root]);
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut frames = vec![BlockFrame {
            v: root,
            pos: 0,
            base: 0,
            children: 0,
        }];

        while let Some(frame) = frames.last_mut() {
            let v = frame.v;
            let adj = u.adjacency(v);
            if frame.pos < adj.len() {
                let (w, eidx) = adj[frame.pos];
                frame.pos += 1;
                if disc[w] == UNVISITED {
                    frame.children += 1;
                    edge_stack.push(eidx);
                    let base = edge_stack.len() - 1;
                    parent_edge[w] = eidx;
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push(BlockFrame {
                        v: w,
                        pos: 0,
                        base,
                        children: 0,
                    });
                } else if eidx != parent_edge[v] && disc[w] < disc[v] {
                    // back edge to an ancestor
                    edge_stack.push(eidx);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                let done = frames.pop().expect("frame stack underflow");
                if let Some(pf) = frames.last() {
                    let p = pf.v;
                    low[p] = low[p].min(low[done.v]);
                    if low[done.v] >= disc[p] {
                        // p cuts off done's subtree: the edges pushed since
                        // the discovering tree edge form one block
                        let block_edges = edge_stack.split_off(done.base);
                        let mut verts = BTreeSet::new();
                        for e in block_edges {
                            let (a, b) = u.edges()[e];
                            verts.insert(a.index());
                            verts.insert(b.index());
                        }
                        raw_blocks.push(verts.into_iter().collect());
                        if parent_edge[p] != UNVISITED {
                            is_artic[p] = true;
                        }
                    }
                } else if done.children >= 2 {
                    is_artic[done.v] = true;
                }
            }
        }
        debug_assert!(edge_stack.is_empty());
    }

    raw_blocks.sort();
    let blocks: Vec<Vec<VertexId>> = raw_blocks
        .into_iter()
        .map(|b| b.into_iter().map(VertexId::new).collect())
        .collect();
    let mut blocks_of = vec![Vec::new(); n];
    for (i, block) in blocks.iter().enumerate() {
        for v in block {
            blocks_of[v.index()].push(i);
        }
    }
    let articulation_points = (0..n)
        .filter(|&v| is_artic[v])
        .map(VertexId::new)
        .collect();
    BlockSet {
        blocks,
        articulation_points,
        blocks_of,
    }
}

pub fn is_connected(u: &UndirectedView) -> bool {
    let n = u.n();
    if n == 0 {
        return false;
    }
    let mut visited = vec![false; n];
    let mut stack = vec![0usize];
    visited[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &(w, _) in u.adjacency(v) {
            if !visited[w] {
                visited[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Blocks and articulation points of a connected graph; disconnected input
/// is reported as an error so callers can treat it as "not biconnected".
pub fn articulation_points(u: &UndirectedView) -> Result<BlockSet> {
    if !is_connected(u) {
        return Err(Error::NotConnected);
    }
    Ok(block_decomposition(u))
}

/// Connected with no articulation point. A single vertex and a single edge
/// both count as biconnected: neither has an articulation point.
pub fn is_biconnected(u: &UndirectedView) -> bool {
    is_connected(u) && block_decomposition(u).articulation_points().is_empty()
}

/// Strongly connected, and the underlying undirected graph has no
/// articulation point.
pub fn is_strongly_biconnected(g: &Digraph) -> bool {
    check_strongly_biconnected(g).is_ok()
}

/// Like [`is_strongly_biconnected`] but names the failing predicate: either
/// the graph is not strongly connected, or the smallest articulation point
/// of the underlying graph is reported.
pub fn check_strongly_biconnected(g: &Digraph) -> Result<()> {
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    // underlying is connected here, so the block decomposition is total
    let blocks = block_decomposition(&g.underlying());
    if let Some(&v) = blocks.articulation_points().first() {
        return Err(Error::HasArticulationPoint { vertex: v });
    }
    Ok(())
}

/// Vertices whose removal destroys strong connectivity, computed by removing
/// each vertex in turn and re-testing reachability. O(n(n+m)); fine at desk
/// scale.
pub fn strong_articulation_points(g: &Digraph) -> Result<Vec<VertexId>> {
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    let n = g.n();
    let mut result = Vec::new();
    if n <= 2 {
        return Ok(result);
    }
    let mut visited = vec![false; n];
    for skip in 0..n {
        let start = usize::from(skip == 0);
        let fwd = count_reachable(g, start, skip, true, &mut visited);
        let ok = fwd == n - 1 && count_reachable(g, start, skip, false, &mut visited) == n - 1;
        if !ok {
            result.push(VertexId::new(skip));
        }
    }
    Ok(result)
}

fn count_reachable(
    g: &Digraph,
    start: usize,
    skip: usize,
    forward: bool,
    visited: &mut [bool],
) -> usize {
    visited.fill(false);
    visited[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        let arcs = if forward {
            g.out_arc_indices(VertexId::new(v))
        } else {
            g.in_arc_indices(VertexId::new(v))
        };
        for &ai in arcs {
            let arc = g.arc(ai);
            let w = if forward {
                arc.head.index()
            } else {
                arc.tail.index()
            };
            if w != skip && !visited[w] {
                visited[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count
}

/// Vertex groupings produced by the block/strong-component refinement; a
/// fixpoint of [`sbc_refine_round`]. Parts may overlap at cut vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SbcDecomposition {
    parts: Vec<Vec<VertexId>>,
}

impl SbcDecomposition {
    /// Parts, each ascending, ordered lexicographically.
    pub fn parts(&self) -> &[Vec<VertexId>] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }
}

/// One refinement round: replace every part by the blocks of the underlying
/// view of its induced subgraph, then split each block by the strong
/// components of its induced subgraph. Duplicates collapse; output is
/// canonical (sorted parts in lexicographic order).
pub fn sbc_refine_round(g: &Digraph, parts: &[Vec<VertexId>]) -> Vec<Vec<VertexId>> {
    let mut next: BTreeSet<Vec<usize>> = BTreeSet::new();
    for part in parts {
        let part_raw: Vec<usize> = part.iter().map(|v| v.index()).collect();
        let (sub, to_global) = g.induced(&part_raw);
        let blocks = block_decomposition(&sub.underlying());
        for block in blocks.blocks() {
            let block_local: Vec<usize> = block.iter().map(|v| v.index()).collect();
            let (bsub, to_sub) = sub.induced(&block_local);
            for comp in scc(&bsub).components() {
                let mut global: Vec<usize> = comp
                    .iter()
                    .map(|v| to_global[to_sub[v.index()]])
                    .collect();
                global.sort_unstable();
                next.insert(global);
            }
        }
    }
    next.into_iter()
        .map(|p| p.into_iter().map(VertexId::new).collect())
        .collect()
}

/// Iterates [`sbc_refine_round`] from the strong-component classes until
/// nothing changes. Parts only ever shrink, so the loop terminates.
pub fn sbc_decomposition(g: &Digraph) -> SbcDecomposition {
    let seed: Vec<Vec<VertexId>> = scc(g).components();
    let mut parts = sbc_refine_round(g, &seed);
    let round_cap = g.n() * g.n() + 2;
    for _ in 0..round_cap {
        let next = sbc_refine_round(g, &parts);
        if next == parts {
            return SbcDecomposition { parts };
        }
        parts = next;
    }
    unreachable!("refinement failed to stabilize within {round_cap} rounds");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Digraph;
    use crate::instances::{figure1a, figure1b, figure1c};

    fn v(i: usize) -> VertexId {
        VertexId::new(i)
    }

    fn triangle() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn triangle_is_one_component() {
        assert_eq!(scc(&triangle()).count(), 1);
    }

    #[test]
    fn figure1b_is_strongly_connected() {
        assert_eq!(scc(&figure1b()).count(), 1);
        assert!(is_strongly_connected(&figure1b()));
    }

    #[test]
    fn figure1b_without_closing_arc_splits() {
        // Drop 3->5 (ids 2->4, arc index 13): the 1,10,9,2,3 side can no
        // longer return, leaving the 8-cycle plus five singletons.
        let g = figure1b();
        let arcs: Vec<_> = g
            .arcs()
            .iter()
            .map(|a| a.endpoints())
            .filter(|&(t, h)| (t, h) != (2, 4))
            .collect();
        let cut = Digraph::new(13, arcs).unwrap();
        let p = scc(&cut);
        assert_eq!(p.count(), 6);
        // labels 1,2,3,9,10 are ids 0,1,2,8,9 and sit apart from label 5 (id 4)
        for sep in [0, 1, 2, 8, 9] {
            assert!(!p.same_component(v(sep), v(4)));
        }
    }

    #[test]
    fn single_arc_pair_is_not_strongly_connected() {
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        assert!(!is_strongly_connected(&g));
    }

    #[test]
    fn scc_numbering_is_by_smallest_vertex() {
        // 1->0, 2->3->2: components {0}, {1}, {2,3} numbered 0, 1, 2.
        let g = Digraph::new(4, [(1, 0), (2, 3), (3, 2)]).unwrap();
        let p = scc(&g);
        assert_eq!(p.count(), 3);
        assert_eq!(p.component_of(v(0)), 0);
        assert_eq!(p.component_of(v(1)), 1);
        assert_eq!(p.component_of(v(2)), 2);
        assert_eq!(p.component_of(v(3)), 2);
    }

    #[test]
    fn blocks_of_figure1b_underlying() {
        let blocks = articulation_points(&figure1b().underlying()).unwrap();
        assert_eq!(blocks.articulation_points(), &[v(4)]); // label 5
        assert_eq!(blocks.block_count(), 2);
    }

    #[test]
    fn triangle_underlying_has_no_articulation_point() {
        let blocks = articulation_points(&triangle().underlying()).unwrap();
        assert!(blocks.articulation_points().is_empty());
        assert_eq!(blocks.block_count(), 1);
    }

    #[test]
    fn path_has_middle_articulation_point() {
        let u = UndirectedView::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let blocks = articulation_points(&u).unwrap();
        assert_eq!(blocks.articulation_points(), &[v(1)]);
        assert_eq!(blocks.block_count(), 2);
    }

    #[test]
    fn articulation_points_rejects_disconnected_input() {
        let u = UndirectedView::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(articulation_points(&u).unwrap_err(), Error::NotConnected);
    }

    #[test]
    fn biconnected_predicate_small_conventions() {
        let single = UndirectedView::from_edges(1, []).unwrap();
        assert!(is_biconnected(&single));
        let pair = UndirectedView::from_edges(2, [(0, 1)]).unwrap();
        assert!(is_biconnected(&pair));
        let split = UndirectedView::from_edges(2, []).unwrap();
        assert!(!is_biconnected(&split));
    }

    #[test]
    fn figure1_biconnectivity() {
        assert!(is_biconnected(&figure1c().underlying()));
        assert!(!is_biconnected(&figure1b().underlying()));
        assert!(is_strongly_biconnected(&figure1a()));
        assert!(!is_strongly_biconnected(&figure1b()));
        assert!(is_strongly_biconnected(&triangle()));
    }

    #[test]
    fn check_names_the_failing_predicate() {
        let chain = Digraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(
            check_strongly_biconnected(&chain).unwrap_err(),
            Error::NotStronglyConnected
        );
        assert_eq!(
            check_strongly_biconnected(&figure1b()).unwrap_err(),
            Error::HasArticulationPoint { vertex: v(4) }
        );
    }

    #[test]
    fn strong_articulation_points_of_figure1c() {
        let saps = strong_articulation_points(&figure1c()).unwrap();
        assert!(saps.contains(&v(4))); // label 5: removing it strands label 11
    }

    #[test]
    fn every_vertex_of_a_plain_cycle_is_a_strong_articulation_point() {
        // removing any cycle vertex leaves a directed path
        assert_eq!(
            strong_articulation_points(&triangle()).unwrap(),
            vec![v(0), v(1), v(2)]
        );
    }

    #[test]
    fn bidirected_triangle_has_no_strong_articulation_point() {
        let g = Digraph::new(3, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)]).unwrap();
        assert!(strong_articulation_points(&g).unwrap().is_empty());
    }

    #[test]
    fn bidirected_path_middle_is_strong_articulation_point() {
        let g = Digraph::new(3, [(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
        assert_eq!(strong_articulation_points(&g).unwrap(), vec![v(1)]);
    }

    #[test]
    fn strong_articulation_points_requires_strong_connectivity() {
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(
            strong_articulation_points(&g).unwrap_err(),
            Error::NotStronglyConnected
        );
    }

    #[test]
    fn sbc_of_strongly_biconnected_graph_is_one_part() {
        let d = sbc_decomposition(&figure1a());
        assert_eq!(d.part_count(), 1);
        assert_eq!(d.parts()[0].len(), 13);
    }

    #[test]
    fn sbc_of_figure1b_is_two_overlapping_parts() {
        let d = sbc_decomposition(&figure1b());
        let as_ids: Vec<Vec<usize>> = d
            .parts()
            .iter()
            .map(|p| p.iter().map(|v| v.index()).collect())
            .collect();
        // labels {1,2,3,5,9,10} and {4,5,6,7,8,11,12,13}, overlapping at 5
        assert_eq!(
            as_ids,
            vec![vec![0, 1, 2, 4, 8, 9], vec![3, 4, 5, 6, 7, 10, 11, 12]]
        );
    }

    #[test]
    fn sbc_of_two_triangles_joined_by_an_arc() {
        let g = Digraph::new(
            6,
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)],
        )
        .unwrap();
        let d = sbc_decomposition(&g);
        let as_ids: Vec<Vec<usize>> = d
            .parts()
            .iter()
            .map(|p| p.iter().map(|v| v.index()).collect())
            .collect();
        assert_eq!(as_ids, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn sbc_refinement_is_idempotent_on_its_output() {
        for g in [figure1a(), figure1b(), figure1c(), triangle()] {
            let d = sbc_decomposition(&g);
            assert_eq!(sbc_refine_round(&g, d.parts()), d.parts());
        }
    }
}
