//! Approximate constructions: spanning in/out-trees, the biconnectivity
//! augmentation loop, the tree-pair 3-approximation, and the combiner that
//! merges a strongly connected subgraph with an undirected 2-vertex-connected
//! edge set.

use crate::connectivity::{
    block_decomposition, check_strongly_biconnected, is_biconnected, is_strongly_biconnected,
    is_strongly_connected,
};
use crate::error::Error;
use crate::graph::{ArcSubset, Digraph, UndirectedView, VertexId};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeOrientation {
    /// All tree arcs point away from the root.
    Out,
    /// All tree arcs point toward the root.
    In,
}

/// Spanning arborescence: for every non-root vertex, the arc connecting it
/// toward the root's tree. Arcs are indices into the graph the tree was
/// built from; an in-tree stores original (non-reversed) arc indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    root: VertexId,
    orientation: TreeOrientation,
    parent_arc: Vec<Option<usize>>,
}

impl SpanningTree {
    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn orientation(&self) -> TreeOrientation {
        self.orientation
    }

    /// Arc linking `v` into the tree (`None` for the root).
    pub fn parent_arc_of(&self, v: VertexId) -> Option<usize> {
        self.parent_arc[v.index()]
    }

    /// The n-1 tree arc indices, ascending.
    pub fn arc_indices(&self) -> Vec<usize> {
        let mut arcs: Vec<usize> = self.parent_arc.iter().flatten().copied().collect();
        arcs.sort_unstable();
        arcs
    }

    pub fn arc_count(&self) -> usize {
        self.parent_arc.iter().flatten().count()
    }
}

/// Solver output: the chosen arcs plus the certificate quantities recorded
/// along the way.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solution: ArcSubset,
    /// `solution.len()`.
    pub size: usize,
    pub n: usize,
    /// Whether `size <= 3(n-1)`.
    pub bound_3n_minus_3_ok: bool,
    /// Arcs present before augmentation (or combination).
    pub seed_size: usize,
    /// Arcs added on top of the seed.
    pub added_arcs: usize,
    /// Arcs added by the augmentation loop, one per iteration.
    pub iterations_of_augment: usize,
    /// Block count of the underlying working subgraph at each loop test,
    /// including the final one. Strictly decreasing while the loop runs.
    pub block_count_trace: Vec<usize>,
    pub root_used: Option<VertexId>,
}

impl SolveReport {
    fn new(g: &Digraph, solution: ArcSubset, seed_size: usize) -> Self {
        let size = solution.len();
        let n = g.n();
        SolveReport {
            solution,
            size,
            n,
            bound_3n_minus_3_ok: size <= 3 * n.saturating_sub(1),
            seed_size,
            added_arcs: size - seed_size,
            iterations_of_augment: 0,
            block_count_trace: Vec::new(),
            root_used: None,
        }
    }
}

/// Depth-first spanning arborescence rooted at `root`, arcs pointing away
/// from it. Neighbors are explored in arc-index order, so the tree is
/// deterministic.
pub fn out_tree(g: &Digraph, root: VertexId) -> Result<SpanningTree> {
    let parent_arc = dfs_tree(g, root)?;
    Ok(SpanningTree {
        root,
        orientation: TreeOrientation::Out,
        parent_arc,
    })
}

/// Depth-first spanning arborescence with all arcs pointing toward `root`,
/// built by searching the reversed graph and mapping tree arcs back to their
/// original indices (arc `i` of the reverse is arc `i` of the original).
pub fn in_tree(g: &Digraph, root: VertexId) -> Result<SpanningTree> {
    let rev = g.reverse();
    let parent_arc = dfs_tree(&rev, root).map_err(|e| match e {
        Error::UnreachableFromRoot { root, vertex } => Error::CannotReachRoot { root, vertex },
        other => other,
    })?;
    Ok(SpanningTree {
        root,
        orientation: TreeOrientation::In,
        parent_arc,
    })
}

fn dfs_tree(g: &Digraph, root: VertexId) -> Result<Vec<Option<usize>>> {
    let n = g.n();
    if root.index() >= n {
        return Err(Error::VertexOutOfRange {
            vertex: root.index(),
            n,
        });
    }
    let mut parent_arc = vec![None; n];
    let mut visited = vec![false; n];
    visited[root.index()] = true;
    let mut frames: Vec<(usize, usize)> = vec![(root.index(), 0)];
    while let Some(frame) = frames.last_mut() {
        let out = g.out_arc_indices(VertexId::new(frame.0));
        if frame.1 < out.len() {
            let ai = out[frame.1];
            frame.1 += 1;
            let w = g.arc(ai).head.index();
            if !visited[w] {
                visited[w] = true;
                parent_arc[w] = Some(ai);
                frames.push((w, 0));
            }
        } else {
            frames.pop();
        }
    }
    if let Some(missing) = visited.iter().position(|&b| !b) {
        return Err(Error::UnreachableFromRoot {
            root,
            vertex: VertexId::new(missing),
        });
    }
    Ok(parent_arc)
}

/// Grows `seed` until the underlying graph of the working subgraph is
/// biconnected. Each iteration adds the smallest-index arc outside the
/// subgraph whose endpoints lie in no common block of the current underlying
/// view; such an arc merges every block on the path between them, so the
/// block count strictly decreases and at most n-1 arcs are ever added.
///
/// Requires `subgraph(g, seed)` strongly connected and `g` itself strongly
/// biconnected (otherwise no useful arc may exist).
pub fn augment_to_biconnected(g: &Digraph, seed: &ArcSubset) -> Result<SolveReport> {
    seed.check_parent(g)?;
    if !is_strongly_connected(&g.subgraph(seed)?) {
        return Err(Error::SeedNotStronglyConnected);
    }
    check_strongly_biconnected(g)?;

    let mut current = seed.clone();
    let mut trace = Vec::new();
    let mut iterations = 0usize;
    loop {
        let und = g.subgraph(&current)?.underlying();
        let blocks = block_decomposition(&und);
        trace.push(blocks.block_count());
        if blocks.block_count() <= 1 {
            break;
        }
        let candidate = (0..g.m())
            .filter(|&i| !current.contains(i))
            .find(|&i| {
                let arc = g.arc(i);
                !blocks.share_block(arc.tail, arc.head)
            });
        match candidate {
            Some(i) => {
                current.insert(i);
                iterations += 1;
            }
            None => return Err(Error::AugmentStalled),
        }
    }

    let mut report = SolveReport::new(g, current, seed.len());
    report.iterations_of_augment = iterations;
    report.block_count_trace = trace;
    Ok(report)
}

/// 3-approximation for the minimum strongly biconnected spanning subgraph:
/// the union of an out-tree and an in-tree rooted at `root` (a strongly
/// connected subgraph of at most 2n-2 arcs), then augmented to
/// biconnectivity. The result has at most 3(n-1) arcs.
pub fn approx_msbss(g: &Digraph, root: VertexId) -> Result<SolveReport> {
    if root.index() >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: root.index(),
            n: g.n(),
        });
    }
    check_strongly_biconnected(g)?;
    let out = out_tree(g, root)?;
    let tin = in_tree(g, root)?;
    let mut seed = ArcSubset::empty(g);
    for i in out.arc_indices() {
        seed.insert(i);
    }
    for i in tin.arc_indices() {
        seed.insert(i);
    }
    let mut report = augment_to_biconnected(g, &seed)?;
    report.root_used = Some(root);
    Ok(report)
}

/// Unions a strongly connected spanning arc set with a lift of an undirected
/// 2-vertex-connected spanning edge set. Each cover edge {u, w} costs
/// nothing when some orientation is already in `scss`; otherwise the
/// lexicographically smaller orientation present in the graph is added. The
/// union is strongly connected and its underlying graph contains the whole
/// cover, hence strongly biconnected; a final check enforces that rather
/// than trusting it.
pub fn combine_and_augment(
    g: &Digraph,
    scss: &ArcSubset,
    two_vcss: &[(VertexId, VertexId)],
) -> Result<SolveReport> {
    scss.check_parent(g)?;
    if !is_strongly_connected(&g.subgraph(scss)?) {
        return Err(Error::SeedNotStronglyConnected);
    }

    let mut edges = Vec::with_capacity(two_vcss.len());
    for &(u, w) in two_vcss {
        let (lo, hi) = (u.min(w), u.max(w));
        if !g.has_arc(lo, hi) && !g.has_arc(hi, lo) {
            return Err(Error::MissingUndirectedEdge { u: lo, w: hi });
        }
        edges.push((lo.index(), hi.index()));
    }
    let cover = UndirectedView::from_edges(g.n(), edges.iter().copied())?;
    if !is_biconnected(&cover) {
        return Err(Error::EdgeSetNotBiconnected);
    }

    let mut solution = scss.clone();
    for &(lo, hi) in cover.edges() {
        if let Some(i) = g.arc_index(lo, hi) {
            if solution.contains(i) {
                continue;
            }
        }
        if let Some(i) = g.arc_index(hi, lo) {
            if solution.contains(i) {
                continue;
            }
        }
        let lifted = g
            .arc_index(lo, hi)
            .or_else(|| g.arc_index(hi, lo))
            .expect("edge validated against the graph");
        solution.insert(lifted);
    }

    if !is_strongly_biconnected(&g.subgraph(&solution)?) {
        return Err(Error::CombineNotBiconnected);
    }
    Ok(SolveReport::new(g, solution, scss.len()))
}
