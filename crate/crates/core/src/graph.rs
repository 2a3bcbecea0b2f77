//! Immutable directed-graph representation with dense vertex ids, plus arc
//! subsets and the undirected view obtained by forgetting orientations.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::Error;
use crate::Result;

/// Dense vertex identifier, valid in `[0, n)` for the owning graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(usize);

impl VertexId {
    pub const fn new(index: usize) -> Self {
        Self(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(index: usize) -> Self {
        Self(index)
    }
}

/// Directed arc `tail -> head`. Self-loops are rejected at graph construction.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Arc {
    pub fn new(tail: VertexId, head: VertexId) -> Self {
        Self { tail, head }
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.tail.0, self.head.0)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

/// Immutable directed graph: `n` vertices and an ordered, duplicate-free arc
/// list. The arc order is the input order (first occurrence), which makes all
/// downstream tie-breaking reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<Arc>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a graph from `(tail, head)` pairs. Duplicate arcs collapse to
    /// their first occurrence; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        let mut seen = HashSet::new();
        for (tail, head) in arcs {
            if tail >= n {
                return Err(Error::VertexOutOfRange { vertex: tail, n });
            }
            if head >= n {
                return Err(Error::VertexOutOfRange { vertex: head, n });
            }
            if tail == head {
                return Err(Error::SelfLoop { vertex: tail });
            }
            if seen.insert((tail, head)) {
                list.push(Arc::new(VertexId(tail), VertexId(head)));
            }
        }
        Ok(Self::from_unique_arcs(n, list))
    }

    /// Internal constructor for arc lists already known to be valid and
    /// duplicate-free (reversal, subgraphs, induced subgraphs).
    fn from_unique_arcs(n: usize, arcs: Vec<Arc>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (i, arc) in arcs.iter().enumerate() {
            out_adj[arc.tail.0].push(i);
            in_adj[arc.head.0].push(i);
        }
        Self {
            n,
            arcs,
            out_adj,
            in_adj,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, index: usize) -> Arc {
        self.arcs[index]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId)
    }

    /// Arc indices leaving `v`, in ascending index order.
    pub fn out_arc_indices(&self, v: VertexId) -> &[usize] {
        &self.out_adj[v.0]
    }

    /// Arc indices entering `v`, in ascending index order.
    pub fn in_arc_indices(&self, v: VertexId) -> &[usize] {
        &self.in_adj[v.0]
    }

    pub fn arc_index(&self, tail: VertexId, head: VertexId) -> Option<usize> {
        self.out_adj[tail.0]
            .iter()
            .copied()
            .find(|&i| self.arcs[i].head == head)
    }

    pub fn has_arc(&self, tail: VertexId, head: VertexId) -> bool {
        self.arc_index(tail, head).is_some()
    }

    /// Graph with every arc flipped. Arc `i` of the result reverses arc `i`
    /// of the input, so index-based bookkeeping carries over.
    pub fn reverse(&self) -> Digraph {
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc::new(a.head, a.tail))
            .collect();
        Self::from_unique_arcs(self.n, arcs)
    }

    /// Simple undirected view: one edge per unordered endpoint pair present
    /// in either orientation (antiparallel arc pairs collapse).
    pub fn underlying(&self) -> UndirectedView {
        let edges: BTreeSet<(usize, usize)> = self
            .arcs
            .iter()
            .map(|a| {
                let (t, h) = a.endpoints();
                (t.min(h), t.max(h))
            })
            .collect();
        UndirectedView::from_sorted_edges(self.n, edges.into_iter().collect())
    }

    /// Spanning subgraph containing exactly the subset's arcs, in ascending
    /// arc-index order.
    pub fn subgraph(&self, subset: &ArcSubset) -> Result<Digraph> {
        subset.check_parent(self)?;
        let arcs = subset.iter().map(|i| self.arcs[i]).collect();
        Ok(Self::from_unique_arcs(self.n, arcs))
    }

    /// Subgraph induced on `vertices` (assumed distinct), with vertices
    /// renumbered `0..vertices.len()`. Returns the local graph and the
    /// local-to-parent id map.
    pub(crate) fn induced(&self, vertices: &[usize]) -> (Digraph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n];
        for (li, &v) in vertices.iter().enumerate() {
            local[v] = li;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|a| local[a.tail.0] != usize::MAX && local[a.head.0] != usize::MAX)
            .map(|a| Arc::new(VertexId(local[a.tail.0]), VertexId(local[a.head.0])))
            .collect();
        (
            Self::from_unique_arcs(vertices.len(), arcs),
            vertices.to_vec(),
        )
    }
}

/// Subset of the arcs of a particular [`Digraph`], identified by arc index.
/// O(1) membership, ascending iteration. A value type: clone freely.
#[derive(Clone, PartialEq, Eq)]
pub struct ArcSubset {
    parent_m: usize,
    member: Vec<bool>,
    len: usize,
}

impl ArcSubset {
    pub fn empty(g: &Digraph) -> Self {
        Self {
            parent_m: g.m(),
            member: vec![false; g.m()],
            len: 0,
        }
    }

    pub fn full(g: &Digraph) -> Self {
        Self {
            parent_m: g.m(),
            member: vec![true; g.m()],
            len: g.m(),
        }
    }

    pub fn from_indices(g: &Digraph, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut subset = Self::empty(g);
        for i in indices {
            if i >= subset.parent_m {
                return Err(Error::ArcIndexOutOfRange {
                    index: i,
                    m: subset.parent_m,
                });
            }
            subset.insert(i);
        }
        Ok(subset)
    }

    /// Arc count of the graph this subset was built against.
    pub fn parent_arc_count(&self) -> usize {
        self.parent_m
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        self.member.get(index).copied().unwrap_or(false)
    }

    /// Returns true if the arc was newly inserted. Panics on an out-of-range
    /// index; use [`ArcSubset::from_indices`] for unvalidated input.
    pub fn insert(&mut self, index: usize) -> bool {
        assert!(index < self.parent_m, "arc index {index} out of range");
        if self.member[index] {
            return false;
        }
        self.member[index] = true;
        self.len += 1;
        true
    }

    pub fn remove(&mut self, index: usize) -> bool {
        assert!(index < self.parent_m, "arc index {index} out of range");
        if !self.member[index] {
            return false;
        }
        self.member[index] = false;
        self.len -= 1;
        true
    }

    pub fn union(&self, other: &ArcSubset) -> ArcSubset {
        assert_eq!(
            self.parent_m, other.parent_m,
            "union of subsets from different graphs"
        );
        let mut member = self.member.clone();
        let mut len = self.len;
        for (i, &b) in other.member.iter().enumerate() {
            if b && !member[i] {
                member[i] = true;
                len += 1;
            }
        }
        ArcSubset {
            parent_m: self.parent_m,
            member,
            len,
        }
    }

    /// Member arc indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.member
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn belongs_to(&self, g: &Digraph) -> bool {
        self.parent_m == g.m()
    }

    pub(crate) fn check_parent(&self, g: &Digraph) -> Result<()> {
        if !self.belongs_to(g) {
            return Err(Error::SubsetGraphMismatch {
                subset_m: self.parent_m,
                m: g.m(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for ArcSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Simple undirected graph over dense vertex ids: edges are unordered pairs,
/// stored normalized `(lo, hi)` and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedView {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<(usize, usize)>>, // (neighbor, edge index), sorted by neighbor
}

impl UndirectedView {
    /// Builds a view from unordered pairs; duplicates (in either order)
    /// collapse, self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, w) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
            if u == w {
                return Err(Error::SelfLoop { vertex: u });
            }
            set.insert((u.min(w), u.max(w)));
        }
        Ok(Self::from_sorted_edges(n, set.into_iter().collect()))
    }

    /// `edges` must be normalized `(lo, hi)`, sorted, duplicate-free, in range.
    pub(crate) fn from_sorted_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, w)) in edges.iter().enumerate() {
            adj[u].push((w, i));
            adj[w].push((u, i));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let edges = edges
            .into_iter()
            .map(|(u, w)| (VertexId(u), VertexId(w)))
            .collect();
        Self { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as normalized `(lo, hi)` pairs in ascending order.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.0].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v.0].iter().map(|&(w, _)| VertexId(w))
    }

    /// (neighbor, edge index) pairs sorted by neighbor id.
    pub(crate) fn adjacency(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: VertexId, w: VertexId) -> bool {
        let (lo, hi) = (u.min(w), u.max(w));
        self.edges.binary_search(&(lo, hi)).is_ok()
    }
}
