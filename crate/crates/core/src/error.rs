use thiserror::Error;

use crate::graph::VertexId;

/// Errors from graph construction, connectivity checks, solvers, and the
/// exact search. Vertex ids in messages are 0-indexed; front ends that speak
/// 1-indexed labels translate before display.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {vertex} is not allowed")]
    SelfLoop { vertex: usize },

    #[error("arc index {index} out of range for a graph with {m} arcs")]
    ArcIndexOutOfRange { index: usize, m: usize },

    #[error("arc subset belongs to a graph with {subset_m} arcs, not {m}")]
    SubsetGraphMismatch { subset_m: usize, m: usize },

    #[error("graph is not strongly connected")]
    NotStronglyConnected,

    #[error("undirected graph is disconnected")]
    NotConnected,

    #[error("undirected graph has articulation point {vertex}")]
    HasArticulationPoint { vertex: VertexId },

    #[error("vertex {vertex} is not reachable from root {root}")]
    UnreachableFromRoot { root: VertexId, vertex: VertexId },

    #[error("root {root} is not reachable from vertex {vertex}")]
    CannotReachRoot { root: VertexId, vertex: VertexId },

    #[error("seed subgraph is not strongly connected")]
    SeedNotStronglyConnected,

    #[error("no arc outside the working subgraph joins two different blocks; input graph is not strongly biconnected")]
    AugmentStalled,

    #[error("edge {{{u}, {w}}} has no orientation in the graph")]
    MissingUndirectedEdge { u: VertexId, w: VertexId },

    #[error("edge set is not a biconnected spanning subgraph of the underlying graph")]
    EdgeSetNotBiconnected,

    #[error("combined subgraph failed the strongly biconnected check")]
    CombineNotBiconnected,

    #[error("instance too large for exact search: {size} exceeds cap {cap}")]
    InstanceTooLarge { size: usize, cap: usize },

    #[error("deletion order must be a permutation of all {m} arc indices")]
    DeletionOrderNotPermutation { m: usize },

    #[error("generator needs at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },

    #[error("cannot place {requested} extra arcs, at most {max} are available")]
    TooManyExtraArcs { requested: usize, max: usize },

    #[error("target arc count {target} outside feasible range [{min}, {max}]")]
    TargetArcsOutOfRange { target: usize, min: usize, max: usize },
}
