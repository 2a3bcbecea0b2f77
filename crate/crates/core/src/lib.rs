//! Small strongly biconnected spanning subgraphs of directed graphs.
//!
//! A digraph is *strongly biconnected* when it is strongly connected and its
//! underlying undirected graph has no articulation point. This crate finds
//! small spanning subgraphs that preserve strong biconnectivity:
//!
//! - [`solvers::approx_msbss`] — 3-approximation built from an out-tree and an
//!   in-tree plus a biconnectivity augmentation loop,
//! - [`solvers::augment_to_biconnected`] — the augmentation loop on its own,
//!   applicable to any strongly connected seed,
//! - [`solvers::combine_and_augment`] — combines a strongly connected spanning
//!   subgraph with an undirected 2-vertex-connected edge set,
//! - [`exact`] — brute-force exact optima for desk-scale instances, plus a
//!   greedy 1-minimal explorer,
//! - [`instances`] — edge-list/DOT I/O, seeded generators, and a bundled
//!   13-vertex showcase instance.
//!
//! Vertices are dense `0..n` ids ([`VertexId`]); file formats use 1-indexed
//! labels (see [`instances`]).
//!
//! ```
//! use sbss::{graph::VertexId, instances, solvers};
//!
//! let g = instances::gen_random_sb(10, 18, 7)?;
//! let report = solvers::approx_msbss(&g, VertexId::new(0))?;
//! assert!(report.size <= 3 * (g.n() - 1));
//! print!("{}", instances::emit_edge_list(&g.subgraph(&report.solution)?));
//! # Ok::<(), sbss::Error>(())
//! ```

pub mod connectivity;
mod error;
pub mod exact;
pub mod graph;
pub mod instances;
pub mod solvers;

pub use error::Error;
pub use graph::{Arc, ArcSubset, Digraph, UndirectedView, VertexId};

pub type Result<T> = std::result::Result<T, Error>;
