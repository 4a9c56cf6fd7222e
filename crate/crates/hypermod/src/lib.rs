//! Community detection on hypergraphs via modularity maximization.
//!
//! The crate bundles a small hypergraph data model, several hypergraph
//! modularity criteria, heuristic optimizers for each of them, synthetic
//! benchmark generators, and a benchmarking harness with CSV output. A CLI
//! binary (`hypermod`) exposes the same functionality on files.
//!
//! # Quick tour
//!
//! Build a hypergraph from an edge list, cluster it, and score the result:
//!
//! ```
//! use hypermod::{Hypergraph, Partition};
//! use hypermod::modularity::{q_strict, q_wclique};
//!
//! let h = Hypergraph::new(4, vec![
//!     (vec![1, 2, 3], 1),
//!     (vec![1, 2], 1),
//!     (vec![3, 4], 1),
//! ]).unwrap();
//!
//! let p = Partition::from_labels(vec![1, 1, 2, 2]).unwrap();
//! assert!((q_strict(&h, &p).unwrap() - 245.0 / 1029.0).abs() < 1e-12);
//! assert!((q_wclique(&h, &p).unwrap() - 10.0 / 42.0).abs() < 1e-12);
//! ```
//!
//! The optimizers all share the same calling shape: a hypergraph, an options
//! struct, and a seed, returning an [`optimize::OptimizerResult`].

pub mod bench;
pub mod error;
pub mod generate;
pub mod guide;
pub mod hypergraph;
pub mod io;
pub mod louvain;
pub mod modularity;
pub mod optimize;
pub mod partvec;
pub mod presets;

pub use error::{Error, Result};
pub use hypergraph::{Hyperedge, Hypergraph, NodeId, Partition, WeightedGraph};
