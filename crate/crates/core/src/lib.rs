//! Path-graph recognition through separator profiles and weak colorings.
//!
//! A chordal graph is a path graph when its maximal cliques can be arranged
//! as the nodes of a tree such that every vertex's cliques form a path. The
//! [`recognizer`] decides this by inspecting, for every clique separator, how
//! the pieces of the graph hang off it, and returns either a witness coloring
//! or an explicit forbidden configuration. The [`oracle`] module decides the
//! same question by exhaustive search and is used for cross-checking.

pub mod certificate;
pub mod chordal;
pub mod coloring;
pub mod error;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod recognizer;
pub mod selftest;
pub mod separation;
pub mod template;

pub use error::{Error, Result};
pub use graph::{parse_edge_list, SimpleGraph, VertexId, VertexSet};
