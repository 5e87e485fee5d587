//! A laboratory for color refinement and related graph invariants on small
//! simple graphs.
//!
//! Graphs have at most 64 vertices and are stored as bit rows. Invariants
//! are available behind the [`invariant::Invariant`] trait, corpus-scale
//! experiments behind [`experiments::Experiment`].

pub mod covers;
pub mod deck;
pub mod digest;
pub mod enumerate;
pub mod experiments;
pub mod graph;
pub mod invariant;
pub mod io;
pub mod refine;
pub mod wl2;

pub use graph::{Graph, GraphError, VertexSet};

/// Version of every digest-producing algorithm. Digests, dumps and reports
/// are comparable only between runs with the same tag.
pub const VERSION_TAG: &str = "crlab-digest-v1";
