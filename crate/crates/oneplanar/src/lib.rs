//! Small-graph toolkit for 1-planar extremal problems: clique counting,
//! canonical forms, 1-drawings, a 1-planarity search, extremal class
//! generation and planar graph censuses.

pub mod canon;
pub mod census;
pub mod connectivity;
pub mod count;
pub mod drawing;
pub mod extremal;
pub mod formulas;
pub mod graph;
pub mod graph6;
pub mod oneplanarity;
pub mod planarity;

pub use graph::{Graph, GraphError, VertexSet};
