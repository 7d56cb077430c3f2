//! Recognition of fuzzy circular interval graphs with checkable certificates.
//!
//! A YES answer always comes with a [`Representation`] that
//! [`Representation::validate`] accepts against the input graph.

pub mod cig;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod pairs;
pub mod pipeline;
pub mod reduction;
pub mod representation;
pub mod tightening;

pub use graph::{Graph, GraphError, Vertex};
pub use representation::{Arc, Kind, PairStatus, Point, Representation, Violation};
