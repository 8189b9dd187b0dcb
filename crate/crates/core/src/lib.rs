//! Exhaustive generation and explicit constructions of `(k;g,d)`-cages:
//! smallest `k`-regular graphs with girth `g` and diameter `d`.

pub mod bounds;
pub mod canon;
pub mod constructions;
pub mod generator;
pub mod graph;
pub mod graph6;
pub mod metrics;
pub mod oracle;

pub use graph::{Graph, GraphError, INF, MAX_ORDER};
