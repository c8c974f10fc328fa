//! Maximum rainbow matching: exact solvers for restricted forest classes, a
//! local-search approximation on the color-line graph, and hardness gadgets.

pub mod analysis;
pub mod approx;
pub mod bipartite;
pub mod color_line;
pub mod corpus;
pub mod exact;
pub mod gadgets;
pub mod graph;
pub mod report;
pub mod simple;

pub use graph::{ColorId, ColoredGraph, EdgeId, RainbowMatching, VertexId};
