//! Length-metric tools for edge-weighted graphs: shortest-path distances,
//! lazily generated infinite graphs and their truncations, boundary and end
//! approximations, special length assignments, cycle-space algebra and
//! Euler/Hamilton tour transforms.

pub mod completion;
pub mod cyclespace;
pub mod generators;
pub mod graph;
pub mod length;
pub mod linegraph;
pub mod metric;
pub mod tours;

pub use graph::{GraphError, WeightedGraph};
pub use length::{Length, Rational};
