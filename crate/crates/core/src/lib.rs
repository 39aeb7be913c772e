//! Counting pebble-game equivalences and Sherali-Adams style isomorphism
//! systems over exact rational and boolean arithmetic.

pub mod graph;
pub mod matrix;

pub use graph::{brute_force_isomorphic, parse_graph, Graph, GraphError, VertexColouring};
pub mod equiv;
pub mod cfi;
pub mod systems;
pub mod solvers;
pub mod hierarchy;
