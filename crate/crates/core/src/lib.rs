//! Exact maximum induced matching for graphs of maximum degree 3.

pub mod baseline;
pub mod bench;
pub mod bisection;
pub mod dimacs;
pub mod error;
pub mod generate;
pub mod graph;
pub mod measure;
pub mod oracle;
pub mod rules;
pub mod solver;
pub mod state;
pub mod table;

pub use error::*;
pub use graph::{is_induced_matching, Edge, EdgeSet, Graph, NodeId};
