//! Combinatorial engine for binomial edge ideals of corona-type graph products.
//!
//! The crate builds corona and L-corona products, enumerates cutsets, decides
//! unmixedness and accessibility combinatorially, and evaluates closed-form
//! dimension, depth, regularity and extremal-Betti-position formulas for the
//! families where they are known.

pub mod bms;
pub mod cas;
pub mod corona;
pub mod corpus;
pub mod cutsets;
pub mod graph;
pub mod invariants;
pub mod vertex_set;

#[cfg(test)]
pub(crate) mod testutil;

pub use graph::{Diameter, Graph, GraphError};
pub use vertex_set::VertexSet;
