//! Exact computations around the Kromatic symmetric function of graphs.

pub mod canon;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod independence;
pub mod search;
pub mod suites;
pub mod sym;

pub use canon::{canonical_form, is_isomorphic, CanonCode, CanonicalForm};
pub use error::{KsfError, Result};
pub use graph::{Graph, WeightedGraph, MAX_VERTICES};
