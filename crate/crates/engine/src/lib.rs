//! Reference query engine: an in-memory triple store, a SPARQL subset
//! evaluator, and the catalog of benchmark queries.

pub mod queries;
pub mod sparql;
pub mod store;

pub use store::{TermId, TripleStore};
