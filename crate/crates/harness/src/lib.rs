//! Benchmark harness: runs the query catalog over a ladder of document
//! sizes against the builtin engine or a SPARQL protocol endpoint, and
//! renders success matrices, timing tables and penalized means.

pub mod config;
pub mod endpoint;
pub mod metrics;
pub mod outcome;
pub mod probe;
pub mod report;
pub mod runner;
pub mod server;

pub use config::{RunConfig, Target};
pub use metrics::{penalized_means, Means, PENALTY_SECS};
pub use outcome::{QueryOutcome, Rows, Status};
pub use report::BenchReport;
pub use runner::run;
