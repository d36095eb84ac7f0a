//! Front-end plumbing for the `hypervel` binary: operation evaluation,
//! composition tables and seeded law verification.

pub mod config;
pub mod eval;
pub mod output;
pub mod report;
pub mod rng;
pub mod suites;
pub mod table;

pub use config::{OutputFormat, RunConfig};
pub use report::{PropertyReport, Verdict};
pub use suites::Suite;
