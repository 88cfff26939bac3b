//! Manifest-driven check runner behind the `sflab` binary.

pub mod expr;
pub mod manifest;
pub mod report;
pub mod tasks;

pub use manifest::Manifest;
pub use report::{CheckRecord, Report, Status};
pub use tasks::{cohomology_report, run_tasks, RunOptions};
