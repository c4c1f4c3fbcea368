//! Seeded corpora, invariant suites, scenarios and reports.

pub mod exec;
pub mod gen;
pub mod report;
pub mod scenario;
pub mod suites;

pub use exec::{Exec, WORKERS_ENV};
pub use report::{Check, Report, Sense, Status};
pub use scenario::{run_scenario, Scenario};
pub use suites::{find, run_suite, SuiteConfig, SUITES};
