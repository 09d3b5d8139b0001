//! Command-line verification harness companion to `altspec-core`: geometry
//! configuration files, named verification suites, and deterministic
//! JSON/text reports.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{ConfigError, GeometryConfig};
pub use report::{emit, sector_element_json, table_json, CheckResult, Format, SuiteReport};
pub use suites::{
    classify_homs_report, fluctuate_report, run_suite, signs_report, solve_derivations_report,
    Suite, SuiteConfigError,
};
