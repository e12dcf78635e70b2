//! Seeded experiments: conjecture scans, the property suite and their reports.

pub mod report;
pub mod sampling;
pub mod scan;
pub mod suite;

pub use report::{Format, Report};
pub use sampling::Range;
pub use scan::{
    parse_range, replay_counterexample, scan_conjecture_a, scan_conjecture_b, search_minimal_p, ConjectureReport,
    ScanConfig,
};
pub use suite::{run_property_suite, Mutation, SuiteReport};
