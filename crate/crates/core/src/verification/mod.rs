//! Named, repeatable checks with pass/fail reports.

pub mod convergence;
pub mod counterexample;
pub mod report;
pub mod suite;

pub use convergence::{default_pairs, default_sizes, run_convergence_study, ConvergenceStudy};
pub use counterexample::{run_counterexample, run_jacobi_scan, Counterexample};
pub use report::{all_passed, format_reports, CheckReport};
pub use suite::{run_identity_suite, run_identity_suite_with, SuiteOptions};
