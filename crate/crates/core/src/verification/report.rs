use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of one named check. `passed` is exactly `max_residual <= tolerance`.
///
/// Checks that assert a predicate rather than a residual (for example that a
/// value is exactly zero) report an infinite residual when the predicate fails.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub runtime_seconds: f64,
    pub details: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, max_residual: f64, tolerance: f64) -> Self {
        CheckReport {
            name: name.into(),
            params: BTreeMap::new(),
            max_residual,
            tolerance,
            passed: max_residual <= tolerance,
            runtime_seconds: 0.0,
            details: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn detail(mut self, line: impl Into<String>) -> Self {
        self.details.push(line.into());
        self
    }

    pub(crate) fn timed(mut self, start: Instant) -> Self {
        self.runtime_seconds = start.elapsed().as_secs_f64();
        self
    }
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

/// Fixed-width text table followed by each report's detail lines.
pub fn format_reports(reports: &[CheckReport]) -> String {
    let width = reports
        .iter()
        .map(|r| r.name.len())
        .max()
        .unwrap_or(4)
        .max(5);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:>4}  {:>12}  {:>10}  {:>9}",
        "check", "pass", "residual", "tolerance", "time [s]"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:<width$}  {:>4}  {:>12.3e}  {:>10.1e}  {:>9.3}",
            r.name,
            if r.passed { "ok" } else { "FAIL" },
            r.max_residual,
            r.tolerance,
            r.runtime_seconds
        );
    }
    for r in reports.iter().filter(|r| !r.details.is_empty()) {
        let _ = writeln!(out, "\n[{}]", r.name);
        for d in &r.details {
            let _ = writeln!(out, "  {d}");
        }
    }
    out
}
