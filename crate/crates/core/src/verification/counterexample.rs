//! The explicit six-tuple on which the generalized Jacobi identity fails.

use std::f64::consts::PI;
use std::time::Instant;

use super::report::CheckReport;
use crate::algebra::nambu::{
    gen_jacobi_residual, scan_gen_jacobi_with, tuple_indices, JacobiForm, JacobiResidual,
    NambuTensor, ScanResult, TensorIndex, COUNTEREXAMPLE,
};
use crate::error::{Error, Result};
use crate::grid::TruncationGrid;

pub const SUMMAND_TOLERANCE: f64 = 1e-12;

/// `((n/2 pi) sin(2 pi/n))^2 / (2 pi)^8`.
pub fn expected_first_summand_zeitlin(n: i64) -> f64 {
    let n = n as f64;
    let s = n / (2.0 * PI) * (2.0 * PI / n).sin();
    s * s / (2.0 * PI).powi(8)
}

/// `1 / (2 pi)^8`.
pub fn expected_first_summand_continuum() -> f64 {
    1.0 / (2.0 * PI).powi(8)
}

fn tuple() -> [TensorIndex; 6] {
    COUNTEREXAMPLE.map(TensorIndex::Mode)
}

/// Relative error of the first summand against `expected`; an infinite
/// residual if either of the other two summands is not exactly zero.
fn summand_residual(r: &JacobiResidual, expected: f64) -> f64 {
    if r.terms[1] != 0.0 || r.terms[2] != 0.0 {
        return f64::INFINITY;
    }
    (r.terms[0] - expected).abs() / expected
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub zeitlin: JacobiResidual,
    pub continuum: JacobiResidual,
    pub report: CheckReport,
}

/// Evaluates the tuple for the truncated tensor at `n` and the continuum tensor.
pub fn run_counterexample(n: i64) -> Result<Counterexample> {
    let start = Instant::now();
    let grid = TruncationGrid::new(n)?;
    if n < 5 {
        return Err(Error::Config(format!(
            "the counterexample tuple needs n >= 5, got {n}"
        )));
    }
    let zeitlin = gen_jacobi_residual(&NambuTensor::Zeitlin(grid), tuple())?;
    let continuum = gen_jacobi_residual(&NambuTensor::Continuum, tuple())?;
    let ez = expected_first_summand_zeitlin(n);
    let ec = expected_first_summand_continuum();
    let residual = summand_residual(&zeitlin, ez).max(summand_residual(&continuum, ec));
    let fmt =
        |r: &JacobiResidual| format!("({:.15e}, {:e}, {:e})", r.terms[0], r.terms[1], r.terms[2]);
    let labels: Vec<String> = COUNTEREXAMPLE.iter().map(|v| v.to_string()).collect();
    let report = CheckReport::new(
        "generalized Jacobi counterexample",
        residual,
        SUMMAND_TOLERANCE,
    )
    .param("n", n)
    .param("tuple", labels.join(" "))
    .detail(format!("zeitlin summands   {}", fmt(&zeitlin)))
    .detail(format!("zeitlin expected   ({ez:.15e}, 0, 0)"))
    .detail(format!("continuum summands {}", fmt(&continuum)))
    .detail(format!("continuum expected ({ec:.15e}, 0, 0)"))
    .timed(start);
    Ok(Counterexample {
        zeitlin,
        continuum,
        report,
    })
}

/// Exhaustive scan of the truncated tensor. Passes iff at least one
/// violation is found and the counterexample's symmetry class is among them.
pub fn run_jacobi_scan(n: i64, form: JacobiForm) -> Result<(CheckReport, ScanResult)> {
    let start = Instant::now();
    let grid = TruncationGrid::new(n)?;
    if n < 5 {
        return Err(Error::Config(format!(
            "the counterexample tuple needs n >= 5, got {n}"
        )));
    }
    let tensor = NambuTensor::Zeitlin(grid);
    let scan = scan_gen_jacobi_with(&tensor, None, form)?;
    let indices = tuple_indices(&tensor, &tuple(), None)?;
    let found = scan.contains_class(indices);
    let classes = scan.deduplicated().len();
    let residual = if !scan.violations.is_empty() && found {
        0.0
    } else {
        f64::INFINITY
    };
    let report = CheckReport::new("generalized Jacobi scan", residual, 0.0)
        .param("n", n)
        .param("form", format!("{form:?}").to_lowercase())
        .detail(format!("{} tuples evaluated", scan.evaluated))
        .detail(format!(
            "{} violating tuples in {classes} symmetry classes (tolerance {:.3e})",
            scan.violations.len(),
            scan.tolerance
        ))
        .detail(format!(
            "counterexample tuple {}",
            if found { "flagged" } else { "NOT flagged" }
        ))
        .timed(start);
    Ok((report, scan))
}
