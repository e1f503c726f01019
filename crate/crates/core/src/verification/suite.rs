//! Algebraic identity checks for the truncated algebra.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::report::CheckReport;
use crate::algebra::bracket::{lie_poisson_sum, nambu_sum};
use crate::algebra::functional::{
    enstrophy_gradient, hamiltonian_gradient, Functional, Polynomial,
};
use crate::algebra::killing::{
    killing_closed_value, killing_matrix, orthogonality_expected, scaled_casimir_sum,
};
use crate::algebra::nambu::{nambu_zeitlin, NambuTensor};
use crate::algebra::structure::StructureConstants;
use crate::dynamics::{random_shell_field, rhs_fast, rhs_lie_poisson, rhs_naive, rhs_nambu};
use crate::error::Result;
use crate::field::{enstrophy, ModeField};
use crate::grid::{TruncationGrid, WaveVector};

pub const ANTISYMMETRY_TOLERANCE: f64 = 1e-15;
pub const IDENTITY_TOLERANCE: f64 = 1e-12;
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-11;
pub const RHS_TOLERANCE: f64 = 1e-10;
pub const MAX_SUITE_N: i64 = 15;

pub const RANDOM_SAMPLES: usize = 20;
pub const RHS_SAMPLES: usize = 10;

/// Which structure constants the first three checks read.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub constants: Option<StructureConstants>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 1,
            constants: None,
        }
    }
}

pub fn run_identity_suite(grid: TruncationGrid, seed: u64) -> Vec<CheckReport> {
    run_identity_suite_with(
        grid,
        &SuiteOptions {
            seed,
            constants: None,
        },
    )
}

/// Runs every check in order. Failures are reported, never raised.
pub fn run_identity_suite_with(grid: TruncationGrid, options: &SuiteOptions) -> Vec<CheckReport> {
    let constants = options
        .constants
        .clone()
        .unwrap_or(StructureConstants::Zeitlin(grid));
    let seed = options.seed;
    let n = grid.n();
    let mut reports = vec![
        check_antisymmetry(&constants),
        check_jacobi(&constants),
        check_killing(grid, &constants),
        check_orthogonality(grid),
        check_casimir_identification(grid, seed),
        check_casimir_property(grid, seed),
        check_reduction(grid, seed),
        check_nambu_antisymmetry(grid),
        check_rhs_equivalence(grid, seed),
    ];
    for r in &mut reports {
        r.params.entry("n".into()).or_insert(n.into());
    }
    reports
}

fn failed(name: &str, err: crate::error::Error) -> CheckReport {
    CheckReport::new(name, f64::INFINITY, 0.0).detail(format!("error: {err}"))
}

pub fn check_antisymmetry(constants: &StructureConstants) -> CheckReport {
    let start = Instant::now();
    let name = "structure constant antisymmetry";
    let r = (|| -> Result<f64> {
        let scale = constants.max_abs()?;
        Ok(constants.antisymmetry_residual()? / scale.max(f64::MIN_POSITIVE))
    })();
    match r {
        Ok(res) => CheckReport::new(name, res, ANTISYMMETRY_TOLERANCE).timed(start),
        Err(e) => failed(name, e),
    }
}

pub fn check_jacobi(constants: &StructureConstants) -> CheckReport {
    let start = Instant::now();
    let name = "Jacobi identity (brute force)";
    match constants.jacobi_residual() {
        Ok((worst, scale)) => {
            let rel = if scale > 0.0 { worst / scale } else { worst };
            CheckReport::new(name, rel, IDENTITY_TOLERANCE)
                .detail(format!(
                    "max |cyclic sum| = {worst:.3e}, max |term| = {scale:.3e}"
                ))
                .timed(start)
        }
        Err(e) => failed(name, e),
    }
}

/// Brute-force Killing matrix of `constants` against the closed form of `grid`.
pub fn check_killing(grid: TruncationGrid, constants: &StructureConstants) -> CheckReport {
    let start = Instant::now();
    let name = "Killing form closed vs brute force";
    let k = match killing_matrix(constants) {
        Ok(k) if k.len() == grid.len() * grid.len() => k,
        Ok(_) => {
            return failed(
                name,
                crate::error::Error::SizeMismatch {
                    expected: grid.len(),
                    got: constants.dim().unwrap_or(0),
                },
            )
        }
        Err(e) => return failed(name, e),
    };
    let value = killing_closed_value(grid);
    let dim = grid.len();
    let mut worst: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let closed = if i + j == dim - 1 { value } else { 0.0 };
            worst = worst.max((k[i * dim + j] - closed).abs());
        }
    }
    CheckReport::new(name, worst / value.abs(), IDENTITY_TOLERANCE)
        .detail(format!("closed value -n^4/(2 (2 pi)^6) = {value:.15e}"))
        .timed(start)
}

/// `sum_k cos(2 pi/n k.l) = n^2 delta - 1` for every `l` in `[-n, n]^2`.
pub fn check_orthogonality(grid: TruncationGrid) -> CheckReport {
    let start = Instant::now();
    let n = grid.n();
    let mut worst: f64 = 0.0;
    for l1 in -n..=n {
        for l2 in -n..=n {
            let l = WaveVector::new(l1, l2);
            let sum: f64 = grid.modes().map(|k| grid.cos_phase(k.dot(l))).sum();
            worst = worst.max((sum - orthogonality_expected(grid, l)).abs());
        }
    }
    CheckReport::new("orthogonality relation", worst, ORTHOGONALITY_TOLERANCE)
        .param("l_bound", n)
        .detail("absolute error over all l in [-n, n]^2")
        .timed(start)
}

fn random_field(grid: TruncationGrid, seed: u64) -> ModeField {
    random_shell_field(grid, 1, 2 * grid.n() * grid.n(), 1.0, seed)
}

/// `r C = E` on random fields.
pub fn check_casimir_identification(grid: TruncationGrid, seed: u64) -> CheckReport {
    let start = Instant::now();
    let name = "Casimir identification r C = E";
    let mut worst: f64 = 0.0;
    for s in 0..RANDOM_SAMPLES as u64 {
        let field = random_field(grid, seed.wrapping_add(s));
        let r = (|| -> Result<f64> {
            let (value, magnitude) = scaled_casimir_sum(grid, &field)?;
            let e = enstrophy(&field)?;
            Ok((value - e).abs() / magnitude.max(e.abs()))
        })();
        match r {
            Ok(rel) => worst = worst.max(rel),
            Err(e) => return failed(name, e),
        }
    }
    CheckReport::new(name, worst, IDENTITY_TOLERANCE)
        .param("seed", seed)
        .param("samples", RANDOM_SAMPLES)
        .timed(start)
}

fn polynomial(grid: TruncationGrid, rng: &mut ChaCha8Rng) -> Polynomial {
    Polynomial::random_real(grid, rng, 4, 3)
}

/// `{F, E} = 0`, relative to the scale of `{F, H}`.
pub fn check_casimir_property(grid: TruncationGrid, seed: u64) -> CheckReport {
    let start = Instant::now();
    let name = "Casimir property {F, E} = 0";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xCA51);
    let mut worst: f64 = 0.0;
    for s in 0..RANDOM_SAMPLES as u64 {
        let field = random_field(grid, seed.wrapping_add(100 + s));
        let f = polynomial(grid, &mut rng);
        let gf = f.gradient(&field);
        let with_e = lie_poisson_sum(&field, &gf, &enstrophy_gradient(&field));
        let with_h = lie_poisson_sum(&field, &gf, &hamiltonian_gradient(&field));
        match (with_e, with_h) {
            (Ok(e), Ok(h)) => {
                let scale = h.value.norm().max(h.magnitude).max(e.magnitude);
                worst = worst.max(e.value.norm() / scale.max(f64::MIN_POSITIVE));
            }
            (Err(err), _) | (_, Err(err)) => return failed(name, err),
        }
    }
    CheckReport::new(name, worst, IDENTITY_TOLERANCE)
        .param("seed", seed)
        .param("samples", RANDOM_SAMPLES)
        .timed(start)
}

/// `{F1, F2, E}` (Nambu) equals `{F1, F2}` (Lie-Poisson).
pub fn check_reduction(grid: TruncationGrid, seed: u64) -> CheckReport {
    let start = Instant::now();
    let name = "reduction {F1, F2, E} = {F1, F2}";
    let tensor = NambuTensor::Zeitlin(grid);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4ED0);
    let mut worst: f64 = 0.0;
    for s in 0..RANDOM_SAMPLES as u64 {
        let field = random_field(grid, seed.wrapping_add(200 + s));
        let g1 = polynomial(grid, &mut rng).gradient(&field);
        let g2 = polynomial(grid, &mut rng).gradient(&field);
        let lp = lie_poisson_sum(&field, &g1, &g2);
        let nb = nambu_sum(&tensor, grid, &g1, &g2, &enstrophy_gradient(&field));
        match (lp, nb) {
            (Ok(lp), Ok(nb)) => {
                let scale = lp.value.norm().max(lp.magnitude).max(nb.magnitude);
                worst = worst.max((lp.value - nb.value).norm() / scale.max(f64::MIN_POSITIVE));
            }
            (Err(err), _) | (_, Err(err)) => return failed(name, err),
        }
    }
    CheckReport::new(name, worst, IDENTITY_TOLERANCE)
        .param("seed", seed)
        .param("samples", RANDOM_SAMPLES)
        .timed(start)
}

/// All six index permutations of every triple with a satisfied delta.
pub fn check_nambu_antisymmetry(grid: TruncationGrid) -> CheckReport {
    let start = Instant::now();
    let name = "Nambu tensor total antisymmetry";
    let modes: Vec<WaveVector> = grid.modes().collect();
    let n = |a, b, c| nambu_zeitlin(grid, a, b, c).expect("modes are in the grid");
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    let mut triples = 0usize;
    for &i in &modes {
        for &j in &modes {
            let k = grid.mod_reduce(-(i + j));
            if k.is_zero() {
                continue;
            }
            triples += 1;
            let base = n(i, j, k);
            scale = scale.max(base.abs());
            let perms = [
                (n(j, k, i), 1.0),
                (n(k, i, j), 1.0),
                (n(j, i, k), -1.0),
                (n(i, k, j), -1.0),
                (n(k, j, i), -1.0),
            ];
            for (v, sign) in perms {
                worst = worst.max((v - sign * base).abs());
            }
        }
    }
    CheckReport::new(
        name,
        worst / scale.max(f64::MIN_POSITIVE),
        IDENTITY_TOLERANCE,
    )
    .detail(format!("{triples} index triples with a satisfied delta"))
    .timed(start)
}

fn rel_diff(a: &ModeField, b: &ModeField) -> f64 {
    let scale = a.max_abs().max(b.max_abs());
    if scale == 0.0 {
        0.0
    } else {
        a.max_abs_diff(b) / scale
    }
}

/// Naive, Lie-Poisson, Nambu and FFT tendencies agree componentwise.
pub fn check_rhs_equivalence(grid: TruncationGrid, seed: u64) -> CheckReport {
    let start = Instant::now();
    let mut worst = [0.0f64; 3];
    for s in 0..RHS_SAMPLES as u64 {
        let field = random_field(grid, seed.wrapping_add(300 + s));
        let naive = rhs_naive(&field);
        for (w, other) in
            worst
                .iter_mut()
                .zip([rhs_lie_poisson(&field), rhs_nambu(&field), rhs_fast(&field)])
        {
            *w = w.max(rel_diff(&naive, &other));
        }
    }
    let max = worst.iter().cloned().fold(0.0, f64::max);
    CheckReport::new("RHS equivalence", max, RHS_TOLERANCE)
        .param("seed", seed)
        .param("samples", RHS_SAMPLES)
        .detail(format!(
            "vs naive: lie-poisson {:.2e}, nambu {:.2e}, fft {:.2e}",
            worst[0], worst[1], worst[2]
        ))
        .timed(start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;

    #[test]
    fn suite_passes_at_three_and_five() {
        for n in [3, 5] {
            let reports = run_identity_suite(build_grid(n).unwrap(), 1);
            assert_eq!(reports.len(), 9);
            for r in &reports {
                assert!(r.passed, "n={n}: {r:#?}");
            }
        }
    }

    #[test]
    fn every_single_sign_flip_is_detected() {
        let g = build_grid(3).unwrap();
        let dense = StructureConstants::Zeitlin(g).to_dense().unwrap();
        let nonzero: Vec<_> = dense.triples().map(|(i, j, k, _)| (i, j, k)).collect();
        assert!(!nonzero.is_empty());
        for (i, j, k) in nonzero {
            let mut bad = dense.clone();
            bad.flip_sign(i, j, k);
            let constants = StructureConstants::Generic(bad);
            assert!(!check_antisymmetry(&constants).passed);
            assert!(!check_jacobi(&constants).passed, "({i},{j},{k})");
        }
    }

    #[test]
    fn residuals_are_deterministic() {
        let g = build_grid(3).unwrap();
        let strip = |rs: Vec<CheckReport>| -> Vec<(String, f64)> {
            rs.into_iter().map(|r| (r.name, r.max_residual)).collect()
        };
        assert_eq!(
            strip(run_identity_suite(g, 5)),
            strip(run_identity_suite(g, 5))
        );
    }
}
