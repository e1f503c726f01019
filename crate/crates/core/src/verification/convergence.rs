//! Decay of the truncation error towards the continuum algebra.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::report::CheckReport;
use crate::algebra::bracket::nambu_sum;
use crate::algebra::functional::{Functional, Monomial, Polynomial};
use crate::algebra::nambu::NambuTensor;
use crate::algebra::structure::{alpha_continuum, alpha_zeitlin};
use crate::dynamics::random_shell_field;
use crate::error::{Error, Result};
use crate::field::{to_physical_resampled, ModeField, PhysicalField, TORUS_AREA};
use crate::grid::{TruncationGrid, WaveVector};

pub const EXPONENT_BAND: (f64, f64) = (1.8, 2.2);

/// Cross product 5. Its fit only enters the band once `n = 81` is included,
/// since the leading-order regime needs `2 pi |i x j| / n` small.
pub const WIDE_PAIR: (WaveVector, WaveVector) = (WaveVector::new(2, 1), WaveVector::new(1, 3));

/// Non-collinear pairs with cross products 1 to 4, plus one collinear pair.
pub fn default_pairs() -> Vec<(WaveVector, WaveVector)> {
    [
        ((1, 0), (0, 1)),
        ((1, 1), (-1, 1)),
        ((1, 0), (1, 2)),
        ((2, 1), (1, 2)),
        ((2, 0), (1, 2)),
        ((1, 1), (2, 2)),
    ]
    .into_iter()
    .map(|(a, b)| (a.into(), b.into()))
    .collect()
}

pub fn default_sizes() -> Vec<i64> {
    vec![11, 21, 41, 81]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub i1: i64,
    pub i2: i64,
    pub j1: i64,
    pub j2: i64,
    pub n: i64,
    pub zeitlin: f64,
    pub continuum: f64,
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairFit {
    pub i: WaveVector,
    pub j: WaveVector,
    pub cross: i64,
    /// `None` when the error vanishes identically (collinear pairs).
    pub exponent: Option<f64>,
    /// `error(n_a) / error(n_b)` for consecutive sizes.
    pub ratios: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionalRow {
    pub n: i64,
    pub zeitlin: f64,
    pub continuum: f64,
    pub difference: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceStudy {
    pub report: CheckReport,
    pub rows: Vec<ConvergenceRow>,
    pub fits: Vec<PairFit>,
    pub functional: Vec<FunctionalRow>,
    pub functional_exponent: Option<f64>,
    /// The continuum bracket as an area integral on the torus.
    pub pde_integral: f64,
}

/// Least-squares slope of `ln y` against `ln x`, negated.
pub fn fit_decay_exponent(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() < 2 || xs.len() != ys.len() || ys.iter().any(|&y| y <= 0.0 || !y.is_finite()) {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let m = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / m, ly.iter().sum::<f64>() / m);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    Some(-sxy / sxx)
}

fn validate(pairs: &[(WaveVector, WaveVector)], ns: &[i64]) -> Result<TruncationGrid> {
    if pairs.is_empty() {
        return Err(Error::Config("no wave-vector pairs given".into()));
    }
    if ns.len() < 2 {
        return Err(Error::Config(
            "at least two grid sizes are needed for a fit".into(),
        ));
    }
    let grids = ns
        .iter()
        .map(|&n| TruncationGrid::new(n))
        .collect::<Result<Vec<_>>>()?;
    let smallest = *grids.iter().min_by_key(|g| g.n()).expect("non-empty");
    for &(i, j) in pairs {
        for v in [i, j, i + j] {
            if !smallest.contains(v) {
                return Err(Error::NotInGrid(v, smallest.n()));
            }
        }
    }
    Ok(smallest)
}

/// Copies `field` onto a larger grid, zero elsewhere.
fn embed(field: &ModeField, grid: TruncationGrid) -> Result<ModeField> {
    let mut out = ModeField::zeros(grid);
    for (k, c) in field.grid().modes().zip(field.coefficients()) {
        out.set(k, *c)?;
    }
    Ok(out)
}

fn remap(poly: &Polynomial, from: TruncationGrid, to: TruncationGrid) -> Result<Polynomial> {
    let terms = poly
        .terms
        .iter()
        .map(|t| {
            let modes = t
                .modes
                .iter()
                .map(|&m| to.linear_index(from.from_linear(m)?))
                .collect::<Result<Vec<_>>>()?;
            Ok(Monomial {
                coefficient: t.coefficient,
                modes,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(terms))
}

/// Fixed polynomial functionals and field supported in `|k|_inf <= 1`.
struct FunctionalProbe {
    grid: TruncationGrid,
    field: ModeField,
    functionals: [Polynomial; 3],
}

impl FunctionalProbe {
    fn new(seed: u64) -> Self {
        let grid = TruncationGrid::new(3).expect("valid size");
        let field = random_shell_field(grid, 1, 2, 1.0, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let functionals = [0, 1, 2].map(|_| Polynomial::random_real(grid, &mut rng, 3, 2));
        FunctionalProbe {
            grid,
            field,
            functionals,
        }
    }

    fn bracket(&self, tensor: &NambuTensor, grid: TruncationGrid) -> Result<Complex64> {
        let field = embed(&self.field, grid)?;
        let grads = self
            .functionals
            .iter()
            .map(|f| Ok(remap(f, self.grid, grid)?.gradient(&field)))
            .collect::<Result<Vec<_>>>()?;
        Ok(nambu_sum(tensor, grid, &grads[0], &grads[1], &grads[2])?.value)
    }
}

/// `int phi1 J(phi2, phi3) dA` with `(phi_a)^_{-k} = (dF_a/dzeta_k) / (2 pi)^2`,
/// evaluated by a quadrature that is exact for the band-limited integrand.
pub fn pde_nambu_integral(field: &ModeField, functionals: [&dyn Functional; 3]) -> Result<f64> {
    let grid = field.grid();
    let side = 3 * grid.half_width() as usize + 1;
    let side = side.max(grid.n() as usize);
    let derivative = |g: &[Complex64], axis: Option<usize>| -> Result<PhysicalField> {
        let coefficients = grid
            .modes()
            .map(|k| {
                let phi = g[grid.linear_index_unchecked(-k)] / TORUS_AREA;
                match axis {
                    None => phi,
                    Some(0) => phi * Complex64::new(0.0, k.i1 as f64),
                    Some(_) => phi * Complex64::new(0.0, k.i2 as f64),
                }
            })
            .collect();
        to_physical_resampled(&ModeField::from_coefficients(grid, coefficients)?, side)
    };
    let g: Vec<Vec<Complex64>> = functionals.iter().map(|f| f.gradient(field)).collect();
    let phi1 = derivative(&g[0], None)?;
    let (a1, a2) = (derivative(&g[1], Some(0))?, derivative(&g[1], Some(1))?);
    let (b1, b2) = (derivative(&g[2], Some(0))?, derivative(&g[2], Some(1))?);
    let samples = (0..side * side)
        .map(|s| {
            phi1.samples()[s]
                * (a1.samples()[s] * b2.samples()[s] - a2.samples()[s] * b1.samples()[s])
        })
        .collect();
    Ok(PhysicalField::new(side, samples)?.integrate())
}

pub fn run_convergence_study(
    pairs: &[(WaveVector, WaveVector)],
    ns: &[i64],
) -> Result<ConvergenceStudy> {
    run_convergence_study_seeded(pairs, ns, 1)
}

pub fn run_convergence_study_seeded(
    pairs: &[(WaveVector, WaveVector)],
    ns: &[i64],
    seed: u64,
) -> Result<ConvergenceStudy> {
    let start = Instant::now();
    validate(pairs, ns)?;
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();

    let mut rows = Vec::new();
    let mut fits = Vec::new();
    for &(i, j) in pairs {
        let k = i + j;
        let continuum = alpha_continuum(i, j, k);
        let mut errors = Vec::new();
        for &n in &ns {
            let zeitlin = alpha_zeitlin(TruncationGrid::new(n)?, i, j, k)?;
            let error = (zeitlin - continuum).abs();
            errors.push(error);
            rows.push(ConvergenceRow {
                i1: i.i1,
                i2: i.i2,
                j1: j.i1,
                j2: j.i2,
                n,
                zeitlin,
                continuum,
                error,
            });
        }
        let ratios = errors.windows(2).map(|w| w[0] / w[1]).collect();
        fits.push(PairFit {
            i,
            j,
            cross: i.cross(j),
            exponent: fit_decay_exponent(&xs, &errors),
            ratios,
        });
    }

    let probe = FunctionalProbe::new(seed);
    let mut functional = Vec::new();
    for &n in &ns {
        let grid = TruncationGrid::new(n)?;
        let z = probe.bracket(&NambuTensor::Zeitlin(grid), grid)?;
        let c = probe.bracket(&NambuTensor::Continuum, grid)?;
        functional.push(FunctionalRow {
            n,
            zeitlin: z.re,
            continuum: c.re,
            difference: (z - c).norm(),
        });
    }
    let diffs: Vec<f64> = functional.iter().map(|r| r.difference).collect();
    let functional_exponent = fit_decay_exponent(&xs, &diffs);
    let [f1, f2, f3] = &probe.functionals;
    let pde_integral = pde_nambu_integral(&probe.field, [f1, f2, f3])?;

    // Distance of the worst non-collinear exponent from the band; zero inside.
    let (lo, hi) = EXPONENT_BAND;
    let mut residual: f64 = 0.0;
    let mut fitted = 0;
    let mut report_details = Vec::new();
    for f in &fits {
        match f.exponent {
            Some(e) => {
                fitted += 1;
                residual = residual.max(lo - e).max(e - hi);
                report_details.push(format!(
                    "{} x {} (cross {}): exponent {e:.4}",
                    f.i, f.j, f.cross
                ));
            }
            None if f.cross == 0 => {
                report_details.push(format!(
                    "{} x {} collinear: error identically zero",
                    f.i, f.j
                ));
            }
            None => {
                residual = f64::INFINITY;
                report_details.push(format!("{} x {}: no fit", f.i, f.j));
            }
        }
    }
    if fitted == 0 {
        residual = f64::INFINITY;
    }
    report_details.push(match functional_exponent {
        Some(e) => format!("functional-level bracket difference exponent {e:.4} (reported only)"),
        None => "functional-level bracket difference vanishes".into(),
    });
    let continuum_modes = functional.first().map_or(0.0, |r| r.continuum);
    report_details.push(format!(
        "continuum bracket: mode sum {continuum_modes:.15e}, area integral {pde_integral:.15e}"
    ));

    let mut report = CheckReport::new("continuum convergence", residual.max(0.0), 0.0)
        .param("sizes", ns.clone())
        .param("pairs", fits.len())
        .param("band", vec![lo, hi])
        .param("seed", seed);
    report.details = report_details;
    Ok(ConvergenceStudy {
        report: report.timed(start),
        rows,
        fits,
        functional,
        functional_exponent,
        pde_integral,
    })
}

/// Exact truncation error of a single structure constant, `|s - (n/2 pi) sin(2 pi s/n)| / (2 pi)^2`.
pub fn alpha_error_closed(cross: i64, n: i64) -> f64 {
    let (s, nf) = (cross as f64, n as f64);
    (s - nf / (2.0 * PI) * (2.0 * PI * s / nf).sin()).abs() / (2.0 * PI).powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bracket::nambu_sum;
    use crate::grid::build_grid;

    #[test]
    fn default_study_passes() {
        let s = run_convergence_study(&default_pairs(), &default_sizes()).unwrap();
        assert!(s.report.passed, "{:#?}", s.report);
        let collinear = s.fits.iter().find(|f| f.cross == 0).unwrap();
        assert_eq!(collinear.exponent, None);
        assert!(s
            .rows
            .iter()
            .filter(|r| r.i1 == 1 && r.j1 == 2)
            .all(|r| r.error == 0.0));
    }

    #[test]
    fn wide_pair_needs_the_largest_size() {
        let full = run_convergence_study(&[WIDE_PAIR], &default_sizes()).unwrap();
        let e = full.fits[0].exponent.unwrap();
        assert!((1.8..=2.2).contains(&e), "{e}");
        let short = run_convergence_study(&[WIDE_PAIR], &[11, 21, 41]).unwrap();
        assert!(!short.report.passed);
    }

    #[test]
    fn default_pairs_pass_without_the_largest_size() {
        let s = run_convergence_study(&default_pairs(), &[11, 21, 41]).unwrap();
        assert!(s.report.passed, "{:#?}", s.report);
    }

    #[test]
    fn errors_match_closed_form() {
        let s = run_convergence_study(&default_pairs(), &[11, 21]).unwrap();
        for r in &s.rows {
            let c = WaveVector::new(r.i1, r.i2).cross(WaveVector::new(r.j1, r.j2));
            let want = alpha_error_closed(c, r.n);
            assert!(
                (r.error - want).abs() <= 1e-14 * want.max(1e-300) + 1e-18,
                "{r:?}"
            );
        }
    }

    #[test]
    fn doubling_ratio_near_four() {
        // error(n) / error(2n + 1) for |i x j| <= 4
        for (i, j) in default_pairs()
            .into_iter()
            .filter(|(i, j)| (1..=4).contains(&i.cross(*j).abs()))
        {
            for n in [11, 21, 41] {
                let s = run_convergence_study(&[(i, j)], &[n, 2 * n + 1]).unwrap();
                let r = s.fits[0].ratios[0];
                assert!((3.5..=4.6).contains(&r), "{i} {j} n={n}: {r}");
            }
        }
    }

    #[test]
    fn functional_difference_decays() {
        let s = run_convergence_study(&default_pairs()[..1], &default_sizes()).unwrap();
        let e = s.functional_exponent.unwrap();
        assert!((1.8..=2.2).contains(&e), "{e}");
        let c0 = s.functional[0].continuum;
        assert!(s
            .functional
            .iter()
            .all(|r| (r.continuum - c0).abs() <= 1e-14 * c0.abs()));
        assert!(
            (s.pde_integral - c0).abs() <= 1e-12 * c0.abs(),
            "{} vs {c0}",
            s.pde_integral
        );
    }

    #[test]
    fn area_integral_matches_mode_sum() {
        // Bandwidth 2 at n = 5 with every mode populated.
        let g = build_grid(5).unwrap();
        let field = random_shell_field(g, 1, 8, 1.0, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let fs = [0, 1, 2].map(|_| Polynomial::random_real(g, &mut rng, 2, 2));
        let grads: Vec<_> = fs.iter().map(|f| f.gradient(&field)).collect();
        let modes = nambu_sum(&NambuTensor::Continuum, g, &grads[0], &grads[1], &grads[2]).unwrap();
        let pde = pde_nambu_integral(&field, [&fs[0], &fs[1], &fs[2]]).unwrap();
        assert!(
            (modes.value.re - pde).abs() <= 1e-12 * modes.magnitude,
            "{} vs {pde}",
            modes.value
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(run_convergence_study(&[], &[11, 21]).is_err());
        assert!(run_convergence_study(&default_pairs(), &[11]).is_err());
        assert!(run_convergence_study(&default_pairs(), &[10, 21]).is_err());
        let far = [(WaveVector::new(5, 0), WaveVector::new(1, 1))];
        assert!(matches!(
            run_convergence_study(&far, &[11, 21]),
            Err(Error::NotInGrid(..))
        ));
    }

    #[test]
    fn fit_of_exact_power_law() {
        let xs = [10.0, 20.0, 40.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-2.0)).collect();
        assert!((fit_decay_exponent(&xs, &ys).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(fit_decay_exponent(&xs, &[0.0, 0.0, 0.0]), None);
    }
}
