//! Vorticity mode fields, physical samples and the quadratic observables.
//!
//! Coefficients follow `zeta_k = (2 pi)^-2 * integral(zeta(x) e^{-i k.x} dA)`
//! on the torus `[0, 2 pi)^2`. On an `m x m` sampling grid this becomes
//! `zeta_k = m^-2 * sum_a zeta(x_a) e^{-i k.x_a}` with `x_a = 2 pi a / m`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::grid::{TruncationGrid, WaveVector};

/// Relative tolerance used when validating the reality condition.
pub const REALITY_TOLERANCE: f64 = 1e-10;

/// `(2 pi)^2`, the torus area.
pub const TORUS_AREA: f64 = 4.0 * PI * PI;

#[derive(Clone, Debug, PartialEq)]
pub struct ModeField {
    grid: TruncationGrid,
    coefficients: Vec<Complex64>,
}

impl ModeField {
    pub fn zeros(grid: TruncationGrid) -> Self {
        ModeField {
            grid,
            coefficients: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn from_coefficients(grid: TruncationGrid, coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() != grid.len() {
            return Err(Error::SizeMismatch {
                expected: grid.len(),
                got: coefficients.len(),
            });
        }
        Ok(ModeField { grid, coefficients })
    }

    pub fn grid(&self) -> TruncationGrid {
        self.grid
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn coefficients_mut(&mut self) -> &mut [Complex64] {
        &mut self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<Complex64> {
        self.coefficients
    }

    pub fn get(&self, k: WaveVector) -> Result<Complex64> {
        Ok(self.coefficients[self.grid.linear_index(k)?])
    }

    pub fn set(&mut self, k: WaveVector, value: Complex64) -> Result<()> {
        let idx = self.grid.linear_index(k)?;
        self.coefficients[idx] = value;
        Ok(())
    }

    /// Sets `k` to `value` and `-k` to its conjugate.
    pub fn set_pair(&mut self, k: WaveVector, value: Complex64) -> Result<()> {
        self.set(k, value)?;
        self.set(-k, value.conj())
    }

    pub fn max_abs(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|c| c.norm())
            .fold(0.0, nan_max)
    }

    /// `max_k |zeta_{-k} - conj(zeta_k)| / max_k |zeta_k|`, zero for the zero field.
    pub fn reality_residual(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let worst = (0..self.coefficients.len())
            .map(|i| {
                let j = self.grid.negated_index(i);
                (self.coefficients[j] - self.coefficients[i].conj()).norm()
            })
            .fold(0.0, nan_max);
        worst / scale
    }

    pub fn validate_reality(&self, tolerance: f64) -> Result<()> {
        let residual = self.reality_residual();
        if residual.is_nan() || residual > tolerance {
            return Err(Error::RealityViolation {
                residual,
                tolerance,
            });
        }
        Ok(())
    }

    /// Replaces each pair with its conjugate-symmetric average.
    pub fn symmetrize(&mut self) {
        let n = self.coefficients.len();
        for i in 0..n / 2 {
            let j = self.grid.negated_index(i);
            let avg = 0.5 * (self.coefficients[i] + self.coefficients[j].conj());
            self.coefficients[i] = avg;
            self.coefficients[j] = avg.conj();
        }
    }

    pub fn max_abs_diff(&self, other: &ModeField) -> f64 {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, nan_max)
    }
}

/// Maximum that propagates NaN instead of dropping it.
pub(crate) fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Real samples on the uniform `side x side` grid over `[0, 2 pi)^2`,
/// row-major with the first coordinate `x1` selecting the row.
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalField {
    side: usize,
    samples: Vec<f64>,
}

impl PhysicalField {
    pub fn new(side: usize, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != side * side {
            return Err(Error::SizeMismatch {
                expected: side * side,
                got: samples.len(),
            });
        }
        Ok(PhysicalField { side, samples })
    }

    pub fn from_fn(side: usize, f: impl Fn(f64, f64) -> f64) -> Self {
        let h = 2.0 * PI / side as f64;
        let samples = (0..side * side)
            .map(|p| f((p / side) as f64 * h, (p % side) as f64 * h))
            .collect();
        PhysicalField { side, samples }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn at(&self, a1: usize, a2: usize) -> f64 {
        self.samples[a1 * self.side + a2]
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// Trapezoidal (here: rectangle) quadrature of the samples over the torus.
    pub fn integrate(&self) -> f64 {
        let h = 2.0 * PI / self.side as f64;
        self.samples.iter().sum::<f64>() * h * h
    }
}

fn fft2(data: &mut [Complex64], side: usize, direction: FftDirection) {
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft(side, direction);
    for row in data.chunks_mut(side) {
        fft.process(row);
    }
    let mut column = vec![Complex64::new(0.0, 0.0); side];
    for c in 0..side {
        for r in 0..side {
            column[r] = data[r * side + c];
        }
        fft.process(&mut column);
        for r in 0..side {
            data[r * side + c] = column[r];
        }
    }
}

#[inline]
fn lattice_slot(k: WaveVector, side: usize) -> usize {
    let s = side as i64;
    (k.i1.rem_euclid(s) * s + k.i2.rem_euclid(s)) as usize
}

/// Evaluates the field on the native `n x n` grid.
pub fn to_physical(field: &ModeField) -> PhysicalField {
    to_physical_resampled(field, field.grid().n() as usize)
        .expect("native grid always holds every mode")
}

/// Evaluates `sum_k zeta_k e^{i k.x}` on an `side x side` grid with `side >= n`.
pub fn to_physical_resampled(field: &ModeField, side: usize) -> Result<PhysicalField> {
    let n = field.grid().n() as usize;
    if side < n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: side,
        });
    }
    let mut data = vec![Complex64::new(0.0, 0.0); side * side];
    for (k, c) in field.grid().modes().zip(field.coefficients()) {
        data[lattice_slot(k, side)] = *c;
    }
    fft2(&mut data, side, FftDirection::Inverse);
    Ok(PhysicalField {
        side,
        samples: data.into_iter().map(|c| c.re).collect(),
    })
}

/// Forward transform onto `I_n`; the mean is dropped.
pub fn from_physical(samples: &PhysicalField, grid: TruncationGrid) -> Result<ModeField> {
    let side = grid.n() as usize;
    if samples.side != side {
        return Err(Error::SizeMismatch {
            expected: side * side,
            got: samples.samples.len(),
        });
    }
    let mut data: Vec<Complex64> = samples
        .samples
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect();
    fft2(&mut data, side, FftDirection::Forward);
    let norm = 1.0 / (side * side) as f64;
    let coefficients = grid
        .modes()
        .map(|k| data[lattice_slot(k, side)] * norm)
        .collect();
    ModeField::from_coefficients(grid, coefficients)
}

/// `psi_k = -zeta_k / k^2`.
pub fn stream_function(field: &ModeField) -> ModeField {
    let grid = field.grid();
    let coefficients = grid
        .modes()
        .zip(field.coefficients())
        .map(|(k, c)| -c / k.norm_sq() as f64)
        .collect();
    ModeField { grid, coefficients }
}

/// `sum_k w(k) zeta_k zeta_{-k}` as a complex number.
fn weighted_pair_sum(field: &ModeField, weight: impl Fn(WaveVector) -> f64) -> Complex64 {
    let grid = field.grid();
    let c = field.coefficients();
    grid.modes()
        .enumerate()
        .map(|(i, k)| c[i] * c[grid.negated_index(i)] * weight(k))
        .sum()
}

pub(crate) fn energy_unchecked(field: &ModeField) -> Complex64 {
    0.5 * TORUS_AREA * weighted_pair_sum(field, |k| 1.0 / k.norm_sq() as f64)
}

pub(crate) fn enstrophy_unchecked(field: &ModeField) -> Complex64 {
    0.5 * TORUS_AREA * weighted_pair_sum(field, |_| 1.0)
}

/// Truncated kinetic energy `H = 1/2 (2 pi)^2 sum_k zeta_k zeta_{-k} / k^2`.
pub fn energy(field: &ModeField) -> Result<f64> {
    field.validate_reality(REALITY_TOLERANCE)?;
    Ok(energy_unchecked(field).re)
}

/// Truncated enstrophy `E = 1/2 (2 pi)^2 sum_k zeta_k zeta_{-k}`.
pub fn enstrophy(field: &ModeField) -> Result<f64> {
    field.validate_reality(REALITY_TOLERANCE)?;
    Ok(enstrophy_unchecked(field).re)
}
