//! Tendencies of the truncated vorticity system.
//!
//! All four routes compute
//! `d zeta_i/dt = -(n/2 pi) sum_k sin(2 pi/n i x k) zeta_{(i+k)|n} zeta_{-k} / k^2`,
//! with terms whose wrapped index is the origin dropped.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::algebra::bracket::{lie_poisson_sum, nambu_sum};
use crate::algebra::functional::{enstrophy_gradient, hamiltonian_gradient};
use crate::algebra::nambu::NambuTensor;
use crate::field::ModeField;
use crate::grid::TruncationGrid;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Direct `O(n^4)` evaluation, parallel over the output mode.
pub fn rhs_naive(field: &ModeField) -> ModeField {
    let grid = field.grid();
    let z = field.coefficients();
    let pre = -(grid.n() as f64) / (2.0 * PI);
    let out: Vec<Complex64> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let ki = grid.mode(i);
            let mut acc = zero();
            for (k, kk) in grid.modes().enumerate() {
                let Some(m) = grid.reduced_index(ki + kk) else {
                    continue;
                };
                let w = grid.sin_phase(ki.cross(kk)) / kk.norm_sq() as f64;
                acc += z[m] * z[grid.negated_index(k)] * w;
            }
            acc * pre
        })
        .collect();
    ModeField::from_coefficients(grid, out).expect("length matches grid")
}

/// `d zeta_i/dt = {zeta_i, H}` through the Lie-Poisson bracket.
pub fn rhs_lie_poisson(field: &ModeField) -> ModeField {
    let grid = field.grid();
    let gh = hamiltonian_gradient(field);
    let out = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let mut e = vec![zero(); grid.len()];
            e[i] = Complex64::new(1.0, 0.0);
            lie_poisson_sum(field, &e, &gh)
                .expect("gradient lengths match")
                .value
        })
        .collect();
    ModeField::from_coefficients(grid, out).expect("length matches grid")
}

/// `d zeta_i/dt = {zeta_i, H, E}` through the scaled Nambu tensor.
pub fn rhs_nambu(field: &ModeField) -> ModeField {
    let grid = field.grid();
    let tensor = NambuTensor::Zeitlin(grid);
    let gh = hamiltonian_gradient(field);
    let ge = enstrophy_gradient(field);
    let out = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let mut e = vec![zero(); grid.len()];
            e[i] = Complex64::new(1.0, 0.0);
            nambu_sum(&tensor, grid, &e, &gh, &ge)
                .expect("tensor matches grid")
                .value
        })
        .collect();
    ModeField::from_coefficients(grid, out).expect("length matches grid")
}

/// FFT-based tendency.
///
/// Writing `sin = (w^c - w^-c) / 2i` with `w = e^{2 pi i/n}` turns the sum
/// into two twisted cyclic correlations
/// `S_s(i) = sum_k b_k a_{i+k} w^{s (i1 k2 - i2 k1)}` on the `n x n` residue
/// lattice, with `a = zeta` and `b_k = zeta_{-k} / k^2`. A transform along
/// the second lattice axis untwists one phase factor:
/// `S^_s(i1, y) = sum_{k1} a^(i1 + k1, y + k1) b~(k1, i1 + y + k1)`,
/// leaving one contraction of length `n` per output entry. The cost is
/// `O(n^3)` plus `O(n^2 log n)` for the transforms.
#[derive(Clone)]
pub struct FastRhs {
    grid: TruncationGrid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    inv_norm_sq: Vec<f64>,
}

impl std::fmt::Debug for FastRhs {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FastRhs").field("grid", &self.grid).finish()
    }
}

impl FastRhs {
    pub fn new(grid: TruncationGrid) -> Self {
        let n = grid.n() as usize;
        let mut planner = FftPlanner::new();
        let inv_norm_sq = (0..n * n)
            .map(|slot| {
                let (u1, u2) = ((slot / n) as i64, (slot % n) as i64);
                let k = grid.mod_reduce((u1, u2).into());
                if k.is_zero() {
                    0.0
                } else {
                    1.0 / k.norm_sq() as f64
                }
            })
            .collect();
        FastRhs {
            grid,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            inv_norm_sq,
        }
    }

    pub fn grid(&self) -> TruncationGrid {
        self.grid
    }

    fn rows(&self, data: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        let n = self.grid.n() as usize;
        for row in data.chunks_mut(n) {
            fft.process(row);
        }
    }

    /// `S_s` for `s = +1` (`positive`) or `s = -1`, on the residue lattice.
    fn twisted(&self, a: &[Complex64], b: &[Complex64], positive: bool) -> Vec<Complex64> {
        let n = self.grid.n() as usize;
        let (towards, back) = if positive {
            (&self.forward, &self.inverse)
        } else {
            (&self.inverse, &self.forward)
        };
        let mut a_hat = a.to_vec();
        self.rows(&mut a_hat, towards);
        let mut b_tilde = b.to_vec();
        self.rows(&mut b_tilde, back);

        let mut s_hat = vec![zero(); n * n];
        for i1 in 0..n {
            for y in 0..n {
                let mut acc = zero();
                for k1 in 0..n {
                    let u = (i1 + k1) % n;
                    let v = (y + k1) % n;
                    let z = (i1 + y + k1) % n;
                    acc += a_hat[u * n + v] * b_tilde[k1 * n + z];
                }
                s_hat[i1 * n + y] = acc;
            }
        }
        self.rows(&mut s_hat, back);
        let norm = 1.0 / n as f64;
        s_hat.iter_mut().for_each(|c| *c *= norm);
        s_hat
    }

    pub fn tendency(&self, field: &ModeField) -> ModeField {
        let grid = self.grid;
        assert_eq!(
            field.grid(),
            grid,
            "field grid does not match the planned grid"
        );
        let n = grid.n() as usize;
        let slot = |k: crate::grid::WaveVector| {
            (k.i1.rem_euclid(n as i64) as usize) * n + k.i2.rem_euclid(n as i64) as usize
        };
        let z = field.coefficients();
        let mut a = vec![zero(); n * n];
        let mut b = vec![zero(); n * n];
        for (idx, k) in grid.modes().enumerate() {
            let s = slot(k);
            a[s] = z[idx];
            b[s] = z[grid.negated_index(idx)] * self.inv_norm_sq[s];
        }
        let plus = self.twisted(&a, &b, true);
        let minus = self.twisted(&a, &b, false);
        // -(n / 2pi) (S+ - S-) / 2i
        let pre = Complex64::new(0.0, 0.5 * grid.n() as f64 / (2.0 * PI));
        let out = grid
            .modes()
            .map(|k| (plus[slot(k)] - minus[slot(k)]) * pre)
            .collect();
        ModeField::from_coefficients(grid, out).expect("length matches grid")
    }
}

pub fn rhs_fast(field: &ModeField) -> ModeField {
    FastRhs::new(field.grid()).tendency(field)
}
