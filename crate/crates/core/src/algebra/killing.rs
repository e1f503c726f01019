//! Killing form, orthogonality relation and the quadratic Casimir.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::structure::StructureConstants;
use crate::error::{Error, Result};
use crate::field::{enstrophy, ModeField};
use crate::grid::{TruncationGrid, WaveVector};

/// Relative tolerance for the Casimir / enstrophy identification.
pub const CASIMIR_TOLERANCE: f64 = 1e-12;

/// `sum_{k,l} alpha_ik^l alpha_jl^k` by direct summation over the full index set.
pub fn killing_bruteforce(constants: &StructureConstants, i: usize, j: usize) -> Result<f64> {
    let dim = constants.finite_dim()?;
    for idx in [i, j] {
        if idx >= dim {
            return Err(Error::IndexOutOfRange { index: idx, dim });
        }
    }
    let mut acc = 0.0;
    for k in 0..dim {
        for l in 0..dim {
            acc += constants.alpha_unchecked(i, k, l) * constants.alpha_unchecked(j, l, k);
        }
    }
    Ok(acc)
}

/// Full Killing matrix, row-major. The dense path skips structural zeros
/// of the supplied tensor; the Zeitlin path sums every entry.
pub fn killing_matrix(constants: &StructureConstants) -> Result<Vec<f64>> {
    let dim = constants.finite_dim()?;
    let mut out = vec![0.0; dim * dim];
    match constants {
        StructureConstants::Generic(d) => {
            let nz = d.nonzeros();
            for i in 0..dim {
                for j in 0..dim {
                    let mut acc = 0.0;
                    for k in 0..dim {
                        for &(l, a) in &nz[i * dim + k] {
                            acc += a * d.get(j, l, k);
                        }
                    }
                    out[i * dim + j] = acc;
                }
            }
        }
        _ => {
            for i in 0..dim {
                for j in 0..dim {
                    out[i * dim + j] = killing_bruteforce(constants, i, j)?;
                }
            }
        }
    }
    Ok(out)
}

/// `-1/2 n^4 / (2 pi)^6`, the only nonzero value of the truncated Killing form.
pub fn killing_closed_value(grid: TruncationGrid) -> f64 {
    let n = grid.n() as f64;
    -0.5 * n.powi(4) / (2.0 * PI).powi(6)
}

/// Closed form: nonzero only when `(i + j)|n = 0`.
pub fn killing_closed(grid: TruncationGrid, i: WaveVector, j: WaveVector) -> Result<f64> {
    for v in [i, j] {
        if !grid.contains(v) {
            return Err(Error::NotInGrid(v, grid.n()));
        }
    }
    Ok(if grid.mod_reduce(i + j).is_zero() {
        killing_closed_value(grid)
    } else {
        0.0
    })
}

/// `r = -1/2 (n / 2 pi)^4`, which turns the Casimir into the enstrophy.
pub fn casimir_scale(grid: TruncationGrid) -> f64 {
    -0.5 * (grid.n() as f64 / (2.0 * PI)).powi(4)
}

#[derive(Clone, Debug, PartialEq)]
pub enum KillingForm {
    Closed(TruncationGrid),
    Dense {
        matrix: DMatrix<f64>,
        inverse: DMatrix<f64>,
    },
}

impl KillingForm {
    pub fn dim(&self) -> usize {
        match self {
            KillingForm::Closed(g) => g.len(),
            KillingForm::Dense { matrix, .. } => matrix.nrows(),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        match self {
            KillingForm::Closed(g) => {
                if i + j == g.len() - 1 {
                    killing_closed_value(*g)
                } else {
                    0.0
                }
            }
            KillingForm::Dense { matrix, .. } => matrix[(i, j)],
        }
    }

    /// `K^{ij}`; the closed variant is `-2 (2 pi)^6 / n^4` on the pairing.
    pub fn inverse_entry(&self, i: usize, j: usize) -> f64 {
        match self {
            KillingForm::Closed(g) => {
                if i + j == g.len() - 1 {
                    1.0 / killing_closed_value(*g)
                } else {
                    0.0
                }
            }
            KillingForm::Dense { inverse, .. } => inverse[(i, j)],
        }
    }
}

/// `sum_{k in I_n} cos(2 pi/n k.l)`, checked against `n^2 delta_{l|n,0} - 1`.
pub fn orthogonality_check(grid: TruncationGrid, l: WaveVector) -> Result<f64> {
    let sum: f64 = grid.modes().map(|k| grid.cos_phase(k.dot(l))).sum();
    let expected = orthogonality_expected(grid, l);
    if (sum - expected).abs() > 1e-11 {
        return Err(Error::InternalConsistency(format!(
            "orthogonality sum at l = {l} is {sum}, expected {expected}"
        )));
    }
    Ok(sum)
}

pub fn orthogonality_expected(grid: TruncationGrid, l: WaveVector) -> f64 {
    let n2 = (grid.n() * grid.n()) as f64;
    if grid.mod_reduce(l).is_zero() {
        n2 - 1.0
    } else {
        -1.0
    }
}

/// `r C = (r/2) sum_{i,j} K^{ij} zeta_i zeta_j` summed over every index pair,
/// together with the summed term magnitude.
pub fn scaled_casimir_sum(grid: TruncationGrid, field: &ModeField) -> Result<(f64, f64)> {
    if field.grid() != grid {
        return Err(Error::SizeMismatch {
            expected: grid.len(),
            got: field.grid().len(),
        });
    }
    let form = KillingForm::Closed(grid);
    let z = field.coefficients();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for i in 0..grid.len() {
        for j in 0..grid.len() {
            let t = form.inverse_entry(i, j) * z[i] * z[j];
            magnitude += t.norm();
            acc += t;
        }
    }
    let r = casimir_scale(grid);
    Ok((0.5 * r * acc.re, 0.5 * r.abs() * magnitude))
}

/// [`scaled_casimir_sum`], checked against the truncated enstrophy.
pub fn quadratic_casimir(grid: TruncationGrid, field: &ModeField) -> Result<f64> {
    let (value, magnitude) = scaled_casimir_sum(grid, field)?;
    let e = enstrophy(field)?;
    let scale = magnitude.max(e.abs());
    if (value - e).abs() > CASIMIR_TOLERANCE * scale {
        return Err(Error::InternalConsistency(format!(
            "scaled Casimir {value} differs from enstrophy {e}"
        )));
    }
    Ok(value)
}
