//! Lie-Poisson and Nambu bracket evaluation on gradient vectors.
//!
//! Kronecker deltas are never materialized: for each `(i, j)` the only
//! contributing third index is computed directly, so both brackets cost
//! `O(n^4)` on the truncated grid.

use num_complex::Complex64;

use crate::algebra::functional::Functional;
use crate::algebra::nambu::{NambuTensor, View};
use crate::algebra::structure::{zeitlin_prefactor, Target};
use crate::error::{Error, Result};
use crate::field::{ModeField, REALITY_TOLERANCE};
use crate::grid::TruncationGrid;

/// Imaginary parts above this fraction of the summed term magnitudes mean
/// the functionals are not real.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BracketSum {
    pub value: Complex64,
    /// `sum |term|`, the natural scale for relative comparisons.
    pub magnitude: f64,
}

impl BracketSum {
    fn real(self) -> Result<f64> {
        if self.value.im.abs() > IMAGINARY_TOLERANCE * self.magnitude {
            let residual = if self.magnitude > 0.0 {
                self.value.im.abs() / self.magnitude
            } else {
                f64::INFINITY
            };
            return Err(Error::NonRealBracket { residual });
        }
        Ok(self.value.re)
    }
}

fn check_len(grid: TruncationGrid, v: &[Complex64]) -> Result<()> {
    if v.len() != grid.len() {
        return Err(Error::SizeMismatch {
            expected: grid.len(),
            got: v.len(),
        });
    }
    Ok(())
}

/// `sum_{i,j} alpha_ij^k zeta_k g1_i g2_j` with `k = (i + j)|n`.
pub fn lie_poisson_sum(
    field: &ModeField,
    g1: &[Complex64],
    g2: &[Complex64],
) -> Result<BracketSum> {
    let grid = field.grid();
    check_len(grid, g1)?;
    check_len(grid, g2)?;
    let z = field.coefficients();
    let pre = zeitlin_prefactor(grid);
    let mut value = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for (i, &a) in g1.iter().enumerate() {
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        let ki = grid.mode(i);
        for (j, &b) in g2.iter().enumerate() {
            let kj = grid.mode(j);
            let Some(k) = grid.reduced_index(ki + kj) else {
                continue;
            };
            let t = z[k] * a * b * (pre * grid.sin_phase(ki.cross(kj)));
            magnitude += t.norm();
            value += t;
        }
    }
    Ok(BracketSum { value, magnitude })
}

pub fn lie_poisson_bracket_complex(
    grid: TruncationGrid,
    field: &ModeField,
    f1: &dyn Functional,
    f2: &dyn Functional,
) -> Result<Complex64> {
    check_grid(grid, field)?;
    Ok(lie_poisson_sum(field, &f1.gradient(field), &f2.gradient(field))?.value)
}

/// Real-valued Lie-Poisson bracket of two real functionals.
pub fn lie_poisson_bracket(
    grid: TruncationGrid,
    field: &ModeField,
    f1: &dyn Functional,
    f2: &dyn Functional,
) -> Result<f64> {
    check_grid(grid, field)?;
    field.validate_reality(REALITY_TOLERANCE)?;
    lie_poisson_sum(field, &f1.gradient(field), &f2.gradient(field))?.real()
}

fn check_grid(grid: TruncationGrid, field: &ModeField) -> Result<()> {
    if field.grid() != grid {
        return Err(Error::SizeMismatch {
            expected: grid.len(),
            got: field.grid().len(),
        });
    }
    Ok(())
}

/// `sum_{i,j,k} N_ijk g1_i g2_j g3_k` over the modes of `grid`.
///
/// The continuum tensor is evaluated with exact (unwrapped) deltas on the
/// same index set.
pub fn nambu_sum(
    tensor: &NambuTensor,
    grid: TruncationGrid,
    g1: &[Complex64],
    g2: &[Complex64],
    g3: &[Complex64],
) -> Result<BracketSum> {
    let view = match tensor {
        NambuTensor::Zeitlin(g) => {
            if *g != grid {
                return Err(Error::SizeMismatch {
                    expected: g.len(),
                    got: grid.len(),
                });
            }
            View::Zeitlin(grid)
        }
        NambuTensor::Continuum => View::Continuum(grid),
        NambuTensor::Dense(d) => {
            if d.dim() != grid.len() {
                return Err(Error::SizeMismatch {
                    expected: d.dim(),
                    got: grid.len(),
                });
            }
            View::Dense(d)
        }
    };
    for g in [g1, g2, g3] {
        check_len(grid, g)?;
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut value = zero;
    let mut magnitude = 0.0;
    let mut add = |t: Complex64| {
        magnitude += t.norm();
        value += t;
    };
    for (i, &a) in g1.iter().enumerate() {
        if a == zero {
            continue;
        }
        for (j, &b) in g2.iter().enumerate() {
            if b == zero {
                continue;
            }
            match view.third(i, j) {
                Target::Unique(Some(k)) => add(a * b * g3[k] * view.entry(i, j, k)),
                Target::Unique(None) => {}
                Target::Any => {
                    for (k, &c) in g3.iter().enumerate() {
                        add(a * b * c * view.entry(i, j, k));
                    }
                }
            }
        }
    }
    Ok(BracketSum { value, magnitude })
}

pub fn nambu_bracket_complex(
    tensor: &NambuTensor,
    f1: &dyn Functional,
    f2: &dyn Functional,
    f3: &dyn Functional,
    field: &ModeField,
) -> Result<Complex64> {
    Ok(nambu_sum(
        tensor,
        field.grid(),
        &f1.gradient(field),
        &f2.gradient(field),
        &f3.gradient(field),
    )?
    .value)
}

/// Real-valued Nambu bracket of three real functionals.
pub fn nambu_bracket(
    tensor: &NambuTensor,
    f1: &dyn Functional,
    f2: &dyn Functional,
    f3: &dyn Functional,
    field: &ModeField,
) -> Result<f64> {
    field.validate_reality(REALITY_TOLERANCE)?;
    nambu_sum(
        tensor,
        field.grid(),
        &f1.gradient(field),
        &f2.gradient(field),
        &f3.gradient(field),
    )?
    .real()
}
