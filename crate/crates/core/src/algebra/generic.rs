//! Nambu bracket construction for an arbitrary small semi-simple algebra:
//! Killing form, its inverse, `N_ijk = r^-1 sum_l alpha_ij^l K_lk` and the
//! quadratic Casimir `1/2 K^{ij} z_i z_j`.

use nalgebra::DMatrix;

use crate::algebra::killing::{killing_matrix, KillingForm};
use crate::algebra::nambu::{DenseTensor, NambuTensor};
use crate::algebra::structure::{DenseConstants, StructureConstants, CONSTANTS_TOLERANCE};
use crate::error::{Error, Result};

/// Killing forms with `sigma_min / sigma_max` below this are treated as singular.
pub const SINGULARITY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct GenericConstruction {
    pub killing: KillingForm,
    pub nambu: NambuTensor,
    /// Coefficients `1/2 K^{ij}` of the quadratic Casimir.
    pub casimir: DMatrix<f64>,
    pub scaling: f64,
}

impl GenericConstruction {
    pub fn casimir_value(&self, z: &[f64]) -> f64 {
        let v = nalgebra::DVector::from_column_slice(z);
        (v.transpose() * &self.casimir * &v)[(0, 0)]
    }
}

/// Validates the constants and builds the construction with Nambu scaling `r`
/// (the tensor is divided by `scaling`).
pub fn construct_generic(constants: &DenseConstants, scaling: f64) -> Result<GenericConstruction> {
    if scaling == 0.0 || !scaling.is_finite() {
        return Err(Error::InvalidConstants(format!(
            "scaling must be finite and nonzero, got {scaling}"
        )));
    }
    let wrapped = StructureConstants::Generic(constants.clone());
    let max = constants.max_abs();
    let anti = wrapped.antisymmetry_residual()?;
    if anti > CONSTANTS_TOLERANCE * max {
        return Err(Error::InvalidConstants(format!(
            "antisymmetry violated: residual {anti:e} (largest entry {max:e})"
        )));
    }
    let (jacobi, scale) = wrapped.jacobi_residual()?;
    if jacobi > CONSTANTS_TOLERANCE * scale {
        return Err(Error::InvalidConstants(format!(
            "Jacobi identity violated: residual {jacobi:e} (largest term {scale:e})"
        )));
    }

    let dim = constants.dim();
    let k = DMatrix::from_row_slice(dim, dim, &killing_matrix(&wrapped)?);
    let sv = k.clone().svd(false, false).singular_values;
    let (lo, hi) = (sv.min(), sv.max());
    let condition = if hi > 0.0 { lo / hi } else { 0.0 };
    if condition < SINGULARITY_TOLERANCE {
        return Err(Error::NotSemiSimple { condition });
    }
    let inverse = k
        .clone()
        .try_inverse()
        .ok_or(Error::NotSemiSimple { condition })?;

    let mut n = DenseTensor::zeros(dim);
    let nz = constants.nonzeros();
    for i in 0..dim {
        for j in 0..dim {
            for kk in 0..dim {
                let v: f64 = nz[i * dim + j].iter().map(|&(l, a)| a * k[(l, kk)]).sum();
                n.set(i, j, kk, v / scaling);
            }
        }
    }

    Ok(GenericConstruction {
        casimir: inverse.clone() * 0.5,
        killing: KillingForm::Dense { matrix: k, inverse },
        nambu: NambuTensor::Dense(n),
        scaling,
    })
}
