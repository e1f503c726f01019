//! Initial conditions.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::ModeField;
use crate::grid::TruncationGrid;

/// Modes with `shell_min <= k^2 <= shell_max` get `amplitude / k^2` times a
/// seeded unit-modulus phase; the field is conjugate-symmetric by construction.
pub fn random_shell_field(
    grid: TruncationGrid,
    shell_min: i64,
    shell_max: i64,
    amplitude: f64,
    seed: u64,
) -> ModeField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut field = ModeField::zeros(grid);
    let half = grid.len() / 2;
    let modes: Vec<_> = grid.modes().take(half).collect();
    for k in modes {
        let phase: f64 = rng.gen_range(0.0..2.0 * PI);
        let k2 = k.norm_sq();
        if k2 < shell_min || k2 > shell_max {
            continue;
        }
        let c = Complex64::from_polar(amplitude / k2 as f64, phase);
        field.set_pair(k, c).expect("mode is in the grid");
    }
    field
}
