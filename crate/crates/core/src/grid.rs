//! Wave-vector lattice of the truncated system.
//!
//! The grid `I_n` holds every integer pair with both coordinates in
//! `[-(n-1)/2, (n-1)/2]` except the origin, for odd `n >= 3`. Modes are
//! stored densely in row-major order over `(i1, i2)` with the origin skipped,
//! which makes the linear index of `-k` equal to `len - 1 - index(k)`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WaveVector {
    pub i1: i64,
    pub i2: i64,
}

impl WaveVector {
    pub const ZERO: WaveVector = WaveVector { i1: 0, i2: 0 };

    pub const fn new(i1: i64, i2: i64) -> Self {
        WaveVector { i1, i2 }
    }

    /// `i1*k2 - i2*k1`
    pub fn cross(self, other: WaveVector) -> i64 {
        self.i1 * other.i2 - self.i2 * other.i1
    }

    pub fn dot(self, other: WaveVector) -> i64 {
        self.i1 * other.i1 + self.i2 * other.i2
    }

    pub fn norm_sq(self) -> i64 {
        self.i1 * self.i1 + self.i2 * self.i2
    }

    pub fn is_zero(self) -> bool {
        self.i1 == 0 && self.i2 == 0
    }

    pub fn max_abs(self) -> i64 {
        self.i1.abs().max(self.i2.abs())
    }
}

impl Add for WaveVector {
    type Output = WaveVector;
    fn add(self, rhs: WaveVector) -> WaveVector {
        WaveVector::new(self.i1 + rhs.i1, self.i2 + rhs.i2)
    }
}

impl Sub for WaveVector {
    type Output = WaveVector;
    fn sub(self, rhs: WaveVector) -> WaveVector {
        WaveVector::new(self.i1 - rhs.i1, self.i2 - rhs.i2)
    }
}

impl Neg for WaveVector {
    type Output = WaveVector;
    fn neg(self) -> WaveVector {
        WaveVector::new(-self.i1, -self.i2)
    }
}

impl fmt::Display for WaveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i1, self.i2)
    }
}

impl From<(i64, i64)> for WaveVector {
    fn from((i1, i2): (i64, i64)) -> Self {
        WaveVector::new(i1, i2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruncationGrid {
    n: i64,
}

impl TruncationGrid {
    pub fn new(n: i64) -> Result<Self> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::InvalidGridSize(n));
        }
        Ok(TruncationGrid { n })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Largest coordinate magnitude, `(n-1)/2`.
    pub fn half_width(&self) -> i64 {
        (self.n - 1) / 2
    }

    /// Number of modes, `n^2 - 1`.
    pub fn len(&self) -> usize {
        (self.n * self.n - 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The lattice spacing of the sine phase, `2*pi/n`.
    pub fn phase_step(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    pub fn contains(&self, k: WaveVector) -> bool {
        let m = self.half_width();
        !k.is_zero() && k.i1.abs() <= m && k.i2.abs() <= m
    }

    /// Dimension-wise reduction into the symmetric range `[-(n-1)/2, (n-1)/2]`.
    /// The result may be the origin.
    pub fn mod_reduce(&self, v: WaveVector) -> WaveVector {
        WaveVector::new(self.reduce_scalar(v.i1), self.reduce_scalar(v.i2))
    }

    pub(crate) fn reduce_scalar(&self, x: i64) -> i64 {
        let m = self.half_width();
        (x + m).rem_euclid(self.n) - m
    }

    /// `sin(2*pi/n * c)` with the integer `c` first reduced modulo `n`, so that
    /// multiples of `n` yield an exact zero.
    pub fn sin_phase(&self, c: i64) -> f64 {
        let r = self.reduce_scalar(c);
        if r == 0 {
            0.0
        } else {
            (self.phase_step() * r as f64).sin()
        }
    }

    pub fn cos_phase(&self, c: i64) -> f64 {
        let r = self.reduce_scalar(c);
        if r == 0 {
            1.0
        } else {
            (self.phase_step() * r as f64).cos()
        }
    }

    pub fn linear_index(&self, k: WaveVector) -> Result<usize> {
        if !self.contains(k) {
            return Err(Error::NotInGrid(k, self.n));
        }
        Ok(self.linear_index_unchecked(k))
    }

    #[inline]
    pub(crate) fn linear_index_unchecked(&self, k: WaveVector) -> usize {
        let m = self.half_width();
        let p = ((k.i1 + m) * self.n + (k.i2 + m)) as usize;
        let origin = self.len() / 2;
        if p > origin {
            p - 1
        } else {
            p
        }
    }

    /// Linear index of the reduced vector, or `None` when it reduces to the origin.
    #[inline]
    pub fn reduced_index(&self, v: WaveVector) -> Option<usize> {
        let r = self.mod_reduce(v);
        if r.is_zero() {
            None
        } else {
            Some(self.linear_index_unchecked(r))
        }
    }

    pub fn from_linear(&self, index: usize) -> Result<WaveVector> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange {
                index,
                dim: self.len(),
            });
        }
        Ok(self.mode(index))
    }

    #[inline]
    pub(crate) fn mode(&self, index: usize) -> WaveVector {
        let m = self.half_width();
        let origin = self.len() / 2;
        let p = if index >= origin { index + 1 } else { index } as i64;
        WaveVector::new(p / self.n - m, p % self.n - m)
    }

    /// Linear index of `-k` given the linear index of `k`.
    #[inline]
    pub fn negated_index(&self, index: usize) -> usize {
        self.len() - 1 - index
    }

    pub fn modes(&self) -> impl Iterator<Item = WaveVector> + '_ {
        (0..self.len()).map(move |i| self.mode(i))
    }
}

pub fn build_grid(n: i64) -> Result<TruncationGrid> {
    TruncationGrid::new(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    #[test]
    fn grid_sizes() {
        assert_eq!(build_grid(3).unwrap().len(), 8);
        assert_eq!(build_grid(5).unwrap().len(), 24);
        assert_eq!(build_grid(5).unwrap().modes().count(), 24);
    }

    #[test]
    fn rejects_bad_sizes() {
        for n in [-3, 0, 1, 2, 4, 10] {
            assert!(matches!(build_grid(n), Err(Error::InvalidGridSize(_))));
        }
    }

    #[test]
    fn n3_is_unit_box_without_origin() {
        let g = build_grid(3).unwrap();
        let set: HashSet<_> = g.modes().collect();
        for a in -1..=1 {
            for b in -1..=1 {
                let k = WaveVector::new(a, b);
                assert_eq!(set.contains(&k), !k.is_zero());
            }
        }
        for k in &set {
            assert!(set.contains(&-*k));
        }
    }

    #[test]
    fn canonical_order_is_row_major() {
        let g = build_grid(3).unwrap();
        let modes: Vec<_> = g.modes().map(|k| (k.i1, k.i2)).collect();
        assert_eq!(
            modes,
            vec![
                (-1, -1),
                (-1, 0),
                (-1, 1),
                (0, -1),
                (0, 1),
                (1, -1),
                (1, 0),
                (1, 1)
            ]
        );
    }

    #[test]
    fn mod_reduce_examples() {
        let g = build_grid(5).unwrap();
        assert_eq!(g.mod_reduce(WaveVector::new(3, 0)), WaveVector::new(-2, 0));
        assert_eq!(g.mod_reduce(WaveVector::new(1, 1)), WaveVector::new(1, 1));
        assert_eq!(g.mod_reduce(WaveVector::new(5, -5)), WaveVector::ZERO);
    }

    #[test]
    fn sin_phase_exact_zero_on_multiples() {
        let g = build_grid(5).unwrap();
        assert_eq!(g.sin_phase(5), 0.0);
        assert_eq!(g.sin_phase(-10), 0.0);
        assert_eq!(g.sin_phase(1), -g.sin_phase(-1));
    }

    #[test]
    fn negated_index_matches() {
        let g = build_grid(7).unwrap();
        for (idx, k) in g.modes().enumerate() {
            assert_eq!(g.linear_index(-k).unwrap(), g.negated_index(idx));
        }
    }

    #[test]
    fn out_of_grid_rejected() {
        let g = build_grid(5).unwrap();
        assert!(g.linear_index(WaveVector::ZERO).is_err());
        assert!(g.linear_index(WaveVector::new(3, 0)).is_err());
        assert!(g.from_linear(24).is_err());
    }

    proptest! {
        #[test]
        fn linear_index_round_trip(half in 1i64..12, seed in 0usize..10_000) {
            let g = build_grid(2 * half + 1).unwrap();
            let idx = seed % g.len();
            let k = g.from_linear(idx).unwrap();
            prop_assert!(g.contains(k));
            prop_assert_eq!(g.linear_index(k).unwrap(), idx);
        }

        #[test]
        fn mod_reduce_idempotent_and_odd(half in 1i64..12, a in -200i64..200, b in -200i64..200) {
            let g = build_grid(2 * half + 1).unwrap();
            let v = WaveVector::new(a, b);
            let r = g.mod_reduce(v);
            prop_assert_eq!(g.mod_reduce(r), r);
            prop_assert_eq!(g.mod_reduce(-v), -r);
            prop_assert!(r.max_abs() <= g.half_width());
            prop_assert_eq!((r.i1 - a).rem_euclid(g.n()), 0);
        }
    }
}
