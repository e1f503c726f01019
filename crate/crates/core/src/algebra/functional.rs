//! Differentiable functions of the vorticity modes.
//!
//! Every mode is an independent complex coordinate; gradients are the
//! holomorphic partials `dF/dzeta_i`.

use num_complex::Complex64;
use rand::Rng;

use crate::field::{energy_unchecked, enstrophy_unchecked, ModeField, TORUS_AREA};
use crate::grid::TruncationGrid;

pub trait Functional {
    fn value(&self, field: &ModeField) -> Complex64;
    fn gradient(&self, field: &ModeField) -> Vec<Complex64>;
}

/// `F(zeta) = zeta_i`.
#[derive(Clone, Copy, Debug)]
pub struct Coordinate(pub usize);

impl Functional for Coordinate {
    fn value(&self, field: &ModeField) -> Complex64 {
        field.coefficients()[self.0]
    }

    fn gradient(&self, field: &ModeField) -> Vec<Complex64> {
        let mut g = vec![Complex64::new(0.0, 0.0); field.coefficients().len()];
        g[self.0] = Complex64::new(1.0, 0.0);
        g
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Energy;

impl Functional for Energy {
    fn value(&self, field: &ModeField) -> Complex64 {
        energy_unchecked(field)
    }

    fn gradient(&self, field: &ModeField) -> Vec<Complex64> {
        hamiltonian_gradient(field)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Enstrophy;

impl Functional for Enstrophy {
    fn value(&self, field: &ModeField) -> Complex64 {
        enstrophy_unchecked(field)
    }

    fn gradient(&self, field: &ModeField) -> Vec<Complex64> {
        enstrophy_gradient(field)
    }
}

/// `dH/dzeta_i = (2 pi)^2 zeta_{-i} / i^2`.
pub fn hamiltonian_gradient(field: &ModeField) -> Vec<Complex64> {
    let grid = field.grid();
    let z = field.coefficients();
    grid.modes()
        .enumerate()
        .map(|(i, k)| z[grid.negated_index(i)] * (TORUS_AREA / k.norm_sq() as f64))
        .collect()
}

/// `dE/dzeta_i = (2 pi)^2 zeta_{-i}`.
pub fn enstrophy_gradient(field: &ModeField) -> Vec<Complex64> {
    let grid = field.grid();
    let z = field.coefficients();
    (0..grid.len())
        .map(|i| z[grid.negated_index(i)] * TORUS_AREA)
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub coefficient: Complex64,
    /// Linear mode indices, repeated for powers.
    pub modes: Vec<usize>,
}

/// A finite sum of monomials in the modes.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Polynomial {
    pub terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn new(terms: Vec<Monomial>) -> Self {
        Polynomial { terms }
    }

    /// Adds the monomial together with its mirror (conjugate coefficient,
    /// negated modes), keeping the value real on conjugate-symmetric fields.
    pub fn push_real(&mut self, grid: TruncationGrid, coefficient: Complex64, modes: Vec<usize>) {
        let mirror = modes.iter().map(|&m| grid.negated_index(m)).collect();
        self.terms.push(Monomial { coefficient, modes });
        self.terms.push(Monomial {
            coefficient: coefficient.conj(),
            modes: mirror,
        });
    }

    /// Random real polynomial with `terms` mirrored monomials of degree `1..=max_degree`.
    pub fn random_real(
        grid: TruncationGrid,
        rng: &mut impl Rng,
        terms: usize,
        max_degree: usize,
    ) -> Self {
        Self::random_real_on(
            grid,
            &(0..grid.len()).collect::<Vec<_>>(),
            rng,
            terms,
            max_degree,
        )
    }

    /// As [`Polynomial::random_real`], drawing modes from `support` only.
    pub fn random_real_on(
        grid: TruncationGrid,
        support: &[usize],
        rng: &mut impl Rng,
        terms: usize,
        max_degree: usize,
    ) -> Self {
        let mut p = Polynomial::default();
        for _ in 0..terms {
            let degree = rng.gen_range(1..=max_degree.max(1));
            let modes = (0..degree)
                .map(|_| support[rng.gen_range(0..support.len())])
                .collect();
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            p.push_real(grid, c, modes);
        }
        p
    }
}

impl Functional for Polynomial {
    fn value(&self, field: &ModeField) -> Complex64 {
        let z = field.coefficients();
        self.terms
            .iter()
            .map(|t| t.modes.iter().fold(t.coefficient, |acc, &m| acc * z[m]))
            .sum()
    }

    fn gradient(&self, field: &ModeField) -> Vec<Complex64> {
        let z = field.coefficients();
        let mut g = vec![Complex64::new(0.0, 0.0); z.len()];
        for t in &self.terms {
            for (p, &m) in t.modes.iter().enumerate() {
                let partial = t
                    .modes
                    .iter()
                    .enumerate()
                    .filter(|(q, _)| *q != p)
                    .fold(t.coefficient, |acc, (_, &o)| acc * z[o]);
                g[m] += partial;
            }
        }
        g
    }
}
