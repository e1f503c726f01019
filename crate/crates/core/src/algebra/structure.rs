//! Structure constants of the sine-bracket algebra, its continuum limit,
//! and dense constants for arbitrary small Lie algebras.

use std::f64::consts::PI;
use std::io::Read;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::grid::{TruncationGrid, WaveVector};

/// Largest dimension accepted by the dense path.
pub const MAX_GENERIC_DIM: usize = 128;

/// Relative tolerance for validating antisymmetry and the Jacobi identity of
/// user-supplied constants.
pub const CONSTANTS_TOLERANCE: f64 = 1e-10;

/// `-(2 pi)^-2 (n / 2 pi)`, the prefactor of the truncated constants.
pub fn zeitlin_prefactor(grid: TruncationGrid) -> f64 {
    -(grid.n() as f64 / (2.0 * PI)) / (4.0 * PI * PI)
}

/// `alpha_ij^k = -(2 pi)^-2 (n / 2 pi) sin(2 pi/n i x j)` when `(i + j)|n = k`, else 0.
pub fn alpha_zeitlin(
    grid: TruncationGrid,
    i: WaveVector,
    j: WaveVector,
    k: WaveVector,
) -> Result<f64> {
    for v in [i, j, k] {
        if !grid.contains(v) {
            return Err(Error::NotInGrid(v, grid.n()));
        }
    }
    if grid.mod_reduce(i + j) != k {
        return Ok(0.0);
    }
    Ok(zeitlin_prefactor(grid) * grid.sin_phase(i.cross(j)))
}

/// `-(2 pi)^-2 (i x j)` when `i + j = k` exactly, else 0.
pub fn alpha_continuum(i: WaveVector, j: WaveVector, k: WaveVector) -> f64 {
    if i + j != k {
        return 0.0;
    }
    -(i.cross(j) as f64) / (4.0 * PI * PI)
}

/// Where the only nonzero `alpha_ij^k` can sit for a given `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// At most one `k`; `None` when none exists.
    Unique(Option<usize>),
    /// No structural information; every `k` must be visited.
    Any,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseConstants {
    dim: usize,
    data: Vec<f64>,
}

#[derive(Deserialize)]
struct TripleRecord {
    i: usize,
    j: usize,
    k: usize,
    value: f64,
}

impl DenseConstants {
    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_GENERIC_DIM {
            return Err(Error::InvalidConstants(format!(
                "dimension {dim} outside 1..={MAX_GENERIC_DIM}"
            )));
        }
        Ok(DenseConstants {
            dim,
            data: vec![0.0; dim * dim * dim],
        })
    }

    pub fn from_triples(
        dim: usize,
        triples: impl IntoIterator<Item = (usize, usize, usize, f64)>,
    ) -> Result<Self> {
        let mut out = Self::zeros(dim)?;
        for (i, j, k, v) in triples {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            out.set(i, j, k, v);
        }
        Ok(out)
    }

    /// Reads `i,j,k,value` rows (0-based indices, header required). The
    /// dimension is one past the largest index unless given explicitly.
    pub fn from_csv(reader: impl Read, dim: Option<usize>) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut triples = Vec::new();
        for rec in rdr.deserialize() {
            let r: TripleRecord = rec?;
            triples.push((r.i, r.j, r.k, r.value));
        }
        let inferred = triples
            .iter()
            .map(|t| t.0.max(t.1).max(t.2) + 1)
            .max()
            .unwrap_or(0);
        Self::from_triples(dim.unwrap_or(inferred), triples)
    }

    /// `su(2)` with `alpha_ij^k = epsilon_ijk`.
    pub fn levi_civita() -> Self {
        let mut out = Self::zeros(3).expect("dimension 3 is valid");
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            out.set(i, j, k, 1.0);
            out.set(j, i, k, -1.0);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: f64) {
        let d = self.dim;
        self.data[(i * d + j) * d + k] = value;
    }

    /// Flips the sign of the single entry `alpha_ij^k` (fault injection).
    pub fn flip_sign(&mut self, i: usize, j: usize, k: usize) {
        let v = self.get(i, j, k);
        self.set(i, j, k, -v);
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// Nonzero `(k, alpha_ij^k)` for every `(i, j)`, indexed `i * dim + j`.
    pub(crate) fn nonzeros(&self) -> Vec<Vec<(usize, f64)>> {
        let d = self.dim;
        (0..d * d)
            .map(|ij| {
                (0..d)
                    .filter_map(|k| {
                        let v = self.data[ij * d + k];
                        (v != 0.0).then_some((k, v))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize, f64)> + '_ {
        let d = self.dim;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(move |(p, v)| (p / (d * d), (p / d) % d, p % d, *v))
    }

    pub fn write_csv(&self, writer: impl std::io::Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["i", "j", "k", "value"])?;
        for (i, j, k, v) in self.triples() {
            w.write_record([i.to_string(), j.to_string(), k.to_string(), v.to_string()])?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StructureConstants {
    Zeitlin(TruncationGrid),
    Continuum,
    Generic(DenseConstants),
}

impl StructureConstants {
    /// Dimension of a finite algebra; `None` for the continuum.
    pub fn dim(&self) -> Option<usize> {
        match self {
            StructureConstants::Zeitlin(g) => Some(g.len()),
            StructureConstants::Continuum => None,
            StructureConstants::Generic(d) => Some(d.dim()),
        }
    }

    pub fn finite_dim(&self) -> Result<usize> {
        self.dim().ok_or(Error::KillingDiverges)
    }

    /// `alpha_ij^k` on linear indices of a finite algebra.
    pub fn entry(&self, i: usize, j: usize, k: usize) -> Result<f64> {
        let dim = self.finite_dim()?;
        for idx in [i, j, k] {
            if idx >= dim {
                return Err(Error::IndexOutOfRange { index: idx, dim });
            }
        }
        Ok(self.alpha_unchecked(i, j, k))
    }

    /// Evaluates the delta explicitly; the caller guarantees a finite variant
    /// and in-range indices.
    #[inline]
    pub(crate) fn alpha_unchecked(&self, i: usize, j: usize, k: usize) -> f64 {
        match self {
            StructureConstants::Zeitlin(g) => {
                let (a, b) = (g.mode(i), g.mode(j));
                if g.reduced_index(a + b) == Some(k) {
                    zeitlin_prefactor(*g) * g.sin_phase(a.cross(b))
                } else {
                    0.0
                }
            }
            StructureConstants::Generic(d) => d.get(i, j, k),
            StructureConstants::Continuum => {
                unreachable!("continuum constants have no finite index set")
            }
        }
    }

    /// Materializes a finite variant as dense constants.
    pub fn to_dense(&self) -> Result<DenseConstants> {
        let dim = self.finite_dim()?;
        let mut out = DenseConstants::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    out.set(i, j, k, self.alpha_unchecked(i, j, k));
                }
            }
        }
        Ok(out)
    }

    pub fn max_abs(&self) -> Result<f64> {
        match self {
            StructureConstants::Zeitlin(g) => {
                let m = (1..g.n()).map(|c| g.sin_phase(c).abs()).fold(0.0, f64::max);
                Ok(zeitlin_prefactor(*g).abs() * m)
            }
            StructureConstants::Generic(d) => Ok(d.max_abs()),
            StructureConstants::Continuum => Err(Error::KillingDiverges),
        }
    }

    /// Largest `|alpha_ij^k + alpha_ji^k|` over all index triples.
    pub fn antisymmetry_residual(&self) -> Result<f64> {
        let dim = self.finite_dim()?;
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    worst = worst
                        .max((self.alpha_unchecked(i, j, k) + self.alpha_unchecked(j, i, k)).abs());
                }
            }
        }
        Ok(worst)
    }

    /// Brute-force cyclic Jacobi sum. Returns `(max |residual|, max |term|)`,
    /// where each residual is `sum_l (a_ij^l a_lk^m + a_jk^l a_li^m + a_ki^l a_lj^m)`.
    pub fn jacobi_residual(&self) -> Result<(f64, f64)> {
        let dim = self.finite_dim()?;
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        match self {
            StructureConstants::Zeitlin(g) => {
                for i in 0..dim {
                    for j in 0..dim {
                        for k in 0..dim {
                            let Some(m) = g.reduced_index(g.mode(i) + g.mode(j) + g.mode(k)) else {
                                continue;
                            };
                            let mut acc = 0.0;
                            for l in 0..dim {
                                let terms = [
                                    self.alpha_unchecked(i, j, l) * self.alpha_unchecked(l, k, m),
                                    self.alpha_unchecked(j, k, l) * self.alpha_unchecked(l, i, m),
                                    self.alpha_unchecked(k, i, l) * self.alpha_unchecked(l, j, m),
                                ];
                                for t in terms {
                                    scale = scale.max(t.abs());
                                    acc += t;
                                }
                            }
                            worst = worst.max(acc.abs());
                        }
                    }
                }
            }
            StructureConstants::Generic(d) => {
                let nz = d.nonzeros();
                let mut acc = vec![0.0; dim];
                for i in 0..dim {
                    for j in 0..dim {
                        for k in 0..dim {
                            acc.iter_mut().for_each(|a| *a = 0.0);
                            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                                for &(l, x) in &nz[a * dim + b] {
                                    for &(m, y) in &nz[l * dim + c] {
                                        let t = x * y;
                                        scale = scale.max(t.abs());
                                        acc[m] += t;
                                    }
                                }
                            }
                            worst = acc.iter().fold(worst, |w, a| w.max(a.abs()));
                        }
                    }
                }
            }
            StructureConstants::Continuum => unreachable!(),
        }
        Ok((worst, scale))
    }
}
