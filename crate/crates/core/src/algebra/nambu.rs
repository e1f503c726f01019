//! Nambu tensors and the generalized Jacobi identity.
//!
//! For a constant totally antisymmetric tensor the five-functional identity
//! reduces to a contraction of
//! `R(i,j,k,l,p,q) = N_ijk N_lpq + N_ijq N_lkp + N_ijp N_lqk` against a
//! Hessian that is symmetric in `(i, l)`. Requiring `R = 0` for every tuple
//! ([`JacobiForm::Literal`]) is therefore stronger than the identity itself:
//! `su(2)` fails it while its Jacobian bracket satisfies the identity. The
//! exact condition is `R(i,j,k,l,p,q) + R(l,j,k,i,p,q) = 0`
//! ([`JacobiForm::Symmetrized`]), which the scan uses by default. On tuples
//! with `i = l` the two forms differ only by a factor of two.
//!
//! `R` is antisymmetric in `(i, j)` and in every pair of `(k, p, q)`; the
//! symmetrized residual is symmetric in `(i, l)` and antisymmetric in
//! `(k, p, q)`. Deduplication uses these symmetries.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;

use crate::algebra::structure::Target;
use crate::error::{Error, Result};
use crate::grid::{TruncationGrid, WaveVector};

/// Violations are reported when `|residual| > SCAN_TOLERANCE * max|N|^2`.
pub const SCAN_TOLERANCE: f64 = 1e-10;

/// The six wave vectors `(i, j, k, l, p, q)` whose first summand survives
/// while the other two vanish.
pub const COUNTEREXAMPLE: [WaveVector; 6] = [
    WaveVector::new(1, 0),
    WaveVector::new(0, 1),
    WaveVector::new(-1, -1),
    WaveVector::new(1, 0),
    WaveVector::new(-1, 1),
    WaveVector::new(0, -1),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TensorIndex {
    Mode(WaveVector),
    Basis(usize),
}

impl From<WaveVector> for TensorIndex {
    fn from(v: WaveVector) -> Self {
        TensorIndex::Mode(v)
    }
}

impl From<usize> for TensorIndex {
    fn from(v: usize) -> Self {
        TensorIndex::Basis(v)
    }
}

impl fmt::Display for TensorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorIndex::Mode(v) => v.fmt(f),
            TensorIndex::Basis(b) => b.fmt(f),
        }
    }
}

/// Dense `N_ijk`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor {
    dim: usize,
    data: Vec<f64>,
}

impl DenseTensor {
    pub fn zeros(dim: usize) -> Self {
        DenseTensor {
            dim,
            data: vec![0.0; dim * dim * dim],
        }
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

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NambuTensor {
    Zeitlin(TruncationGrid),
    Continuum,
    Dense(DenseTensor),
}

/// `-(2 pi)^-4 (n / 2 pi)`.
pub fn zeitlin_nambu_prefactor(grid: TruncationGrid) -> f64 {
    -(grid.n() as f64 / (2.0 * PI)) / (2.0 * PI).powi(4)
}

/// Scaled truncated tensor, nonzero only when `(i + j + k)|n = 0`.
pub fn nambu_zeitlin(
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
    Ok(zeitlin_entry(grid, i, j, k))
}

#[inline]
fn zeitlin_entry(grid: TruncationGrid, i: WaveVector, j: WaveVector, k: WaveVector) -> f64 {
    if grid.mod_reduce(i + j + k).is_zero() {
        zeitlin_nambu_prefactor(grid) * grid.sin_phase(i.cross(j))
    } else {
        0.0
    }
}

/// `-(2 pi)^-4 (i x j) delta_{i+j+k, 0}`.
pub fn nambu_continuum(i: WaveVector, j: WaveVector, k: WaveVector) -> f64 {
    if !(i + j + k).is_zero() {
        return 0.0;
    }
    -(i.cross(j) as f64) / (2.0 * PI).powi(4)
}

impl NambuTensor {
    pub fn entry(&self, i: TensorIndex, j: TensorIndex, k: TensorIndex) -> Result<f64> {
        use TensorIndex::*;
        match (self, i, j, k) {
            (NambuTensor::Zeitlin(g), Mode(a), Mode(b), Mode(c)) => nambu_zeitlin(*g, a, b, c),
            (NambuTensor::Continuum, Mode(a), Mode(b), Mode(c)) => {
                for v in [a, b, c] {
                    if v.is_zero() {
                        return Err(Error::InvalidConstants(
                            "continuum indices must be nonzero".into(),
                        ));
                    }
                }
                Ok(nambu_continuum(a, b, c))
            }
            (NambuTensor::Dense(d), Basis(a), Basis(b), Basis(c)) => {
                for idx in [a, b, c] {
                    if idx >= d.dim() {
                        return Err(Error::IndexOutOfRange {
                            index: idx,
                            dim: d.dim(),
                        });
                    }
                }
                Ok(d.get(a, b, c))
            }
            _ => Err(Error::InvalidConstants(
                "index kind does not match the tensor variant".into(),
            )),
        }
    }

    /// Finite indexed view. The continuum tensor is restricted to the box
    /// `|i1|, |i2| <= bound`.
    pub(crate) fn view(&self, continuum_bound: Option<i64>) -> Result<View<'_>> {
        match self {
            NambuTensor::Zeitlin(g) => Ok(View::Zeitlin(*g)),
            NambuTensor::Continuum => {
                let bound = continuum_bound.ok_or_else(|| {
                    Error::Config(
                        "the continuum tensor needs a coordinate bound for finite evaluation"
                            .into(),
                    )
                })?;
                Ok(View::Continuum(TruncationGrid::new(2 * bound + 1)?))
            }
            NambuTensor::Dense(d) => Ok(View::Dense(d)),
        }
    }
}

pub fn nambu_tensor(
    tensor: &NambuTensor,
    i: TensorIndex,
    j: TensorIndex,
    k: TensorIndex,
) -> Result<f64> {
    tensor.entry(i, j, k)
}

/// Linear-index access shared by the scan and the bracket contraction.
/// The continuum variant borrows a grid purely as a box enumeration.
pub(crate) enum View<'a> {
    Zeitlin(TruncationGrid),
    Continuum(TruncationGrid),
    Dense(&'a DenseTensor),
}

impl View<'_> {
    pub(crate) fn dim(&self) -> usize {
        match self {
            View::Zeitlin(g) | View::Continuum(g) => g.len(),
            View::Dense(d) => d.dim(),
        }
    }

    #[inline]
    pub(crate) fn entry(&self, i: usize, j: usize, k: usize) -> f64 {
        match self {
            View::Zeitlin(g) => zeitlin_entry(*g, g.mode(i), g.mode(j), g.mode(k)),
            View::Continuum(g) => nambu_continuum(g.mode(i), g.mode(j), g.mode(k)),
            View::Dense(d) => d.get(i, j, k),
        }
    }

    /// The unique `k` with possibly nonzero `N_ijk`.
    #[inline]
    pub(crate) fn third(&self, i: usize, j: usize) -> Target {
        match self {
            View::Zeitlin(g) => Target::Unique(g.reduced_index(-(g.mode(i) + g.mode(j)))),
            View::Continuum(g) => {
                let k = -(g.mode(i) + g.mode(j));
                Target::Unique(g.contains(k).then(|| g.linear_index_unchecked(k)))
            }
            View::Dense(_) => Target::Any,
        }
    }

    pub(crate) fn label(&self, i: usize) -> TensorIndex {
        match self {
            View::Zeitlin(g) | View::Continuum(g) => TensorIndex::Mode(g.mode(i)),
            View::Dense(_) => TensorIndex::Basis(i),
        }
    }

    fn index_of(&self, t: TensorIndex) -> Result<usize> {
        match (self, t) {
            (View::Zeitlin(g) | View::Continuum(g), TensorIndex::Mode(v)) => g.linear_index(v),
            (View::Dense(d), TensorIndex::Basis(b)) if b < d.dim() => Ok(b),
            (View::Dense(d), TensorIndex::Basis(b)) => Err(Error::IndexOutOfRange {
                index: b,
                dim: d.dim(),
            }),
            _ => Err(Error::InvalidConstants(
                "index kind does not match the tensor variant".into(),
            )),
        }
    }

    pub(crate) fn max_abs(&self) -> f64 {
        match self {
            View::Dense(d) => d.max_abs(),
            _ => {
                let dim = self.dim();
                let mut worst: f64 = 0.0;
                for i in 0..dim {
                    for j in 0..dim {
                        if let Target::Unique(Some(k)) = self.third(i, j) {
                            worst = worst.max(self.entry(i, j, k).abs());
                        }
                    }
                }
                worst
            }
        }
    }

    #[inline]
    fn form_residual(&self, t: [usize; 6], form: JacobiForm) -> f64 {
        let r = self.residual(t).total;
        match form {
            JacobiForm::Literal => r,
            JacobiForm::Symmetrized => {
                let [i, j, k, l, p, q] = t;
                r + self.residual([l, j, k, i, p, q]).total
            }
        }
    }

    #[inline]
    fn residual(&self, t: [usize; 6]) -> JacobiResidual {
        let [i, j, k, l, p, q] = t;
        let terms = [
            self.entry(i, j, k) * self.entry(l, p, q),
            self.entry(i, j, q) * self.entry(l, k, p),
            self.entry(i, j, p) * self.entry(l, q, k),
        ];
        JacobiResidual {
            terms,
            total: terms[0] + terms[1] + terms[2],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiResidual {
    /// `N_ijk N_lpq`, `N_ijq N_lkp`, `N_ijp N_lqk`.
    pub terms: [f64; 3],
    pub total: f64,
}

/// Evaluates the tensor form of the generalized Jacobi identity on `(i, j, k, l, p, q)`.
pub fn gen_jacobi_residual(
    tensor: &NambuTensor,
    tuple: [TensorIndex; 6],
) -> Result<JacobiResidual> {
    let entry = |a: usize, b: usize, c: usize| tensor.entry(tuple[a], tuple[b], tuple[c]);
    let terms = [
        entry(0, 1, 2)? * entry(3, 4, 5)?,
        entry(0, 1, 5)? * entry(3, 2, 4)?,
        entry(0, 1, 4)? * entry(3, 5, 2)?,
    ];
    Ok(JacobiResidual {
        terms,
        total: terms[0] + terms[1] + terms[2],
    })
}

/// Symmetrized residual `R(i,j,k,l,p,q) + R(l,j,k,i,p,q)`.
pub fn gen_jacobi_symmetrized(tensor: &NambuTensor, tuple: [TensorIndex; 6]) -> Result<f64> {
    let [i, j, k, l, p, q] = tuple;
    Ok(gen_jacobi_residual(tensor, tuple)?.total
        + gen_jacobi_residual(tensor, [l, j, k, i, p, q])?.total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum JacobiForm {
    /// `R(i,j,k,l,p,q)` itself.
    Literal,
    /// `R(i,j,k,l,p,q) + R(l,j,k,i,p,q)`, equivalent to the five-functional identity.
    #[default]
    Symmetrized,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiViolation {
    pub tuple: [TensorIndex; 6],
    pub indices: [usize; 6],
    /// Residual in the scan's [`JacobiForm`].
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    pub form: JacobiForm,
    pub violations: Vec<JacobiViolation>,
    pub tolerance: f64,
    pub max_entry: f64,
    pub evaluated: usize,
}

/// Canonical member of the symmetry class of `t`: `(k, p, q)` ascending, and
/// `(i, j)` (literal) or `(i, l)` (symmetrized) ascending. Returns the tuple
/// and the sign the residual picks up.
pub fn canonical_tuple(t: [usize; 6], form: JacobiForm) -> ([usize; 6], f64) {
    let [mut i, mut j, k, mut l, p, q] = t;
    let mut sign = 1.0;
    match form {
        JacobiForm::Literal => {
            if i > j {
                std::mem::swap(&mut i, &mut j);
                sign = -sign;
            }
        }
        JacobiForm::Symmetrized => {
            if i > l {
                std::mem::swap(&mut i, &mut l);
            }
        }
    }
    let mut tail = [k, p, q];
    for a in 0..3 {
        for b in 0..2 - a {
            if tail[b] > tail[b + 1] {
                tail.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    ([i, j, tail[0], l, tail[1], tail[2]], sign)
}

impl ScanResult {
    /// One representative per symmetry class, in canonical index order.
    pub fn deduplicated(&self) -> Vec<JacobiViolation> {
        let mut classes: BTreeMap<[usize; 6], &JacobiViolation> = BTreeMap::new();
        for v in &self.violations {
            let (key, _) = canonical_tuple(v.indices, self.form);
            let entry = classes.entry(key).or_insert(v);
            if v.indices == key {
                *entry = v;
            }
        }
        classes.values().map(|v| (*v).clone()).collect()
    }

    pub fn contains(&self, tuple: &[TensorIndex; 6]) -> bool {
        self.violations.iter().any(|v| &v.tuple == tuple)
    }

    /// Whether any violation lies in the symmetry class of `tuple`.
    pub fn contains_class(&self, indices: [usize; 6]) -> bool {
        let (key, _) = canonical_tuple(indices, self.form);
        self.violations
            .iter()
            .any(|v| canonical_tuple(v.indices, self.form).0 == key)
    }
}

/// Exhaustive search for six-tuples violating the generalized Jacobi identity
/// (symmetrized form).
pub fn scan_gen_jacobi(tensor: &NambuTensor, continuum_bound: Option<i64>) -> Result<ScanResult> {
    scan_gen_jacobi_with(tensor, continuum_bound, JacobiForm::Symmetrized)
}

/// For sparse tensors every nonzero product pins two of the six indices given
/// the other four, so the search runs over `(i, j, l, p)` and visits only the
/// candidate `(k, q)` completions; dense tensors are searched by brute force.
pub fn scan_gen_jacobi_with(
    tensor: &NambuTensor,
    continuum_bound: Option<i64>,
    form: JacobiForm,
) -> Result<ScanResult> {
    let view = tensor.view(continuum_bound)?;
    let dim = view.dim();
    let max_entry = view.max_abs();
    let threshold = SCAN_TOLERANCE * max_entry * max_entry;
    let dense = matches!(view, View::Dense(_));

    let per_i: Vec<(Vec<JacobiViolation>, usize)> = (0..dim)
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            let mut evaluated = 0usize;
            let mut emit = |t: [usize; 6], evaluated: &mut usize| {
                *evaluated += 1;
                let r = view.form_residual(t, form);
                if r.abs() > threshold {
                    found.push(JacobiViolation {
                        tuple: t.map(|x| view.label(x)),
                        indices: t,
                        residual: r,
                    });
                }
            };
            if threshold == 0.0 && max_entry == 0.0 {
                return (found, evaluated);
            }
            if dense {
                for j in 0..dim {
                    let row_zero = |a: usize| (0..dim).all(|k| view.entry(a, j, k) == 0.0);
                    if form == JacobiForm::Literal && row_zero(i) {
                        continue;
                    }
                    for k in 0..dim {
                        for l in 0..dim {
                            for p in 0..dim {
                                for q in 0..dim {
                                    emit([i, j, k, l, p, q], &mut evaluated);
                                }
                            }
                        }
                    }
                }
                return (found, evaluated);
            }
            let mut candidates: Vec<(usize, usize)> = Vec::with_capacity(2 * dim + 4);
            // (k, q) completions for which R(a, j, k, b, p, q) can be nonzero
            let completions =
                |a: usize, j: usize, b: usize, p: usize, out: &mut Vec<(usize, usize)>| {
                    let Target::Unique(Some(aj)) = view.third(a, j) else {
                        return;
                    };
                    if let Target::Unique(Some(bp)) = view.third(b, p) {
                        out.push((aj, bp));
                        out.push((bp, aj));
                    }
                    if aj == p {
                        for k in 0..dim {
                            if let Target::Unique(Some(q)) = view.third(b, k) {
                                out.push((k, q));
                            }
                        }
                    }
                };
            for j in 0..dim {
                for l in 0..dim {
                    for p in 0..dim {
                        candidates.clear();
                        completions(i, j, l, p, &mut candidates);
                        if form == JacobiForm::Symmetrized {
                            completions(l, j, i, p, &mut candidates);
                        }
                        if candidates.is_empty() {
                            continue;
                        }
                        candidates.sort_unstable();
                        candidates.dedup();
                        for &(k, q) in &candidates {
                            emit([i, j, k, l, p, q], &mut evaluated);
                        }
                    }
                }
            }
            (found, evaluated)
        })
        .collect();

    let evaluated = per_i.iter().map(|(_, e)| e).sum();
    let violations = per_i.into_iter().flat_map(|(v, _)| v).collect();
    Ok(ScanResult {
        form,
        violations,
        tolerance: threshold,
        max_entry,
        evaluated,
    })
}

/// Linear indices of a labelled tuple within the tensor's finite view.
pub fn tuple_indices(
    tensor: &NambuTensor,
    tuple: &[TensorIndex; 6],
    continuum_bound: Option<i64>,
) -> Result<[usize; 6]> {
    let view = tensor.view(continuum_bound)?;
    let mut out = [0usize; 6];
    for (o, t) in out.iter_mut().zip(tuple) {
        *o = view.index_of(*t)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;

    fn w(a: i64, b: i64) -> WaveVector {
        WaveVector::new(a, b)
    }

    fn modes(t: [WaveVector; 6]) -> [TensorIndex; 6] {
        t.map(TensorIndex::Mode)
    }

    #[test]
    fn counterexample_entry() {
        let g = build_grid(5).unwrap();
        let v = nambu_zeitlin(g, w(1, 0), w(0, 1), w(-1, -1)).unwrap();
        let expected = -(5.0 / (2.0 * PI)) * (2.0 * PI / 5.0).sin() / (2.0 * PI).powi(4);
        assert!((v - expected).abs() <= 1e-18);
        assert_eq!(nambu_zeitlin(g, w(1, 0), w(0, 1), w(1, 1)).unwrap(), 0.0);
    }

    #[test]
    fn permutation_signs() {
        let g = build_grid(5).unwrap();
        let (a, b, c) = (w(1, 2), w(1, -1), w(-2, -1));
        let base = nambu_zeitlin(g, a, b, c).unwrap();
        assert!(base != 0.0);
        assert_eq!(nambu_zeitlin(g, b, c, a).unwrap(), base);
        assert_eq!(nambu_zeitlin(g, c, a, b).unwrap(), base);
        assert_eq!(nambu_zeitlin(g, b, a, c).unwrap(), -base);
        assert_eq!(nambu_zeitlin(g, a, c, b).unwrap(), -base);
        assert_eq!(nambu_zeitlin(g, c, b, a).unwrap(), -base);
    }

    #[test]
    fn residual_vanishes_on_diagonal() {
        let g = build_grid(5).unwrap();
        let t = [TensorIndex::Mode(w(1, 1)); 6];
        let r = gen_jacobi_residual(&NambuTensor::Zeitlin(g), t).unwrap();
        assert_eq!(r.total, 0.0);
    }

    #[test]
    fn counterexample_summands() {
        for n in [5, 7, 9] {
            let g = build_grid(n).unwrap();
            let r = gen_jacobi_residual(&NambuTensor::Zeitlin(g), modes(COUNTEREXAMPLE)).unwrap();
            let s = (n as f64 / (2.0 * PI)) * (2.0 * PI / n as f64).sin();
            let expected = s * s / (2.0 * PI).powi(8);
            assert!((r.terms[0] - expected).abs() <= 1e-15 * expected);
            assert_eq!(r.terms[1], 0.0);
            assert_eq!(r.terms[2], 0.0);
        }
        let r = gen_jacobi_residual(&NambuTensor::Continuum, modes(COUNTEREXAMPLE)).unwrap();
        assert_eq!(r.terms, [1.0 / (2.0 * PI).powi(8), 0.0, 0.0]);
    }

    #[test]
    fn index_kind_mismatch_rejected() {
        let g = build_grid(5).unwrap();
        let t = NambuTensor::Zeitlin(g);
        assert!(t
            .entry(0usize.into(), 1usize.into(), 2usize.into())
            .is_err());
        assert!(t
            .entry(w(3, 0).into(), w(0, 1).into(), w(1, 1).into())
            .is_err());
    }

    #[test]
    fn canonical_tuple_parity() {
        let (t, s) = canonical_tuple([1, 0, 5, 9, 4, 3], JacobiForm::Literal);
        assert_eq!(t, [0, 1, 3, 9, 4, 5]);
        // (i,j) swap and the transposition (5,3) each flip the sign
        assert_eq!(s, 1.0);
        assert_eq!(
            canonical_tuple([0, 1, 4, 9, 5, 3], JacobiForm::Literal).1,
            1.0
        );
        assert_eq!(
            canonical_tuple([0, 1, 3, 9, 5, 4], JacobiForm::Literal).1,
            -1.0
        );
        let (t, s) = canonical_tuple([7, 0, 3, 2, 5, 4], JacobiForm::Symmetrized);
        assert_eq!(t, [2, 0, 3, 7, 4, 5]);
        assert_eq!(s, -1.0);
    }

    #[test]
    fn residual_respects_symmetries() {
        let g = build_grid(5).unwrap();
        let view = View::Zeitlin(g);
        let idx = tuple_indices(&NambuTensor::Zeitlin(g), &modes(COUNTEREXAMPLE), None).unwrap();
        let base = view.residual(idx).total;
        let [i, j, k, l, p, q] = idx;
        assert!((view.residual([j, i, k, l, p, q]).total + base).abs() < 1e-20);
        assert!((view.residual([i, j, p, l, q, k]).total - base).abs() < 1e-20);
        assert!((view.residual([i, j, k, l, q, p]).total + base).abs() < 1e-20);
        // i = l in this tuple, so the symmetrized residual doubles
        assert_eq!(view.form_residual(idx, JacobiForm::Symmetrized), 2.0 * base);
        let other = [3, 8, 1, 17, 6, 12];
        let sym = view.form_residual(other, JacobiForm::Symmetrized);
        assert_eq!(
            view.form_residual([17, 8, 1, 3, 6, 12], JacobiForm::Symmetrized),
            sym
        );
    }

    #[test]
    fn zero_tensor_scan_is_empty() {
        let t = NambuTensor::Dense(DenseTensor::zeros(3));
        assert!(scan_gen_jacobi(&t, None).unwrap().violations.is_empty());
    }

    #[test]
    fn continuum_needs_bound() {
        assert!(scan_gen_jacobi(&NambuTensor::Continuum, None).is_err());
    }

    fn brute_force(view: &View<'_>, form: JacobiForm, threshold: f64) -> Vec<[usize; 6]> {
        let dim = view.dim();
        let mut out = Vec::new();
        for t in 0..dim.pow(6) {
            let mut x = t;
            let mut idx = [0usize; 6];
            for slot in idx.iter_mut().rev() {
                *slot = x % dim;
                x /= dim;
            }
            if view.form_residual(idx, form).abs() > threshold {
                out.push(idx);
            }
        }
        out
    }

    #[test]
    fn sparse_scan_agrees_with_brute_force_at_n3() {
        let g = build_grid(3).unwrap();
        let tensor = NambuTensor::Zeitlin(g);
        for form in [JacobiForm::Literal, JacobiForm::Symmetrized] {
            let scan = scan_gen_jacobi_with(&tensor, None, form).unwrap();
            let mut brute = brute_force(&View::Zeitlin(g), form, scan.tolerance);
            let mut got: Vec<_> = scan.violations.iter().map(|v| v.indices).collect();
            got.sort();
            brute.sort();
            assert!(!got.is_empty());
            assert_eq!(got, brute, "{form:?}");
        }
    }

    #[test]
    fn continuum_box_scan_agrees_with_brute_force() {
        let tensor = NambuTensor::Continuum;
        let scan = scan_gen_jacobi(&tensor, Some(1)).unwrap();
        let mut brute = brute_force(
            &View::Continuum(build_grid(3).unwrap()),
            JacobiForm::Symmetrized,
            scan.tolerance,
        );
        let mut got: Vec<_> = scan.violations.iter().map(|v| v.indices).collect();
        got.sort();
        brute.sort();
        assert_eq!(got, brute);
    }

    #[test]
    fn levi_civita_fails_only_the_literal_form() {
        let mut n = DenseTensor::zeros(3);
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            n.set(i, j, k, 1.0);
            n.set(j, i, k, -1.0);
        }
        let t = NambuTensor::Dense(n);
        assert!(scan_gen_jacobi(&t, None).unwrap().violations.is_empty());
        let literal = scan_gen_jacobi_with(&t, None, JacobiForm::Literal).unwrap();
        assert_eq!(literal.violations.len(), 36);
    }

    #[test]
    fn deduplication_groups_symmetry_classes() {
        let g = build_grid(3).unwrap();
        let scan = scan_gen_jacobi(&NambuTensor::Zeitlin(g), None).unwrap();
        let classes = scan.deduplicated();
        assert!(classes.len() < scan.violations.len());
        for c in &classes {
            assert_eq!(
                canonical_tuple(c.indices, JacobiForm::Symmetrized).0,
                c.indices
            );
        }
        for v in &scan.violations {
            assert!(scan.contains_class(v.indices));
        }
    }
}
