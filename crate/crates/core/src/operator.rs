//! Compressed sparse row complex matrices acting on a Fock basis.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Symmetry an operator is expected to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Hermitian,
    AntiHermitian,
    General,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
    symmetry: Symmetry,
}

impl SparseOperator {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            row_ptr: vec![0; dim + 1],
            cols: Vec::new(),
            vals: Vec::new(),
            symmetry: Symmetry::Hermitian,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        Self::from_triplets(
            entries.len(),
            entries
                .iter()
                .enumerate()
                .map(|(i, &v)| (i, i, Complex64::new(v, 0.0))),
        )
        .with_symmetry(Symmetry::Hermitian)
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed and
    /// exact zeros dropped.
    pub fn from_triplets<I>(dim: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Complex64)>,
    {
        let mut entries: Vec<(usize, usize, Complex64)> = triplets.into_iter().collect();
        entries.sort_unstable_by_key(|e| (e.0, e.1));

        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(entries.len());
        let mut vals: Vec<Complex64> = Vec::with_capacity(entries.len());
        let mut rows = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            assert!(r < dim && c < dim, "triplet ({r}, {c}) outside dimension {dim}");
            if let (Some(&lr), Some(&lc)) = (rows.last(), cols.last()) {
                if lr == r && lc == c {
                    *vals.last_mut().unwrap() += v;
                    continue;
                }
            }
            rows.push(r);
            cols.push(c);
            vals.push(v);
        }
        let mut out_cols = Vec::with_capacity(cols.len());
        let mut out_vals = Vec::with_capacity(vals.len());
        for ((r, c), v) in rows.into_iter().zip(cols).zip(vals) {
            if v != ZERO {
                row_ptr[r + 1] += 1;
                out_cols.push(c);
                out_vals.push(v);
            }
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self {
            dim,
            row_ptr,
            cols: out_cols,
            vals: out_vals,
            symmetry: Symmetry::General,
        }
    }

    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        self.symmetry = symmetry;
        self
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[span.clone()]
            .iter()
            .copied()
            .zip(self.vals[span].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[span.clone()].binary_search(&j) {
            Ok(pos) => self.vals[span.start + pos],
            Err(_) => ZERO,
        }
    }

    /// Row-major sorted nonzero entries.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let mut out = vec![vec![ZERO; self.dim]; self.dim];
        for (i, j, v) in self.triplets() {
            out[i][j] = v;
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let symmetry = self.symmetry;
        Self::from_triplets(self.dim, self.triplets().map(|(i, j, v)| (j, i, v.conj())))
            .with_symmetry(symmetry)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let symmetry = match (self.symmetry, s.im == 0.0, s.re == 0.0) {
            (sym, true, _) => sym,
            (Symmetry::Hermitian, false, true) => Symmetry::AntiHermitian,
            (Symmetry::AntiHermitian, false, true) => Symmetry::Hermitian,
            _ => Symmetry::General,
        };
        if s == ZERO {
            return Self::zero(self.dim).with_symmetry(symmetry);
        }
        Self {
            dim: self.dim,
            row_ptr: self.row_ptr.clone(),
            cols: self.cols.clone(),
            vals: self.vals.iter().map(|v| v * s).collect(),
            symmetry,
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, other: &Self, s: Complex64) -> Result<Self> {
        self.check_dim(other)?;
        let symmetry = if s.im == 0.0 && self.symmetry == other.symmetry {
            self.symmetry
        } else {
            Symmetry::General
        };
        let triplets = self
            .triplets()
            .chain(other.triplets().map(|(i, j, v)| (i, j, v * s)));
        Ok(Self::from_triplets(self.dim, triplets).with_symmetry(symmetry))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, Complex64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, Complex64::new(-1.0, 0.0))
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let dim = self.dim;
        let mut acc = vec![ZERO; dim];
        let mut seen = vec![false; dim];
        let mut touched: Vec<usize> = Vec::new();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        row_ptr.push(0);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for i in 0..dim {
            for (k, a) in self.row(i) {
                for (j, b) in other.row(k) {
                    if !seen[j] {
                        seen[j] = true;
                        touched.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                if acc[j] != ZERO {
                    cols.push(j);
                    vals.push(acc[j]);
                }
                acc[j] = ZERO;
                seen[j] = false;
            }
            touched.clear();
            row_ptr.push(cols.len());
        }
        Ok(Self {
            dim,
            row_ptr,
            cols,
            vals,
            symmetry: Symmetry::General,
        })
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length does not match operator");
        (0..self.dim)
            .map(|i| self.row(i).map(|(j, a)| a * v[j]).sum())
            .collect()
    }

    /// `⟨v, A v⟩`.
    pub fn expectation(&self, v: &[Complex64]) -> Complex64 {
        let av = self.apply(v);
        v.iter().zip(av.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.vals.iter().map(|v| v.norm_sqr()).fold(0.0, |acc, x| acc + x).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.vals.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    /// Largest `|A_ij − z δ_ij|`.
    pub fn max_deviation_from_scalar(&self, z: Complex64) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            let mut diag = ZERO;
            for (j, v) in self.row(i) {
                if j == i {
                    diag = v;
                } else {
                    worst = worst.max(v.norm());
                }
            }
            worst = worst.max((diag - z).norm());
        }
        worst
    }

    /// Largest deviation from the flagged symmetry (`A − A†` or `A + A†`).
    pub fn symmetry_residual(&self) -> f64 {
        let sign = match self.symmetry {
            Symmetry::Hermitian => -1.0,
            Symmetry::AntiHermitian => 1.0,
            Symmetry::General => return 0.0,
        };
        let mut worst = 0.0_f64;
        for (i, j, v) in self.triplets() {
            worst = worst.max((v + self.get(j, i).conj() * sign).norm());
        }
        worst
    }

    pub fn verify_symmetry(&self, tolerance: f64) -> bool {
        self.symmetry_residual() < tolerance
    }

    pub fn is_diagonal(&self) -> bool {
        self.triplets().all(|(i, j, _)| i == j)
    }

    /// Restricts to the entries whose row and column are both kept, i.e.
    /// `P A P` for the diagonal 0/1 projector `P = diag(keep)`.
    pub fn compress(&self, keep: &[bool]) -> Self {
        assert_eq!(keep.len(), self.dim);
        let symmetry = self.symmetry;
        Self::from_triplets(
            self.dim,
            self.triplets().filter(|&(i, j, _)| keep[i] && keep[j]),
        )
        .with_symmetry(symmetry)
    }

    /// The kept block as an operator on the smaller space, with kept indices
    /// renumbered in order.
    pub fn restrict(&self, keep: &[bool]) -> Self {
        assert_eq!(keep.len(), self.dim);
        let mut new_index = vec![usize::MAX; self.dim];
        let mut next = 0;
        for (i, &k) in keep.iter().enumerate() {
            if k {
                new_index[i] = next;
                next += 1;
            }
        }
        let symmetry = self.symmetry;
        Self::from_triplets(
            next,
            self.triplets()
                .filter(|&(i, j, _)| keep[i] && keep[j])
                .map(|(i, j, v)| (new_index[i], new_index[j], v)),
        )
        .with_symmetry(symmetry)
    }
}

/// `[A, B] = AB − BA`.
pub fn commutator(a: &SparseOperator, b: &SparseOperator) -> Result<SparseOperator> {
    let ab = a.mul(b)?;
    let ba = b.mul(a)?;
    let symmetry = match (a.symmetry, b.symmetry) {
        (Symmetry::Hermitian, Symmetry::Hermitian)
        | (Symmetry::AntiHermitian, Symmetry::AntiHermitian) => Symmetry::AntiHermitian,
        (Symmetry::Hermitian, Symmetry::AntiHermitian)
        | (Symmetry::AntiHermitian, Symmetry::Hermitian) => Symmetry::Hermitian,
        _ => Symmetry::General,
    };
    Ok(ab.sub(&ba)?.with_symmetry(symmetry))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample() -> SparseOperator {
        SparseOperator::from_triplets(
            3,
            [
                (0, 1, c(1.0, 2.0)),
                (2, 0, c(-1.0, 0.0)),
                (0, 1, c(1.0, 0.0)),
                (1, 1, c(0.0, 0.0)),
            ],
        )
    }

    #[test]
    fn triplets_merge_and_sort() {
        let a = sample();
        assert_eq!(a.nnz(), 2);
        assert_eq!(a.get(0, 1), c(2.0, 2.0));
        assert_eq!(a.get(1, 1), c(0.0, 0.0));
        let t: Vec<_> = a.triplets().collect();
        assert_eq!(t, vec![(0, 1, c(2.0, 2.0)), (2, 0, c(-1.0, 0.0))]);
    }

    #[test]
    fn product_matches_dense() {
        let a = sample();
        let b = a.adjoint().add(&SparseOperator::identity(3)).unwrap();
        let ab = a.mul(&b).unwrap().to_dense();
        let (da, db) = (a.to_dense(), b.to_dense());
        for i in 0..3 {
            for j in 0..3 {
                let expected: Complex64 = (0..3).map(|k| da[i][k] * db[k][j]).sum();
                assert_eq!(ab[i][j], expected);
            }
        }
    }

    #[test]
    fn hermitian_part_flags() {
        let a = sample();
        let h = a.add(&a.adjoint()).unwrap().with_symmetry(Symmetry::Hermitian);
        assert!(h.verify_symmetry(1e-15));
        let ah = a.sub(&a.adjoint()).unwrap().with_symmetry(Symmetry::AntiHermitian);
        assert!(ah.verify_symmetry(1e-15));
        assert!(!a.clone().with_symmetry(Symmetry::Hermitian).verify_symmetry(1e-3));
        let comm = commutator(&h, &h.scale_real(2.0)).unwrap();
        assert_eq!(comm.symmetry(), Symmetry::AntiHermitian);
        assert!(comm.max_abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = SparseOperator::identity(2);
        let b = SparseOperator::identity(3);
        assert_eq!(
            commutator(&a, &b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn expectation_and_scalar_deviation() {
        let d = SparseOperator::diagonal(&[1.0, 2.0]);
        let v = [c(0.6, 0.0), c(0.0, 0.8)];
        assert!((d.expectation(&v) - c(0.36 + 2.0 * 0.64, 0.0)).norm() < 1e-15);
        assert_eq!(d.max_deviation_from_scalar(c(1.5, 0.0)), 0.5);
    }
}
