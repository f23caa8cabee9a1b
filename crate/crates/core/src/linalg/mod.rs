//! Dense matrices over the reals or complexes and the spectral quantities the
//! rest of the crate is built on: singular values, operator and Schatten
//! norms, condition numbers and Hermitian eigenvalues.

mod eigen;
mod lu;
mod svd;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Smallest-to-largest singular value ratio below which a matrix is treated
/// as rank deficient.
pub const RANK_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Real,
    Complex,
}

/// Row-major dense matrix with complex storage.
///
/// In [`Mode::Real`] every imaginary part is exactly zero and the kernels run
/// in `f64` arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
    mode: Mode,
}

macro_rules! with_scalars {
    ($m:expr, |$data:ident| $body:expr) => {
        match $m.mode {
            Mode::Real => {
                let $data: Vec<f64> = $m.real_parts();
                $body
            }
            Mode::Complex => {
                let $data: Vec<Complex64> = $m.entries.clone();
                $body
            }
        }
    };
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>, mode: Mode) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimension(
                "matrix dimensions must be positive",
            ));
        }
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if mode == Mode::Real && entries.iter().any(|z| z.im != 0.0) {
            return Err(Error::InvalidParameter(
                "real-mode matrix with nonzero imaginary part",
            ));
        }
        Ok(Self {
            rows,
            cols,
            entries,
            mode,
        })
    }

    pub fn from_real(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        let entries = values.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
        Self::new(rows, cols, entries, Mode::Real)
    }

    pub fn from_complex(rows: usize, cols: usize, values: Vec<Complex64>) -> Result<Self> {
        Self::new(rows, cols, values, Mode::Complex)
    }

    /// Complex-mode matrix from an entry function.
    ///
    /// # Panics
    /// If either dimension is zero.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
            mode: Mode::Complex,
        }
    }

    /// Real-mode matrix from an entry function.
    ///
    /// # Panics
    /// If either dimension is zero.
    pub fn from_real_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::from_fn(rows, cols, |i, j| Complex64::new(f(i, j), 0.0));
        m.mode = Mode::Real;
        m
    }

    pub fn zeros(rows: usize, cols: usize, mode: Mode) -> Self {
        let mut m = Self::from_fn(rows, cols, |_, _| Complex64::new(0.0, 0.0));
        m.mode = mode;
        m
    }

    pub fn identity(n: usize) -> Self {
        Self::from_real_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_real_fn(n, n, |i, j| if i == j { values[i] } else { 0.0 })
    }

    /// `n x 1` matrix holding `values`; real mode when every imaginary part is zero.
    pub fn column_vector(values: &[Complex64]) -> Self {
        let mut m = Self::from_fn(values.len(), 1, |i, _| values[i]);
        m.mode = detect_mode(values);
        m
    }

    /// Outer product `z z^*`.
    pub fn outer(z: &[Complex64]) -> Self {
        let mut m = Self::from_fn(z.len(), z.len(), |i, j| z[i] * z[j].conj());
        m.mode = detect_mode(z);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_real(&self) -> bool {
        self.mode == Mode::Real
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<Complex64>> + '_ {
        (0..self.cols).map(|j| self.column(j))
    }

    /// Same entries tagged complex.
    pub fn into_complex(mut self) -> Self {
        self.mode = Mode::Complex;
        self
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn ensure_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFiniteEntry)
        }
    }

    /// Column submatrix in the given index order.
    pub fn select_columns(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidDimension("empty column selection"));
        }
        if indices.iter().any(|&j| j >= self.cols) {
            return Err(Error::OutOfRange("column index"));
        }
        let mut m = Self::from_fn(self.rows, indices.len(), |i, t| self.get(i, indices[t]));
        m.mode = self.mode;
        Ok(m)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i));
        m.mode = self.mode;
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj());
        m.mode = self.mode;
        m
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch("inner dimensions differ"));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows * other.cols];
        for i in 0..self.rows {
            let out_row = &mut out[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        let mode = combine(self.mode, other.mode);
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            entries: out,
            mode,
        })
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch("operands differ in shape"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
            mode: combine(self.mode, other.mode),
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        let entries = self.entries.iter().map(|z| z * s).collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
            mode: self.mode,
        }
    }

    /// Multiplies by a complex scalar; the result is complex mode unless `s` is real.
    pub fn scale_complex(&self, s: Complex64) -> Self {
        let entries = self.entries.iter().map(|z| z * s).collect();
        let mode = if s.im == 0.0 {
            self.mode
        } else {
            Mode::Complex
        };
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
            mode,
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `A A^*`, Hermitian of size `rows x rows`.
    pub fn gram_rows(&self) -> Self {
        let entries = with_scalars!(self, |data| row_gram(self.rows, self.cols, &data)
            .into_iter()
            .map(Scalar::to_c64)
            .collect());
        Self {
            rows: self.rows,
            cols: self.rows,
            entries,
            mode: self.mode,
        }
    }

    /// `A^* A`, Hermitian of size `cols x cols`.
    pub fn gram_cols(&self) -> Self {
        self.adjoint().gram_rows()
    }

    /// `sum_j w_j a_j a_j^*` over the columns `a_j`, i.e. `A diag(w) A^*`.
    pub fn weighted_gram_rows(&self, weights: &[f64]) -> Result<Self> {
        if weights.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: weights.len(),
            });
        }
        let entries = with_scalars!(self, |data| weighted_row_gram(
            self.rows, self.cols, &data, weights
        )
        .into_iter()
        .map(Scalar::to_c64)
        .collect());
        Ok(Self {
            rows: self.rows,
            cols: self.rows,
            entries,
            mode: self.mode,
        })
    }

    fn real_parts(&self) -> Vec<f64> {
        self.entries.iter().map(|z| z.re).collect()
    }
}

fn combine(a: Mode, b: Mode) -> Mode {
    if a == Mode::Real && b == Mode::Real {
        Mode::Real
    } else {
        Mode::Complex
    }
}

fn detect_mode(values: &[Complex64]) -> Mode {
    if values.iter().all(|z| z.im == 0.0) {
        Mode::Real
    } else {
        Mode::Complex
    }
}

/// `G[i][j] = <row_i, row_j>`, lower triangle computed and mirrored.
fn row_gram<S: Scalar>(rows: usize, cols: usize, data: &[S]) -> Vec<S> {
    let mut g = vec![S::ZERO; rows * rows];
    for i in 0..rows {
        let ri = &data[i * cols..(i + 1) * cols];
        for j in 0..=i {
            let rj = &data[j * cols..(j + 1) * cols];
            let mut acc = S::ZERO;
            for (&a, &b) in ri.iter().zip(rj) {
                acc += a * b.conj();
            }
            g[i * rows + j] = acc;
            g[j * rows + i] = acc.conj();
        }
    }
    g
}

fn weighted_row_gram<S: Scalar>(rows: usize, cols: usize, data: &[S], weights: &[f64]) -> Vec<S> {
    let mut g = vec![S::ZERO; rows * rows];
    for i in 0..rows {
        let ri = &data[i * cols..(i + 1) * cols];
        for j in 0..=i {
            let rj = &data[j * cols..(j + 1) * cols];
            let mut acc = S::ZERO;
            for ((&a, &b), &w) in ri.iter().zip(rj).zip(weights) {
                acc += (a * b.conj()).scale(w);
            }
            g[i * rows + j] = acc;
            g[j * rows + i] = acc.conj();
        }
    }
    g
}

/// Singular values, nonincreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdResult {
    pub singular_values: Vec<f64>,
}

impl SvdResult {
    pub fn largest(&self) -> f64 {
        self.singular_values[0]
    }

    pub fn smallest(&self) -> f64 {
        *self
            .singular_values
            .last()
            .expect("at least one singular value")
    }
}

/// All `min(rows, cols)` singular values by one-sided Jacobi.
pub fn svd_values(m: &DenseMatrix) -> Result<SvdResult> {
    m.ensure_finite()?;
    let singular_values = with_scalars!(m, |data| svd::singular_values(m.rows, m.cols, &data));
    Ok(SvdResult { singular_values })
}

/// Largest singular value.
///
/// Computed as the square root of the top eigenvalue of the smaller Gram
/// matrix, which is accurate to working precision relative to the result and
/// much cheaper than a full Jacobi SVD for large matrices.
pub fn operator_norm(m: &DenseMatrix) -> Result<f64> {
    m.ensure_finite()?;
    let gram = if m.rows <= m.cols {
        m.gram_rows()
    } else {
        m.gram_cols()
    };
    let top = hermitian_eigenvalues(&gram)?.last().copied().unwrap_or(0.0);
    Ok(libm::sqrt(top.max(0.0)))
}

/// `(sum_j sigma_j^p)^(1/p)`; `p = inf` gives the operator norm.
pub fn schatten_norm(m: &DenseMatrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent { p });
    }
    let svd = svd_values(m)?;
    Ok(schatten_from_values(&svd.singular_values, p))
}

/// Schatten norm of a nonincreasing singular value sequence, scaled by the
/// largest value to avoid overflow.
pub fn schatten_from_values(values: &[f64], p: f64) -> f64 {
    let top = values.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0.0;
    }
    if p.is_infinite() {
        return top;
    }
    let sum: f64 = values.iter().map(|&s| libm::pow(s / top, p)).sum();
    top * libm::pow(sum, 1.0 / p)
}

/// `sigma_max / sigma_min`, or [`Error::RankDeficient`] when
/// `sigma_min <= 1e-12 sigma_max`.
pub fn condition_number(m: &DenseMatrix) -> Result<f64> {
    let svd = svd_values(m)?;
    let (hi, lo) = (svd.largest(), svd.smallest());
    if hi == 0.0 || lo <= RANK_TOLERANCE * hi {
        return Err(Error::RankDeficient);
    }
    Ok(hi / lo)
}

/// Eigenvalues (ascending) of a Hermitian matrix. Only the lower triangle is read.
pub fn hermitian_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch("eigenvalues need a square matrix"));
    }
    m.ensure_finite()?;
    with_scalars!(m, |data| eigen::hermitian_eigenvalues(m.rows, data))
}

/// Operator norm of a Hermitian matrix, `max |lambda|`.
pub fn hermitian_operator_norm(m: &DenseMatrix) -> Result<f64> {
    let eig = hermitian_eigenvalues(m)?;
    Ok(eig.iter().fold(0.0, |acc: f64, &l| acc.max(libm::fabs(l))))
}

/// Solves `A x = b` by LU with partial pivoting.
pub fn solve(a: &DenseMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("solve needs a square matrix"));
    }
    if b.len() != a.rows {
        return Err(Error::LengthMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    a.ensure_finite()?;
    if a.is_real() && b.iter().all(|z| z.im == 0.0) {
        let rhs = b.iter().map(|z| z.re).collect();
        let x = lu::lu_solve(a.rows, a.real_parts(), rhs)?;
        Ok(x.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    } else {
        lu::lu_solve(a.rows, a.entries.clone(), b.to_vec())
    }
}

/// Euclidean norm of a complex vector.
pub fn vector_norm(v: &[Complex64]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

/// `<a, b> = sum conj(a_i) b_i`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rows: usize, cols: usize, complex: bool, seed: u64) -> DenseMatrix {
        use rand_core::RngCore;
        let mut rng = crate::rng::substream(seed, 0);
        let mut next = move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0;
        if complex {
            DenseMatrix::from_fn(rows, cols, |_, _| c(next(), next()))
        } else {
            DenseMatrix::from_real_fn(rows, cols, |_, _| next())
        }
    }

    #[test]
    fn svd_of_diagonal_and_identity() {
        let d = DenseMatrix::diagonal(&[3.0, 4.0]);
        assert_eq!(svd_values(&d).unwrap().singular_values, vec![4.0, 3.0]);
        let i = DenseMatrix::identity(2);
        assert_eq!(svd_values(&i).unwrap().singular_values, vec![1.0, 1.0]);
    }

    #[test]
    fn svd_rejects_non_finite() {
        let m = DenseMatrix::from_real(1, 2, vec![1.0, f64::NAN]).unwrap();
        assert_eq!(svd_values(&m), Err(Error::NonFiniteEntry));
        assert_eq!(operator_norm(&m), Err(Error::NonFiniteEntry));
    }

    #[test]
    fn difference_set_etf_singular_values() {
        // Rows {0, 1, 3} of the 7-point character table, unit columns.
        let ds = [0usize, 1, 3];
        let m = DenseMatrix::from_fn(3, 7, |r, k| {
            let angle = 2.0 * PI * ((ds[r] * k) % 7) as f64 / 7.0;
            c(angle.cos(), angle.sin()) / 3f64.sqrt()
        });
        let expected = (7.0f64 / 3.0).sqrt();
        for s in svd_values(&m).unwrap().singular_values {
            assert!((s - expected).abs() < 1e-12, "{s}");
        }
        assert!((condition_number(&m).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn operator_norm_examples() {
        assert!((operator_norm(&DenseMatrix::diagonal(&[3.0, 4.0])).unwrap() - 4.0).abs() < 1e-14);
        let z = [c(1.0, 0.0), c(1.0, 0.0)];
        assert!((operator_norm(&DenseMatrix::outer(&z)).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn operator_norm_of_sign_circulant_matches_dft_oracle() {
        let signs = [1.0, 1.0, -1.0, 1.0];
        let n = signs.len();
        let m = DenseMatrix::from_real_fn(n, n, |i, j| signs[(j + n - i) % n] / 2.0);
        // A circulant is diagonalized by the DFT: its singular values are the
        // moduli of the symbol's DFT.
        let oracle = (0..n)
            .map(|k| {
                let s: Complex64 = (0..n)
                    .map(|j| {
                        let a = 2.0 * PI * (j * k) as f64 / n as f64;
                        c(a.cos(), a.sin()) * signs[j]
                    })
                    .sum();
                s.norm() / 2.0
            })
            .fold(0.0, f64::max);
        // Every symbol coefficient has modulus 2, so the matrix is orthogonal.
        assert!((oracle - 1.0).abs() < 1e-12);
        assert!((operator_norm(&m).unwrap() - oracle).abs() < 1e-12);
        assert!((svd_values(&m).unwrap().largest() - oracle).abs() < 1e-12);
    }

    #[test]
    fn schatten_examples() {
        let d = DenseMatrix::diagonal(&[3.0, 4.0]);
        assert!((schatten_norm(&d, 2.0).unwrap() - 5.0).abs() < 1e-14);
        for m in 1..5 {
            let p = 2.0 * m as f64;
            let got = schatten_norm(&DenseMatrix::identity(5), p).unwrap();
            assert!((got - 5f64.powf(1.0 / p)).abs() < 1e-14);
        }
        let got = schatten_norm(&DenseMatrix::diagonal(&[1.0, 2.0, 2.0]), 4.0).unwrap();
        assert!((got - 33f64.powf(0.25)).abs() < 1e-12);
        assert!((got - 2.39678).abs() < 1e-5);
        assert_eq!(
            schatten_norm(&d, 0.5),
            Err(Error::InvalidExponent { p: 0.5 })
        );
    }

    #[test]
    fn condition_number_examples() {
        assert_eq!(condition_number(&DenseMatrix::identity(3)).unwrap(), 1.0);
        assert!(
            (condition_number(&DenseMatrix::diagonal(&[4.0, 2.0])).unwrap() - 2.0).abs() < 1e-14
        );
        let dup = DenseMatrix::from_real(2, 2, vec![1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(condition_number(&dup), Err(Error::RankDeficient));
        assert_eq!(
            condition_number(&DenseMatrix::zeros(2, 2, Mode::Real)),
            Err(Error::RankDeficient)
        );
    }

    #[test]
    fn hermitian_eigenvalues_match_jacobi() {
        for (seed, complex) in [(1, false), (2, true), (3, true), (4, false)] {
            let a = random_matrix(9, 9, complex, seed);
            let h = a.add(&a.adjoint()).unwrap();
            let mut eig: Vec<f64> = hermitian_eigenvalues(&h)
                .unwrap()
                .iter()
                .map(|l| l.abs())
                .collect();
            eig.sort_by(|x, y| y.total_cmp(x));
            let sv = svd_values(&h).unwrap().singular_values;
            for (l, s) in eig.iter().zip(&sv) {
                assert!((l - s).abs() < 1e-11 * sv[0], "{l} vs {s}");
            }
        }
    }

    #[test]
    fn eigenvalues_of_small_cases() {
        let one = DenseMatrix::diagonal(&[-2.5]);
        assert_eq!(hermitian_eigenvalues(&one).unwrap(), vec![-2.5]);
        let m = DenseMatrix::from_complex(
            2,
            2,
            vec![c(2.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(2.0, 0.0)],
        )
        .unwrap();
        let eig = hermitian_eigenvalues(&m).unwrap();
        assert!((eig[0] - 1.0).abs() < 1e-14 && (eig[1] - 3.0).abs() < 1e-14);
        assert!(hermitian_eigenvalues(&DenseMatrix::zeros(2, 3, Mode::Real)).is_err());
    }

    #[test]
    fn solve_recovers_known_solution() {
        let a = random_matrix(6, 6, true, 11);
        let x: Vec<Complex64> = (0..6).map(|i| c(i as f64 - 2.0, 0.5 * i as f64)).collect();
        let b = a.mul_vec(&x).unwrap();
        let got = solve(&a, &b).unwrap();
        for (g, e) in got.iter().zip(&x) {
            assert!((g - e).norm() < 1e-12);
        }
        assert_eq!(
            solve(&DenseMatrix::zeros(2, 2, Mode::Real), &[c(1.0, 0.0); 2]),
            Err(Error::Singular)
        );
    }

    #[test]
    fn constructor_checks() {
        assert!(DenseMatrix::from_real(2, 2, vec![1.0; 3]).is_err());
        assert!(DenseMatrix::from_real(0, 2, vec![]).is_err());
        assert!(DenseMatrix::new(1, 1, vec![c(0.0, 1.0)], Mode::Real).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = DenseMatrix> {
        (1usize..7, 1usize..7, any::<bool>(), any::<u64>())
            .prop_map(|(r, cl, complex, seed)| random_matrix(r, cl, complex, seed))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn singular_values_sorted_and_preserve_frobenius(m in arb_matrix()) {
            let sv = svd_values(&m).unwrap().singular_values;
            prop_assert_eq!(sv.len(), m.rows().min(m.cols()));
            prop_assert!(sv.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(sv.iter().all(|&s| s >= 0.0));
            let sum: f64 = sv.iter().map(|s| s * s).sum();
            let fro = m.frobenius_norm().powi(2);
            prop_assert!((sum - fro).abs() <= 1e-10 * fro);
        }

        #[test]
        fn schatten_nonincreasing_in_p(m in arb_matrix()) {
            let norms: Vec<f64> = [1.0, 2.0, 4.0, 8.0].iter().map(|&p| schatten_norm(&m, p).unwrap()).collect();
            prop_assert!(norms.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
        }

        #[test]
        fn operator_norm_sandwiched_by_schatten(m in arb_matrix(), half in 1u32..6) {
            let p = 2.0 * half as f64;
            let op = operator_norm(&m).unwrap();
            let sp = schatten_norm(&m, p).unwrap();
            let k = m.rows().min(m.cols()) as f64;
            prop_assert!(op <= sp * (1.0 + 1e-12));
            prop_assert!(sp <= k.powf(1.0 / p) * op * (1.0 + 1e-12));
            prop_assert!((op - svd_values(&m).unwrap().largest()).abs() <= 1e-12 * op.max(1e-300));
        }

        #[test]
        fn scaled_orthonormal_rows_have_equal_singular_values(n in 1usize..6, extra in 0usize..6, scale in 0.1f64..10.0) {
            // Rows of a DFT matrix restricted to the first n of M frequencies are orthogonal.
            let m_len = n + extra;
            let u = DenseMatrix::from_fn(n, m_len, |r, k| {
                let a = 2.0 * PI * (r * k) as f64 / m_len as f64;
                c(a.cos(), a.sin()) / (m_len as f64).sqrt()
            });
            for s in svd_values(&u.scale(scale)).unwrap().singular_values {
                prop_assert!((s - scale).abs() <= 1e-10 * scale);
            }
        }

        #[test]
        fn condition_number_scale_invariant(m in arb_matrix(), re in -5.0f64..5.0, im in -5.0f64..5.0) {
            prop_assume!(re.abs() + im.abs() > 1e-3);
            if let Ok(k) = condition_number(&m) {
                prop_assume!(k < 1e4);
                let scaled = condition_number(&m.scale_complex(c(re, im))).unwrap();
                prop_assert!((scaled - k).abs() <= 1e-10 * k);
            }
        }
    }
}
