//! Frames: scaled orthonormal unions, harmonic frames and difference-set
//! equiangular tight frames, with tightness and coherence checks.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::diffset::DifferenceSet;
use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix};

/// How frame vectors are scaled, which fixes the tightness constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// `|z_j|^2 = n`, so `x = (1/M) sum <z_j, x> z_j`.
    Recon,
    /// `|f_j| = 1`, so `x = (n/M) sum <f_j, x> f_j`.
    Unit,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::Recon => "recon",
            Normalization::Unit => "unit",
        }
    }
}

impl core::str::FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recon" => Ok(Normalization::Recon),
            "unit" => Ok(Normalization::Unit),
            _ => Err(Error::InvalidParameter(
                "normalization must be recon or unit",
            )),
        }
    }
}

/// `M` vectors in dimension `n`, stored as the columns of an `n x M` matrix.
///
/// The normalization flag fixes the tightness constant `alpha`; the column
/// norms themselves are not enforced, so degenerate test frames can be
/// represented. See [`Frame::normalization_residual`].
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    vectors: DenseMatrix,
    normalization: Normalization,
    kind: String,
}

impl Frame {
    pub fn new(
        vectors: DenseMatrix,
        normalization: Normalization,
        kind: impl Into<String>,
    ) -> Self {
        Self {
            vectors,
            normalization,
            kind: kind.into(),
        }
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.vectors.rows()
    }

    /// Number of vectors `M`.
    pub fn len(&self) -> usize {
        self.vectors.cols()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vectors(&self) -> &DenseMatrix {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> Vec<Complex64> {
        self.vectors.column(j)
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    /// Tightness constant: `1/M` (recon) or `n/M` (unit).
    pub fn alpha(&self) -> f64 {
        match self.normalization {
            Normalization::Recon => 1.0 / self.len() as f64,
            Normalization::Unit => self.dim() as f64 / self.len() as f64,
        }
    }

    /// Largest deviation of a squared column norm from its target (`n` or 1).
    pub fn normalization_residual(&self) -> f64 {
        let target = match self.normalization {
            Normalization::Recon => self.dim() as f64,
            Normalization::Unit => 1.0,
        };
        self.vectors
            .columns()
            .map(|z| libm::fabs(linalg::inner(&z, &z).re - target))
            .fold(0.0, f64::max)
    }

    /// Same vectors rescaled to the other normalization.
    pub fn renormalized(&self, normalization: Normalization) -> Frame {
        let factor = match (self.normalization, normalization) {
            (a, b) if a == b => 1.0,
            (Normalization::Unit, Normalization::Recon) => libm::sqrt(self.dim() as f64),
            _ => 1.0 / libm::sqrt(self.dim() as f64),
        };
        Frame::new(self.vectors.scale(factor), normalization, self.kind.clone())
    }
}

/// `copies` stacked copies of the basis `{sqrt(n) e_i}` (recon normalization).
pub fn scaled_onb_frame(n: usize, copies: usize) -> Result<Frame> {
    if n == 0 || copies == 0 {
        return Err(Error::InvalidDimension(
            "dimension and copies must be positive",
        ));
    }
    let scale = libm::sqrt(n as f64);
    let vectors =
        DenseMatrix::from_real_fn(n, n * copies, |i, j| if j % n == i { scale } else { 0.0 });
    Ok(Frame::new(vectors, Normalization::Recon, "scaled-onb"))
}

/// Harmonic frame: column `k` has entries `exp(2 pi i k s / M)` for `s` in the
/// row set (default `0..n`). Recon normalization.
pub fn harmonic_frame(n: usize, len: usize, row_set: Option<&[usize]>) -> Result<Frame> {
    if n == 0 || len < n {
        return Err(Error::InvalidDimension("harmonic frame needs 1 <= n <= M"));
    }
    let rows: Vec<usize> = match row_set {
        Some(r) => r.to_vec(),
        None => (0..n).collect(),
    };
    if rows.len() != n || rows.iter().any(|&s| s >= len) {
        return Err(Error::InvalidRowSet);
    }
    let mut sorted = rows.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidRowSet);
    }
    let vectors = DenseMatrix::from_fn(n, len, |i, k| character(rows[i] * k, len));
    Ok(Frame::new(vectors, Normalization::Recon, "harmonic"))
}

/// Real harmonic frame: conjugate character pairs replaced by
/// `sqrt(2) cos` / `sqrt(2) sin` rows for frequencies `1..=n/2`, plus the
/// constant row when `n` is odd. Needs `M > 2 floor(n/2)`.
pub fn real_harmonic_frame(n: usize, len: usize) -> Result<Frame> {
    if n == 0 || len < n {
        return Err(Error::InvalidDimension("harmonic frame needs 1 <= n <= M"));
    }
    let pairs = n / 2;
    if 2 * pairs >= len {
        return Err(Error::InvalidRowSet);
    }
    let odd = n % 2 == 1;
    let vectors = DenseMatrix::from_real_fn(n, len, |i, k| {
        let i = if odd {
            if i == 0 {
                return 1.0;
            }
            i - 1
        } else {
            i
        };
        let freq = i / 2 + 1;
        let z = character(freq * k, len);
        libm::sqrt(2.0) * if i % 2 == 0 { z.re } else { z.im }
    });
    Ok(Frame::new(vectors, Normalization::Recon, "harmonic-real"))
}

/// `exp(2 pi i t / modulus)` with the phase reduced mod `modulus` first.
fn character(t: usize, modulus: usize) -> Complex64 {
    let angle = 2.0 * PI * (t % modulus) as f64 / modulus as f64;
    Complex64::new(libm::cos(angle), libm::sin(angle))
}

/// Equiangular tight frame from a difference set: rows of the `N`-point
/// character table indexed by the set, `F[m, k] = exp(2 pi i d_m k / N)`.
/// Unit normalization divides by `sqrt(M)`.
pub fn difference_set_etf(ds: &DifferenceSet, normalization: Normalization) -> Frame {
    let modulus = ds.modulus();
    let elems = ds.elements();
    let scale = match normalization {
        Normalization::Recon => 1.0,
        Normalization::Unit => 1.0 / libm::sqrt(elems.len() as f64),
    };
    let vectors = DenseMatrix::from_fn(elems.len(), modulus, |m, k| {
        character(elems[m] * k, modulus) * scale
    });
    Frame::new(vectors, normalization, "etf")
}

/// `sum_j z_j z_j^*`.
pub fn frame_operator(f: &Frame) -> DenseMatrix {
    f.vectors.gram_rows()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TightnessCheck {
    pub residual: f64,
    pub pass: bool,
}

/// `|alpha S - I|` in operator norm, with `alpha` from the normalization.
pub fn check_tight(f: &Frame, tol: f64) -> Result<TightnessCheck> {
    f.vectors.ensure_finite()?;
    let scaled = frame_operator(f).scale(f.alpha());
    let residual = linalg::hermitian_operator_norm(&scaled.sub(&DenseMatrix::identity(f.dim()))?)?;
    Ok(TightnessCheck {
        residual,
        pass: residual <= tol,
    })
}

/// Normalized off-diagonal Gram magnitudes `|<f_k, f_l>| / (|f_k| |f_l|)`
/// for `k < l`, in row order.
pub fn gram_magnitudes(f: &Frame) -> Result<Vec<f64>> {
    if f.len() < 2 {
        return Err(Error::InvalidDimension(
            "coherence needs at least two vectors",
        ));
    }
    let cols: Vec<Vec<Complex64>> = f.vectors.columns().collect();
    let norms: Vec<f64> = cols.iter().map(|c| linalg::vector_norm(c)).collect();
    let mut out = Vec::with_capacity(cols.len() * (cols.len() - 1) / 2);
    for k in 0..cols.len() {
        for l in (k + 1)..cols.len() {
            let denom = norms[k] * norms[l];
            let value = if denom == 0.0 {
                0.0
            } else {
                linalg::inner(&cols[k], &cols[l]).norm() / denom
            };
            out.push(value);
        }
    }
    Ok(out)
}

/// Maximum normalized inner product between distinct frame vectors.
pub fn coherence(f: &Frame) -> Result<f64> {
    Ok(gram_magnitudes(f)?.into_iter().fold(0.0, f64::max))
}

/// Lower bound `sqrt((M - n) / (n (M - 1)))` on the coherence of `M` unit
/// vectors in dimension `n`.
pub fn welch_bound(n: usize, len: usize) -> f64 {
    libm::sqrt((len - n) as f64 / (n * (len - 1)) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffset::find_difference_set;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(a: &DenseMatrix, b: &DenseMatrix, tol: f64) {
        assert_eq!(a.shape(), b.shape());
        for (x, y) in a.entries().iter().zip(b.entries()) {
            assert!((x - y).norm() <= tol, "{x} vs {y}");
        }
    }

    #[test]
    fn scaled_onb_examples() {
        let f = scaled_onb_frame(2, 1).unwrap();
        assert_eq!(f.len(), 2);
        assert_close(
            f.vectors(),
            &DenseMatrix::diagonal(&[2f64.sqrt(), 2f64.sqrt()]),
            0.0,
        );
        assert_close(
            &frame_operator(&f),
            &DenseMatrix::identity(2).scale(2.0),
            1e-15,
        );
        let f = scaled_onb_frame(2, 2).unwrap();
        assert_close(
            &frame_operator(&f),
            &DenseMatrix::identity(2).scale(4.0),
            1e-15,
        );
        let check = check_tight(&scaled_onb_frame(3, 1).unwrap(), 1e-10).unwrap();
        assert!(check.residual < 1e-15 && check.pass);
    }

    #[test]
    fn harmonic_four_columns_by_hand() {
        let f = harmonic_frame(2, 4, None).unwrap();
        let powers = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        for (k, &w) in powers.iter().enumerate() {
            assert!((f.vector(k)[0] - c(1.0, 0.0)).norm() < 1e-15);
            assert!((f.vector(k)[1] - w).norm() < 1e-15);
        }
        // Direct summation of the four outer products.
        let mut sum = DenseMatrix::zeros(2, 2, crate::Mode::Complex);
        for k in 0..4 {
            sum = sum.add(&DenseMatrix::outer(&f.vector(k))).unwrap();
        }
        assert_close(&sum, &DenseMatrix::identity(2).scale(4.0), 1e-14);
        assert_close(&frame_operator(&f), &sum, 1e-14);
        assert!(check_tight(&f, 1e-12).unwrap().pass);
    }

    #[test]
    fn harmonic_square_is_scaled_dft() {
        let f = harmonic_frame(2, 2, None).unwrap();
        assert_close(
            &frame_operator(&f),
            &DenseMatrix::identity(2).scale(2.0),
            1e-15,
        );
    }

    #[test]
    fn harmonic_large_is_tight() {
        let f = harmonic_frame(16, 1024, None).unwrap();
        assert!(check_tight(&f, 1e-10).unwrap().pass);
        assert!(f.normalization_residual() <= 1e-12);
        let f = harmonic_frame(3, 10, Some(&[1, 4, 7])).unwrap();
        assert!(check_tight(&f, 1e-10).unwrap().pass);
    }

    #[test]
    fn harmonic_rejects_bad_rows() {
        assert_eq!(
            harmonic_frame(2, 4, Some(&[1, 1])),
            Err(Error::InvalidRowSet)
        );
        assert_eq!(
            harmonic_frame(2, 4, Some(&[0, 4])),
            Err(Error::InvalidRowSet)
        );
        assert_eq!(harmonic_frame(2, 4, Some(&[0])), Err(Error::InvalidRowSet));
    }

    #[test]
    fn real_harmonic_is_tight() {
        for (n, m) in [(1, 1), (2, 3), (3, 3), (4, 9), (5, 12), (16, 64)] {
            let f = real_harmonic_frame(n, m).unwrap();
            assert!(f.vectors().is_real());
            assert!(check_tight(&f, 1e-10).unwrap().pass, "({n}, {m})");
            assert!(f.normalization_residual() < 1e-12);
        }
        assert_eq!(real_harmonic_frame(4, 4), Err(Error::InvalidRowSet));
    }

    #[test]
    fn etf_seven_three() {
        let ds = find_difference_set(7, 3).unwrap();
        let f = difference_set_etf(&ds, Normalization::Unit);
        assert_eq!((f.dim(), f.len()), (3, 7));
        let mags = gram_magnitudes(&f).unwrap();
        let welch = welch_bound(3, 7);
        assert!((welch - 2f64.sqrt() / 3.0).abs() < 1e-15);
        for m in &mags {
            assert!((m - welch).abs() < 1e-9);
        }
        assert!((coherence(&f).unwrap() - 0.4714045).abs() < 1e-7);
        assert_close(
            &frame_operator(&f),
            &DenseMatrix::identity(3).scale(7.0 / 3.0),
            1e-10,
        );
        assert!(check_tight(&f, 1e-10).unwrap().pass);
    }

    #[test]
    fn etf_thirteen_four() {
        let ds = find_difference_set(13, 4).unwrap();
        let f = difference_set_etf(&ds, Normalization::Unit);
        let coh = coherence(&f).unwrap();
        assert!((coh - 3f64.sqrt() / 4.0).abs() < 1e-9);
        assert!((coh - 0.4330127).abs() < 1e-7);
        let recon = difference_set_etf(&ds, Normalization::Recon);
        assert!(check_tight(&recon, 1e-10).unwrap().pass);
        assert!(recon.normalization_residual() < 1e-12);
        assert_close(
            recon.renormalized(Normalization::Unit).vectors(),
            f.vectors(),
            1e-15,
        );
    }

    #[test]
    fn degenerate_frames() {
        let dup = Frame::new(
            DenseMatrix::from_real(2, 2, vec![1.0, 1.0, 0.0, 0.0]).unwrap(),
            Normalization::Recon,
            "custom",
        );
        let check = check_tight(&dup, 1e-10).unwrap();
        assert!((check.residual - 1.0).abs() < 1e-15 && !check.pass);
        assert_eq!(coherence(&dup).unwrap(), 1.0);
        let onb = Frame::new(DenseMatrix::identity(3), Normalization::Unit, "onb");
        assert_eq!(coherence(&onb).unwrap(), 0.0);
        assert!(coherence(&Frame::new(
            DenseMatrix::identity(1),
            Normalization::Unit,
            "one"
        ))
        .is_err());
    }
}
