//! Rademacher sign sums: empirical checks of Rudelson's inequality and the
//! operator Khintchine inequality, with exact enumeration over all sign
//! patterns for small instances.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix, Mode};
use crate::rng;
use crate::stats::{summarize, Summary};

/// Largest summand count for exact enumeration (`2^20` patterns).
pub const MAX_EXACT_SIGNS: usize = 20;

/// Source of independent `+-1` sign vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignEnsemble {
    /// All `2^count` patterns, equally weighted.
    Exact { count: usize },
    /// `trials` draws, trial `i` from `substream(seed, i)`.
    MonteCarlo {
        count: usize,
        trials: usize,
        seed: u64,
    },
}

impl SignEnsemble {
    pub fn exact(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidDimension(
                "sign ensemble needs at least one summand",
            ));
        }
        if count > MAX_EXACT_SIGNS {
            return Err(Error::TooLarge {
                count,
                limit: MAX_EXACT_SIGNS,
            });
        }
        Ok(SignEnsemble::Exact { count })
    }

    pub fn monte_carlo(count: usize, trials: usize, seed: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidDimension(
                "sign ensemble needs at least one summand",
            ));
        }
        if trials == 0 {
            return Err(Error::InvalidParameter("trials must be positive"));
        }
        Ok(SignEnsemble::MonteCarlo {
            count,
            trials,
            seed,
        })
    }

    pub fn count(&self) -> usize {
        match *self {
            SignEnsemble::Exact { count } | SignEnsemble::MonteCarlo { count, .. } => count,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SignEnsemble::Exact { .. })
    }

    /// Sign patterns (exact) or draws (Monte Carlo) the expectation stands for.
    pub fn trials(&self) -> u64 {
        match *self {
            SignEnsemble::Exact { count } => 1 << count,
            SignEnsemble::MonteCarlo { trials, .. } => trials as u64,
        }
    }

    /// Number of evaluations needed. Exact mode fixes the first sign to `+1`
    /// and relies on `f(-X) = f(X)`, halving the work.
    pub fn evaluations(&self) -> u64 {
        match *self {
            SignEnsemble::Exact { count } => 1 << (count - 1),
            SignEnsemble::MonteCarlo { trials, .. } => trials as u64,
        }
    }

    /// Sign vector for evaluation `index`.
    pub fn signs(&self, index: u64) -> Vec<f64> {
        match *self {
            SignEnsemble::Exact { count } => (0..count)
                .map(|j| {
                    if j > 0 && index >> (j - 1) & 1 == 1 {
                        -1.0
                    } else {
                        1.0
                    }
                })
                .collect(),
            SignEnsemble::MonteCarlo { count, seed, .. } => {
                let mut stream = rng::substream(seed, index);
                (0..count).map(|_| rng::sign(&mut stream)).collect()
            }
        }
    }

    /// Evaluates an even functional on every sign vector, in index order.
    pub fn samples(&self, mut f: impl FnMut(&[f64]) -> Result<f64>) -> Result<Vec<f64>> {
        (0..self.evaluations()).map(|i| f(&self.signs(i))).collect()
    }

    /// Mean of the samples; exact mode reports zero standard error.
    pub fn summarize(&self, samples: &[f64]) -> Summary {
        let mut s = summarize(samples);
        if self.is_exact() {
            s.stderr = 0.0;
        }
        s
    }
}

/// Empirical left side, theoretical right side and their ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityEstimate {
    pub lhs: f64,
    pub lhs_stderr: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub trials: u64,
    pub exact: bool,
}

fn ratio(lhs: f64, rhs: f64) -> f64 {
    if rhs > 0.0 {
        lhs / rhs
    } else {
        0.0
    }
}

fn log_double_factorial_ratio(m: u32) -> f64 {
    // ln((2m)! / (2^m m!))
    let m = m as f64;
    libm::lgamma(2.0 * m + 1.0) - m * core::f64::consts::LN_2 - libm::lgamma(m + 1.0)
}

/// `C_m = 2 ((2m)! / (2^m m!))^(1/(2m))`, for `1 <= m <= 30`.
pub fn khintchine_constant(m: u32) -> Result<f64> {
    if !(1..=30).contains(&m) {
        return Err(Error::OutOfRange("Khintchine order must lie in 1..=30"));
    }
    Ok(2.0 * libm::exp(log_double_factorial_ratio(m) / (2.0 * m as f64)))
}

/// `sum_j sigma_j^p`.
pub fn schatten_power(m: &DenseMatrix, p: f64) -> Result<f64> {
    Ok(linalg::svd_values(m)?
        .singular_values
        .iter()
        .map(|&s| libm::pow(s, p))
        .sum())
}

/// `sum_j signs_j A_j`.
pub fn signed_sum(summands: &[DenseMatrix], signs: &[f64]) -> Result<DenseMatrix> {
    let first = summands
        .first()
        .ok_or(Error::InvalidDimension("no summands"))?;
    if signs.len() != summands.len() {
        return Err(Error::LengthMismatch {
            expected: summands.len(),
            found: signs.len(),
        });
    }
    let (rows, cols) = first.shape();
    let mut acc = vec![num_complex::Complex64::new(0.0, 0.0); rows * cols];
    let mut mode = Mode::Real;
    for (a, &s) in summands.iter().zip(signs) {
        if a.shape() != (rows, cols) {
            return Err(Error::ShapeMismatch("summands differ in shape"));
        }
        if !a.is_real() {
            mode = Mode::Complex;
        }
        for (t, &v) in acc.iter_mut().zip(a.entries()) {
            *t += v * s;
        }
    }
    DenseMatrix::new(rows, cols, acc, mode)
}

fn check_shapes(matrices: &[DenseMatrix]) -> Result<()> {
    let first = matrices
        .first()
        .ok_or(Error::InvalidDimension("no summands"))?;
    if matrices.iter().any(|a| a.shape() != first.shape()) {
        return Err(Error::ShapeMismatch("summands differ in shape"));
    }
    Ok(())
}

/// A fixed family `A_1..A_k` and order `m` for the operator Khintchine bound
/// `(E |sum eps_j A_j|_{C_2m}^{2m})^(1/2m) <= C_m max(|(sum A*A)^(1/2)|_{C_2m}, |(sum AA*)^(1/2)|_{C_2m})`.
#[derive(Debug, Clone)]
pub struct KhintchineInstance<'a> {
    matrices: &'a [DenseMatrix],
    m: u32,
    rhs: f64,
}

impl<'a> KhintchineInstance<'a> {
    pub fn new(matrices: &'a [DenseMatrix], m: u32) -> Result<Self> {
        check_shapes(matrices)?;
        let rhs = khintchine_constant(m)? * square_function_norm(matrices, m)?;
        Ok(Self { matrices, m, rhs })
    }

    /// `|sum eps_j A_j|_{C_2m}^{2m}` for one sign vector.
    pub fn sample(&self, signs: &[f64]) -> Result<f64> {
        schatten_power(&signed_sum(self.matrices, signs)?, 2.0 * self.m as f64)
    }

    pub fn estimate(&self, ensemble: &SignEnsemble, samples: &[f64]) -> InequalityEstimate {
        let s = ensemble.summarize(samples);
        let q = 2.0 * self.m as f64;
        let lhs = libm::pow(s.mean, 1.0 / q);
        // Delta method for the 1/(2m)-th power of the mean.
        let lhs_stderr = if s.mean > 0.0 {
            lhs * s.stderr / (q * s.mean)
        } else {
            0.0
        };
        InequalityEstimate {
            lhs,
            lhs_stderr,
            rhs: self.rhs,
            ratio: ratio(lhs, self.rhs),
            trials: ensemble.trials(),
            exact: ensemble.is_exact(),
        }
    }
}

/// `max(|(sum A_j^* A_j)^(1/2)|_{C_2m}, |(sum A_j A_j^*)^(1/2)|_{C_2m})`,
/// each evaluated as `(sum_i lambda_i^m)^(1/(2m))` over the eigenvalues of the
/// positive semidefinite sum.
pub fn square_function_norm(matrices: &[DenseMatrix], m: u32) -> Result<f64> {
    check_shapes(matrices)?;
    let mut left = matrices[0].gram_cols();
    let mut right = matrices[0].gram_rows();
    for a in &matrices[1..] {
        left = left.add(&a.gram_cols())?;
        right = right.add(&a.gram_rows())?;
    }
    let q = 2.0 * m as f64;
    let norm = |s: &DenseMatrix| -> Result<f64> {
        let total: f64 = linalg::hermitian_eigenvalues(s)?
            .iter()
            .map(|&l| libm::pow(l.max(0.0), m as f64))
            .sum();
        Ok(libm::pow(total, 1.0 / q))
    };
    Ok(norm(&left)?.max(norm(&right)?))
}

/// Operator Khintchine check for a family of equally shaped matrices.
pub fn khintchine_check(
    matrices: &[DenseMatrix],
    m: u32,
    ensemble: &SignEnsemble,
) -> Result<InequalityEstimate> {
    if ensemble.count() != matrices.len() {
        return Err(Error::LengthMismatch {
            expected: matrices.len(),
            found: ensemble.count(),
        });
    }
    let instance = KhintchineInstance::new(matrices, m)?;
    let samples = ensemble.samples(|s| instance.sample(s))?;
    Ok(instance.estimate(ensemble, &samples))
}

/// Vectors `z_1..z_M` (columns of an `n x M` matrix) for Rudelson's bound
/// `E |sum eps_i z_i z_i^*| <= C sqrt(ln n) max_i |z_i| |sum z_i z_i^*|^(1/2)`,
/// evaluated with `C = 1` so the ratio estimates the constant.
#[derive(Debug, Clone)]
pub struct RudelsonInstance<'a> {
    vectors: &'a DenseMatrix,
    rhs: f64,
}

impl<'a> RudelsonInstance<'a> {
    pub fn new(vectors: &'a DenseMatrix) -> Result<Self> {
        let n = vectors.rows();
        if n < 2 {
            return Err(Error::InvalidDimension("Rudelson check needs n >= 2"));
        }
        vectors.ensure_finite()?;
        let max_norm = vectors
            .columns()
            .map(|z| linalg::vector_norm(&z))
            .fold(0.0, f64::max);
        let total = linalg::hermitian_operator_norm(&vectors.gram_rows())?;
        let rhs = libm::sqrt(libm::log(n as f64)) * max_norm * libm::sqrt(total);
        Ok(Self { vectors, rhs })
    }

    pub fn rhs(&self) -> f64 {
        self.rhs
    }

    /// `|sum eps_i z_i z_i^*|` for one sign vector.
    pub fn sample(&self, signs: &[f64]) -> Result<f64> {
        linalg::hermitian_operator_norm(&self.vectors.weighted_gram_rows(signs)?)
    }

    pub fn estimate(&self, ensemble: &SignEnsemble, samples: &[f64]) -> InequalityEstimate {
        let s = ensemble.summarize(samples);
        InequalityEstimate {
            lhs: s.mean,
            lhs_stderr: s.stderr,
            rhs: self.rhs,
            ratio: ratio(s.mean, self.rhs),
            trials: ensemble.trials(),
            exact: ensemble.is_exact(),
        }
    }
}

/// Rudelson check over the columns of `vectors`.
pub fn rudelson_check(
    vectors: &DenseMatrix,
    ensemble: &SignEnsemble,
) -> Result<InequalityEstimate> {
    if ensemble.count() != vectors.cols() {
        return Err(Error::LengthMismatch {
            expected: vectors.cols(),
            found: ensemble.count(),
        });
    }
    let instance = RudelsonInstance::new(vectors)?;
    let samples = ensemble.samples(|s| instance.sample(s))?;
    Ok(instance.estimate(ensemble, &samples))
}

/// Both sides of `(2m)! / (2^m m!) <= sqrt(2) (2/e)^m m^m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StirlingCheck {
    pub m: u32,
    pub lhs: f64,
    pub rhs: f64,
    pub log_lhs: f64,
    pub log_rhs: f64,
    pub holds: bool,
}

/// Evaluates the Stirling-type bound in log domain, `1 <= m <= 150`.
pub fn stirling_bound_check(m: u32) -> Result<StirlingCheck> {
    if !(1..=150).contains(&m) {
        return Err(Error::OutOfRange(
            "Stirling check order must lie in 1..=150",
        ));
    }
    let mf = m as f64;
    let log_lhs = log_double_factorial_ratio(m);
    let log_rhs =
        0.5 * core::f64::consts::LN_2 + mf * (core::f64::consts::LN_2 - 1.0) + mf * libm::log(mf);
    Ok(StirlingCheck {
        m,
        lhs: libm::exp(log_lhs),
        rhs: libm::exp(log_rhs),
        log_lhs,
        log_rhs,
        holds: log_lhs <= log_rhs + libm::log1p(1e-12),
    })
}

/// Functional averaged by [`sign_expectation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignFunctional {
    OperatorNorm,
    /// `|X|_{C_2m}^{2m}`.
    SchattenPower {
        m: u32,
    },
}

impl SignFunctional {
    pub fn apply(&self, x: &DenseMatrix) -> Result<f64> {
        match *self {
            SignFunctional::OperatorNorm => linalg::operator_norm(x),
            SignFunctional::SchattenPower { m } => schatten_power(x, 2.0 * m as f64),
        }
    }
}

/// `E f(sum eps_j A_j)` under the given ensemble.
pub fn sign_expectation(
    summands: &[DenseMatrix],
    functional: SignFunctional,
    ensemble: &SignEnsemble,
) -> Result<Summary> {
    check_shapes(summands)?;
    if ensemble.count() != summands.len() {
        return Err(Error::LengthMismatch {
            expected: summands.len(),
            found: ensemble.count(),
        });
    }
    let samples = ensemble.samples(|s| functional.apply(&signed_sum(summands, s)?))?;
    Ok(ensemble.summarize(&samples))
}

/// Exact `E f(sum eps_j A_j)` over all `2^count` sign patterns (`count <= 20`).
pub fn exact_sign_expectation(summands: &[DenseMatrix], functional: SignFunctional) -> Result<f64> {
    Ok(sign_expectation(summands, functional, &SignEnsemble::exact(summands.len())?)?.mean)
}

/// `count` square matrices of size `dim` with entries uniform on `[-1, 1)`
/// (real and imaginary parts independently when `complex`), drawn from the
/// instance substream of `seed`.
pub fn seeded_family(
    count: usize,
    dim: usize,
    complex: bool,
    seed: u64,
) -> Result<Vec<DenseMatrix>> {
    if count == 0 || dim == 0 {
        return Err(Error::InvalidDimension(
            "family needs positive count and dimension",
        ));
    }
    let mut s = rng::substream(seed, rng::INSTANCE_STREAM);
    Ok((0..count)
        .map(|_| {
            if complex {
                DenseMatrix::from_fn(dim, dim, |_, _| {
                    let re = rng::symmetric_unit(&mut s);
                    num_complex::Complex64::new(re, rng::symmetric_unit(&mut s))
                })
            } else {
                DenseMatrix::from_real_fn(dim, dim, |_, _| rng::symmetric_unit(&mut s))
            }
        })
        .collect())
}

/// `z_i z_i^*` for each column of `vectors`.
pub fn rank_one_summands(vectors: &DenseMatrix) -> Vec<DenseMatrix> {
    vectors.columns().map(|z| DenseMatrix::outer(&z)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{harmonic_frame, scaled_onb_frame};
    use num_complex::Complex64;
    use rand_core::RngCore;

    fn random_family(count: usize, dim: usize, seed: u64, complex: bool) -> Vec<DenseMatrix> {
        seeded_family(count, dim, complex, seed).unwrap()
    }

    #[test]
    fn khintchine_constants() {
        assert!((khintchine_constant(1).unwrap() - 2.0).abs() < 1e-12);
        assert!((khintchine_constant(2).unwrap() - 2.0 * 3f64.powf(0.25)).abs() < 1e-12);
        assert!((khintchine_constant(3).unwrap() - 2.0 * 15f64.powf(1.0 / 6.0)).abs() < 1e-12);
        assert!((khintchine_constant(2).unwrap() - 2.63215).abs() < 1e-5);
        assert!((khintchine_constant(3).unwrap() - 3.14084).abs() < 1e-5);
        // Double factorial oracle: (2m)!/(2^m m!) = (2m-1)!!
        for m in 1..=30u32 {
            let odd: f64 = (1..=m).map(|k| (2 * k - 1) as f64).product();
            let expected = 2.0 * odd.powf(1.0 / (2.0 * m as f64));
            assert!((khintchine_constant(m).unwrap() - expected).abs() < 1e-12 * expected);
        }
        assert!(khintchine_constant(0).is_err() && khintchine_constant(31).is_err());
    }

    #[test]
    fn khintchine_frobenius_identity() {
        for seed in 0..5 {
            let family = random_family(6, 4, seed, seed % 2 == 0);
            let est = khintchine_check(&family, 1, &SignEnsemble::exact(6).unwrap()).unwrap();
            let frob: f64 = family
                .iter()
                .map(|a| a.frobenius_norm().powi(2))
                .sum::<f64>()
                .sqrt();
            assert!((est.lhs - frob).abs() < 1e-12 * frob);
            assert!(est.ratio <= 0.5 + 1e-12);
            assert!(est.exact && est.trials == 64 && est.lhs_stderr == 0.0);
        }
    }

    #[test]
    fn khintchine_single_matrix() {
        let family = random_family(1, 5, 3, true);
        for m in 1..=3 {
            let est = khintchine_check(&family, m, &SignEnsemble::exact(1).unwrap()).unwrap();
            let norm = linalg::schatten_norm(&family[0], 2.0 * m as f64).unwrap();
            assert!((est.lhs - norm).abs() < 1e-12 * norm);
            assert!((est.rhs - khintchine_constant(m).unwrap() * norm).abs() < 1e-11 * norm);
            assert!((est.ratio - 1.0 / khintchine_constant(m).unwrap()).abs() < 1e-11);
        }
    }

    #[test]
    fn khintchine_eight_six_by_six() {
        let family = random_family(8, 6, 42, false);
        let est = khintchine_check(&family, 2, &SignEnsemble::exact(8).unwrap()).unwrap();
        assert_eq!(est.trials, 256);
        assert!(est.ratio <= 1.0, "{}", est.ratio);
        assert!(khintchine_check(&family, 2, &SignEnsemble::exact(7).unwrap()).is_err());
        let mut bad = family.clone();
        bad[3] = DenseMatrix::identity(5);
        assert!(matches!(
            khintchine_check(&bad, 2, &SignEnsemble::exact(8).unwrap()),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn rudelson_scaled_onb_is_exactly_n() {
        for n in [2usize, 4, 8] {
            let f = scaled_onb_frame(n, 1).unwrap();
            let est = rudelson_check(f.vectors(), &SignEnsemble::exact(n).unwrap()).unwrap();
            let nf = n as f64;
            assert!((est.lhs - nf).abs() < 1e-12 * nf);
            assert!((est.rhs - nf.ln().sqrt() * nf).abs() < 1e-12 * nf);
            assert!((est.ratio - 1.0 / nf.ln().sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn rudelson_single_vector() {
        let z = DenseMatrix::from_real(3, 1, vec![1.0, -2.0, 0.5]).unwrap();
        let est = rudelson_check(&z, &SignEnsemble::exact(1).unwrap()).unwrap();
        assert!((est.lhs - 5.25).abs() < 1e-12);
        assert!((est.ratio - 1.0 / 3f64.ln().sqrt()).abs() < 1e-12);
        let low = DenseMatrix::from_real(1, 2, vec![1.0, 1.0]).unwrap();
        assert!(matches!(
            rudelson_check(&low, &SignEnsemble::exact(2).unwrap()),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn rudelson_harmonic_ratio_bounded() {
        let f = harmonic_frame(16, 64, None).unwrap();
        let est =
            rudelson_check(f.vectors(), &SignEnsemble::monte_carlo(64, 500, 1).unwrap()).unwrap();
        assert!(est.ratio <= 4.0 && est.lhs_stderr > 0.0, "{est:?}");
    }

    #[test]
    fn rudelson_mc_matches_exact() {
        let f = harmonic_frame(3, 10, None).unwrap();
        let exact = rudelson_check(f.vectors(), &SignEnsemble::exact(10).unwrap()).unwrap();
        let mc = rudelson_check(
            f.vectors(),
            &SignEnsemble::monte_carlo(10, 20_000, 5).unwrap(),
        )
        .unwrap();
        assert!((mc.lhs - exact.lhs).abs() <= 3.0 * mc.lhs_stderr);
        // The Hermitian route agrees with the generic operator-norm functional.
        let via_functional = exact_sign_expectation(
            &rank_one_summands(f.vectors()),
            SignFunctional::OperatorNorm,
        )
        .unwrap();
        assert!((via_functional - exact.lhs).abs() < 1e-12 * exact.lhs);
    }

    #[test]
    fn stirling_examples() {
        let one = stirling_bound_check(1).unwrap();
        assert!((one.lhs - 1.0).abs() < 1e-14);
        assert!((one.rhs - 2.0 * 2f64.sqrt() / std::f64::consts::E).abs() < 1e-14);
        assert!((one.rhs - 1.04052).abs() < 1e-5 && one.holds);
        let two = stirling_bound_check(2).unwrap();
        assert!((two.lhs - 3.0).abs() < 1e-13 && (two.rhs - 3.06229).abs() < 1e-5 && two.holds);
        assert!(stirling_bound_check(10).unwrap().holds);
        assert!(stirling_bound_check(0).is_err() && stirling_bound_check(151).is_err());
    }

    #[test]
    fn exact_expectation_examples() {
        let a = random_family(1, 3, 8, true);
        let got = exact_sign_expectation(&a, SignFunctional::OperatorNorm).unwrap();
        assert!((got - linalg::operator_norm(&a[0]).unwrap()).abs() < 1e-14);
        let z = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 1.0)];
        let zz = DenseMatrix::outer(&z);
        let got = exact_sign_expectation(&[zz.clone(), zz], SignFunctional::OperatorNorm).unwrap();
        assert!((got - 6.0).abs() < 1e-13, "{got}");
        let too_many = random_family(21, 1, 0, false);
        assert!(matches!(
            exact_sign_expectation(&too_many, SignFunctional::OperatorNorm),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn global_negation_is_exact_symmetry() {
        let family = random_family(7, 3, 12, true);
        let negated: Vec<DenseMatrix> = family.iter().map(|a| a.scale(-1.0)).collect();
        for f in [
            SignFunctional::OperatorNorm,
            SignFunctional::SchattenPower { m: 2 },
        ] {
            assert_eq!(
                exact_sign_expectation(&family, f).unwrap(),
                exact_sign_expectation(&negated, f).unwrap()
            );
        }
    }

    #[test]
    fn halving_matches_full_enumeration() {
        let family = random_family(5, 3, 2, false);
        let half = exact_sign_expectation(&family, SignFunctional::OperatorNorm).unwrap();
        let full: f64 = (0..32u64)
            .map(|p| {
                let signs: Vec<f64> = (0..5)
                    .map(|j| if p >> j & 1 == 1 { -1.0 } else { 1.0 })
                    .collect();
                linalg::operator_norm(&signed_sum(&family, &signs).unwrap()).unwrap()
            })
            .sum::<f64>()
            / 32.0;
        assert!((half - full).abs() < 1e-13 * full);
    }

    #[test]
    fn mc_expectation_agrees_with_exact() {
        let family = random_family(6, 3, 4, false);
        let exact = exact_sign_expectation(&family, SignFunctional::OperatorNorm).unwrap();
        let mc = sign_expectation(
            &family,
            SignFunctional::OperatorNorm,
            &SignEnsemble::monte_carlo(6, 100_000, 9).unwrap(),
        )
        .unwrap();
        assert!((mc.mean - exact).abs() <= 3.0 * mc.stderr);
    }

    #[test]
    fn monte_carlo_signs_reproducible() {
        let e = SignEnsemble::monte_carlo(16, 10, 77).unwrap();
        assert_eq!(e.signs(3), e.signs(3));
        assert_ne!(e.signs(3), e.signs(4));
        let mut s = rng::substream(77, 3);
        let direct: Vec<f64> = (0..16)
            .map(|_| if s.next_u64() >> 63 == 0 { 1.0 } else { -1.0 })
            .collect();
        assert_eq!(direct, e.signs(3));
    }
}
