//! Matrix probing: recover `A = sum_j lambda_j U_j` from a single product
//! `y = A x` through the dictionary `D = [U_1 x | ... | U_n x]`.

use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix, Mode};
use crate::rng;
use crate::signs::{self, SignEnsemble};
use crate::stats::summarize;

/// Default conditioning threshold for coefficient recovery.
pub const DEFAULT_COND_LIMIT: f64 = 1e8;
/// Tolerance for `T_k^* T_k = I / n`.
pub const ISOMETRY_TOLERANCE: f64 = 1e-10;
/// Largest summand count for [`contraction_check`].
pub const MAX_CONTRACTION_TERMS: usize = 16;

fn check_family(family: &[DenseMatrix]) -> Result<usize> {
    let n = family.len();
    if n == 0 {
        return Err(Error::ShapeMismatch("empty matrix family"));
    }
    if family.iter().any(|u| u.shape() != (n, n)) {
        return Err(Error::ShapeMismatch("family of n matrices must be n x n"));
    }
    Ok(n)
}

fn family_mode(family: &[DenseMatrix]) -> Mode {
    if family.iter().all(DenseMatrix::is_real) {
        Mode::Real
    } else {
        Mode::Complex
    }
}

/// `T_k[:, j] = U_j[:, k]`. The map is its own inverse.
pub fn regroup(family: &[DenseMatrix]) -> Result<Vec<DenseMatrix>> {
    let n = check_family(family)?;
    Ok((0..n)
        .map(|k| {
            let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
            for (j, u) in family.iter().enumerate() {
                for i in 0..n {
                    entries[i * n + j] = u.get(i, k);
                }
            }
            DenseMatrix::new(n, n, entries, family_mode(family)).expect("shape is consistent")
        })
        .collect())
}

/// `U_j = P^j / sqrt(n)` for `j = 1..n`, `P` the cyclic shift `e_i -> e_{i+1}`.
pub fn circulant_dictionary(n: usize) -> Result<Vec<DenseMatrix>> {
    if n < 2 {
        return Err(Error::InvalidDimension("circulant family needs n >= 2"));
    }
    let w = 1.0 / libm::sqrt(n as f64);
    Ok((1..=n)
        .map(|j| DenseMatrix::from_real_fn(n, n, |i, k| if i == (k + j) % n { w } else { 0.0 }))
        .collect())
}

/// Outcome of [`check_scaled_isometry`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryCheck {
    /// `max_k |T_k^* T_k - I/n|`.
    pub max_residual: f64,
    pub pass: bool,
    /// `|(sum_k T_k^* T_k)^(1/2)|_{C_2}^2`, equal to `n` on a pass.
    pub schatten_p2: f64,
    /// `|(sum_k T_k^* T_k)^(1/2)|_{C_4}^4`, equal to `n` on a pass.
    pub schatten_p4: f64,
}

/// Tests `T_k^* T_k = I / n` for each member of the regrouped family.
pub fn check_scaled_isometry(regrouped: &[DenseMatrix]) -> Result<IsometryCheck> {
    let n = check_family(regrouped)?;
    let target = DenseMatrix::identity(n).scale(1.0 / n as f64);
    let mut max_residual = 0.0f64;
    let mut total = DenseMatrix::zeros(n, n, family_mode(regrouped));
    for t in regrouped {
        let g = t.gram_cols();
        max_residual = max_residual.max(linalg::hermitian_operator_norm(&g.sub(&target)?)?);
        total = total.add(&g)?;
    }
    let eig = linalg::hermitian_eigenvalues(&total)?;
    Ok(IsometryCheck {
        max_residual,
        pass: max_residual <= ISOMETRY_TOLERANCE,
        schatten_p2: eig.iter().map(|&l| l.max(0.0)).sum(),
        schatten_p4: eig.iter().map(|&l| l * l).sum(),
    })
}

/// Column `j` is `U_j x`.
pub fn build_dictionary(family: &[DenseMatrix], x: &[Complex64]) -> Result<DenseMatrix> {
    let n = check_family(family)?;
    if x.len() != n {
        return Err(Error::ShapeMismatch("probe length must equal n"));
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for (j, u) in family.iter().enumerate() {
        for (i, v) in u.mul_vec(x)?.into_iter().enumerate() {
            entries[i * n + j] = v;
        }
    }
    let real = family_mode(family) == Mode::Real && x.iter().all(|v| v.im == 0.0);
    DenseMatrix::new(n, n, entries, if real { Mode::Real } else { Mode::Complex })
}

/// `sum_j lambda_j U_j`.
pub fn combine(family: &[DenseMatrix], lambda: &[Complex64]) -> Result<DenseMatrix> {
    let n = check_family(family)?;
    if lambda.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: lambda.len(),
        });
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for (u, &l) in family.iter().zip(lambda) {
        if l == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (t, &v) in entries.iter_mut().zip(u.entries()) {
            *t += v * l;
        }
    }
    let real = family_mode(family) == Mode::Real && lambda.iter().all(|v| v.im == 0.0);
    DenseMatrix::new(n, n, entries, if real { Mode::Real } else { Mode::Complex })
}

/// Coefficients solving `D lambda = y`, with the condition number of `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct Recovery {
    pub lambda: Vec<Complex64>,
    pub cond: f64,
}

/// Solves `D lambda = y`, refusing when `cond(D) > cond_limit`.
pub fn recover_coefficients(d: &DenseMatrix, y: &[Complex64], cond_limit: f64) -> Result<Recovery> {
    if !d.is_square() {
        return Err(Error::ShapeMismatch("dictionary must be square"));
    }
    if y.len() != d.rows() {
        return Err(Error::LengthMismatch {
            expected: d.rows(),
            found: y.len(),
        });
    }
    let cond = match linalg::condition_number(d) {
        Ok(c) => c,
        Err(Error::RankDeficient) => return Err(Error::Singular),
        Err(e) => return Err(e),
    };
    if cond > cond_limit {
        return Err(Error::IllConditioned {
            cond,
            limit: cond_limit,
        });
    }
    Ok(Recovery {
        lambda: linalg::solve(d, y)?,
        cond,
    })
}

/// Result of a forward-then-recover roundtrip.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRoundtrip {
    pub lambda_hat: Vec<Complex64>,
    /// `|lambda_hat - lambda| / |lambda|`, zero when `lambda = 0`.
    pub rel_error: f64,
    pub cond: f64,
}

/// Forms `A = sum lambda_j U_j`, probes `y = A x` and recovers the coefficients.
pub fn probe_roundtrip(
    family: &[DenseMatrix],
    lambda: &[Complex64],
    x: &[Complex64],
    cond_limit: f64,
) -> Result<ProbeRoundtrip> {
    let a = combine(family, lambda)?;
    let y = a.mul_vec(x)?;
    let d = build_dictionary(family, x)?;
    let rec = recover_coefficients(&d, &y, cond_limit)?;
    let norm = linalg::vector_norm(lambda);
    let rel_error = if norm == 0.0 {
        0.0
    } else {
        let diff: Vec<Complex64> = rec.lambda.iter().zip(lambda).map(|(a, b)| a - b).collect();
        linalg::vector_norm(&diff) / norm
    };
    Ok(ProbeRoundtrip {
        lambda_hat: rec.lambda,
        rel_error,
        cond: rec.cond,
    })
}

/// Probe entry distribution, bounded by one in modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProbeDistribution {
    #[default]
    Rademacher,
    /// Uniform on `[-1, 1]`.
    Uniform,
}

impl ProbeDistribution {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProbeDistribution::Rademacher => "rademacher",
            ProbeDistribution::Uniform => "uniform",
        }
    }

    pub fn mean(&self) -> f64 {
        0.0
    }

    pub fn sample<R: rand_core::RngCore>(&self, rng: &mut R) -> f64 {
        match self {
            ProbeDistribution::Rademacher => rng::sign(rng),
            ProbeDistribution::Uniform => rng::symmetric_unit(rng),
        }
    }
}

impl FromStr for ProbeDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rademacher" => Ok(ProbeDistribution::Rademacher),
            "uniform" | "uniform[-1,1]" => Ok(ProbeDistribution::Uniform),
            _ => Err(Error::UnsupportedDistribution),
        }
    }
}

/// Probe vector for trial `index`.
pub fn random_probe(
    n: usize,
    distribution: ProbeDistribution,
    seed: u64,
    index: u64,
) -> Vec<Complex64> {
    let mut stream = rng::substream(seed, index);
    (0..n)
        .map(|_| Complex64::new(distribution.sample(&mut stream), 0.0))
        .collect()
}

/// Empirical `E |D - E D|` against the `sqrt(ln n)` scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcentrationEstimate {
    pub n: usize,
    pub trials: usize,
    pub mean_dev: f64,
    pub stderr: f64,
    /// `sqrt(ln n)`.
    pub scale: f64,
    pub ratio: f64,
    pub distribution: ProbeDistribution,
    pub seed: u64,
}

/// The random dictionary `D = sum_k x_k T_k` with the nonzero pattern of each
/// `T_k` cached, so one trial costs a sparse accumulation plus one norm.
#[derive(Debug, Clone)]
pub struct ConcentrationExperiment {
    n: usize,
    terms: Vec<Vec<(usize, Complex64)>>,
    mean_part: Vec<Complex64>,
    mode: Mode,
    distribution: ProbeDistribution,
    seed: u64,
}

impl ConcentrationExperiment {
    pub fn new(
        regrouped: &[DenseMatrix],
        distribution: ProbeDistribution,
        seed: u64,
    ) -> Result<Self> {
        let n = check_family(regrouped)?;
        if n < 2 {
            return Err(Error::InvalidDimension(
                "concentration estimate needs n >= 2",
            ));
        }
        let terms: Vec<Vec<(usize, Complex64)>> = regrouped
            .iter()
            .map(|t| {
                t.entries()
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v != Complex64::new(0.0, 0.0))
                    .map(|(i, &v)| (i, v))
                    .collect()
            })
            .collect();
        // E(D) = mu sum_k T_k
        let mut mean_part = vec![Complex64::new(0.0, 0.0); n * n];
        let mu = distribution.mean();
        for term in &terms {
            for &(i, v) in term {
                mean_part[i] += v * mu;
            }
        }
        Ok(Self {
            n,
            terms,
            mean_part,
            mode: family_mode(regrouped),
            distribution,
            seed,
        })
    }

    /// `D - E(D)` for the probe `x`.
    pub fn centered(&self, x: &[f64]) -> DenseMatrix {
        let mut entries = self.mean_part.iter().map(|v| -v).collect::<Vec<_>>();
        for (term, &xk) in self.terms.iter().zip(x) {
            for &(i, v) in term {
                entries[i] += v * xk;
            }
        }
        DenseMatrix::new(self.n, self.n, entries, self.mode).expect("shape is consistent")
    }

    pub fn trial(&self, index: u64) -> Result<f64> {
        let mut stream = rng::substream(self.seed, index);
        let x: Vec<f64> = (0..self.n)
            .map(|_| self.distribution.sample(&mut stream))
            .collect();
        linalg::operator_norm(&self.centered(&x))
    }

    pub fn report(&self, deviations: &[f64]) -> ConcentrationEstimate {
        let s = summarize(deviations);
        let scale = libm::sqrt(libm::log(self.n as f64));
        ConcentrationEstimate {
            n: self.n,
            trials: deviations.len(),
            mean_dev: s.mean,
            stderr: s.stderr,
            scale,
            ratio: s.mean / scale,
            distribution: self.distribution,
            seed: self.seed,
        }
    }
}

/// Monte Carlo estimate of `E |D - E D|` over `trials` probes.
pub fn concentration_estimate(
    regrouped: &[DenseMatrix],
    distribution: ProbeDistribution,
    trials: usize,
    seed: u64,
) -> Result<ConcentrationEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive"));
    }
    let exp = ConcentrationExperiment::new(regrouped, distribution, seed)?;
    let devs = (0..trials as u64)
        .map(|i| exp.trial(i))
        .collect::<Result<Vec<_>>>()?;
    Ok(exp.report(&devs))
}

/// Order `m` with `2m` the even integer nearest `ln n`, at least 2.
pub fn khintchine_order(n: usize) -> u32 {
    let half = libm::round(libm::log(n as f64) / 2.0);
    if half < 1.0 {
        1
    } else {
        half as u32
    }
}

/// `2 C_m |(sum_k T_k^* T_k)^(1/2)|_{C_2m}`-type bound on `E |D - E D|` for probes
/// bounded by one (symmetrization, contraction, then operator Khintchine),
/// with `m` from [`khintchine_order`].
pub fn khintchine_route_bound(regrouped: &[DenseMatrix]) -> Result<f64> {
    let n = check_family(regrouped)?;
    let m = khintchine_order(n);
    Ok(2.0 * signs::khintchine_constant(m)? * signs::square_function_norm(regrouped, m)?)
}

/// Both sides of `E|sum eps_k x_k f_k| <= b E|sum eps_k f_k|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Exact contraction-principle check over all sign patterns (`count <= 16`).
/// Summands may be column vectors or matrices; the norm is the operator norm.
pub fn contraction_check(summands: &[DenseMatrix], x: &[f64], b: f64) -> Result<ContractionCheck> {
    if summands.len() > MAX_CONTRACTION_TERMS {
        return Err(Error::TooLarge {
            count: summands.len(),
            limit: MAX_CONTRACTION_TERMS,
        });
    }
    if x.len() != summands.len() {
        return Err(Error::LengthMismatch {
            expected: summands.len(),
            found: x.len(),
        });
    }
    if b.is_nan() || b < 0.0 || x.iter().any(|v| v.is_nan() || v.abs() > b) {
        return Err(Error::InvalidParameter(
            "contraction weights must satisfy |x_k| <= b",
        ));
    }
    let functional = signs::SignFunctional::OperatorNorm;
    let ensemble = SignEnsemble::exact(summands.len())?;
    let weighted: Vec<DenseMatrix> = summands.iter().zip(x).map(|(f, &w)| f.scale(w)).collect();
    let lhs = signs::sign_expectation(&weighted, functional, &ensemble)?.mean;
    let rhs = b * signs::sign_expectation(summands, functional, &ensemble)?.mean;
    Ok(ContractionCheck {
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + 1e-12),
    })
}
