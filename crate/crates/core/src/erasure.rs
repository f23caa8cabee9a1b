//! Random erasure of transmitted frame coefficients.
//!
//! The sender transmits `c_j = <z_j, x>` for every frame vector; each
//! coefficient survives independently with probability `keep_prob`, and the
//! receiver forms the unbiased estimate
//! `y = (alpha / keep_prob) sum_{j kept} c_j z_j`, which for a recon frame at
//! `keep_prob = 1/2` is `(2/M) sum_{j kept} c_j z_j`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::frame::{harmonic_frame, Frame};
use crate::linalg::{inner, vector_norm};
use crate::rng;
use crate::stats::summarize;

/// Largest frame size for exact enumeration of all `2^M` masks.
pub const MAX_ENUMERATION: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct ErasureMask {
    pub kept: Vec<bool>,
    pub keep_prob: f64,
}

impl ErasureMask {
    pub fn len(&self) -> usize {
        self.kept.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kept.is_empty()
    }

    pub fn kept_count(&self) -> usize {
        self.kept.iter().filter(|&&k| k).count()
    }

    /// Mask from the low `len` bits of `pattern` (bit `j` set keeps `j`).
    pub fn from_bits(pattern: u64, len: usize, keep_prob: f64) -> Self {
        Self {
            kept: (0..len).map(|j| pattern >> j & 1 == 1).collect(),
            keep_prob,
        }
    }
}

fn check_probability(keep_prob: f64) -> Result<()> {
    if keep_prob > 0.0 && keep_prob <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidProbability(keep_prob))
    }
}

/// Keeps each index independently with probability `keep_prob`.
pub fn sample_mask<R: RngCore>(len: usize, keep_prob: f64, rng: &mut R) -> Result<ErasureMask> {
    check_probability(keep_prob)?;
    let kept = (0..len).map(|_| rng::unit_f64(rng) < keep_prob).collect();
    Ok(ErasureMask { kept, keep_prob })
}

/// Transmitted coefficients `c_j = <z_j, x> = z_j^* x`.
pub fn analysis_coefficients(f: &Frame, x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.len() != f.dim() {
        return Err(Error::LengthMismatch {
            expected: f.dim(),
            found: x.len(),
        });
    }
    Ok(f.vectors().columns().map(|z| inner(&z, x)).collect())
}

/// Unbiased reconstruction from the surviving coefficients.
pub fn reconstruct(f: &Frame, coeffs: &[Complex64], mask: &ErasureMask) -> Result<Vec<Complex64>> {
    if coeffs.len() != f.len() {
        return Err(Error::LengthMismatch {
            expected: f.len(),
            found: coeffs.len(),
        });
    }
    if mask.len() != f.len() {
        return Err(Error::LengthMismatch {
            expected: f.len(),
            found: mask.len(),
        });
    }
    check_probability(mask.keep_prob)?;
    let weight = f.alpha() / mask.keep_prob;
    let n = f.dim();
    let vectors = f.vectors();
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for (j, (&c, _)) in coeffs
        .iter()
        .zip(&mask.kept)
        .enumerate()
        .filter(|(_, (_, &k))| k)
    {
        let wc = c * weight;
        for (i, yi) in y.iter_mut().enumerate() {
            *yi += vectors.get(i, j) * wc;
        }
    }
    Ok(y)
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(p, q)| (p - q).norm_sqr()).sum())
}

/// Exact `E |x - y|` at `keep_prob = 1/2`, averaging all `2^M` masks.
pub fn exact_error_expectation(f: &Frame, x: &[Complex64]) -> Result<f64> {
    if f.len() > MAX_ENUMERATION {
        return Err(Error::TooLarge {
            count: f.len(),
            limit: MAX_ENUMERATION,
        });
    }
    let coeffs = analysis_coefficients(f, x)?;
    let patterns = 1u64 << f.len();
    let mut total = 0.0;
    for pattern in 0..patterns {
        let mask = ErasureMask::from_bits(pattern, f.len(), 0.5);
        total += distance(x, &reconstruct(f, &coeffs, &mask)?);
    }
    Ok(total / patterns as f64)
}

/// Aggregate Monte Carlo statistics for one frame and input.
#[derive(Debug, Clone, PartialEq)]
pub struct ErasureTrialReport {
    pub n: usize,
    pub frame_len: usize,
    pub keep_prob: f64,
    pub trials: usize,
    pub mean_error: f64,
    pub stderr: f64,
    /// `sqrt(n ln n / M)`.
    pub epsilon: f64,
    pub input_norm: f64,
    /// `mean_error / (epsilon * input_norm)`.
    pub ratio: f64,
    pub seed: u64,
}

/// Error scale `sqrt(n ln n / M)` (natural log).
pub fn epsilon_scale(n: usize, frame_len: usize) -> f64 {
    libm::sqrt(n as f64 * libm::log(n as f64) / frame_len as f64)
}

/// Everything a single trial needs, precomputed once per experiment.
#[derive(Debug, Clone)]
pub struct ErasureExperiment<'a> {
    frame: &'a Frame,
    x: Vec<Complex64>,
    coeffs: Vec<Complex64>,
    keep_prob: f64,
    seed: u64,
}

impl<'a> ErasureExperiment<'a> {
    pub fn new(frame: &'a Frame, x: &[Complex64], keep_prob: f64, seed: u64) -> Result<Self> {
        if frame.dim() < 2 {
            return Err(Error::InvalidDimension("erasure estimates need n >= 2"));
        }
        check_probability(keep_prob)?;
        let coeffs = analysis_coefficients(frame, x)?;
        Ok(Self {
            frame,
            x: x.to_vec(),
            coeffs,
            keep_prob,
            seed,
        })
    }

    /// `|x - y|` for trial `index`, drawn from `substream(seed, index)`.
    pub fn trial(&self, index: u64) -> Result<f64> {
        let mut stream = rng::substream(self.seed, index);
        let mask = sample_mask(self.frame.len(), self.keep_prob, &mut stream)?;
        Ok(distance(
            &self.x,
            &reconstruct(self.frame, &self.coeffs, &mask)?,
        ))
    }

    /// Folds per-trial errors (in trial-index order) into a report.
    pub fn report(&self, errors: &[f64]) -> ErasureTrialReport {
        let summary = summarize(errors);
        let (n, len) = (self.frame.dim(), self.frame.len());
        let epsilon = epsilon_scale(n, len);
        let input_norm = vector_norm(&self.x);
        ErasureTrialReport {
            n,
            frame_len: len,
            keep_prob: self.keep_prob,
            trials: errors.len(),
            mean_error: summary.mean,
            stderr: summary.stderr,
            epsilon,
            input_norm,
            ratio: summary.mean / (epsilon * input_norm),
            seed: self.seed,
        }
    }
}

/// Monte Carlo estimate of `E |x - y|` over `trials` independent masks.
pub fn mc_error_estimate(
    f: &Frame,
    x: &[Complex64],
    trials: usize,
    seed: u64,
    keep_prob: f64,
) -> Result<ErasureTrialReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive"));
    }
    let experiment = ErasureExperiment::new(f, x, keep_prob, seed)?;
    let errors = (0..trials as u64)
        .map(|i| experiment.trial(i))
        .collect::<Result<Vec<_>>>()?;
    Ok(experiment.report(&errors))
}

/// Deterministic pseudo-random real unit vector in dimension `n`.
pub fn default_input(n: usize, seed: u64) -> Vec<Complex64> {
    let mut stream = rng::substream(seed, rng::INPUT_STREAM);
    let raw: Vec<f64> = (0..n).map(|_| rng::symmetric_unit(&mut stream)).collect();
    let norm = libm::sqrt(raw.iter().map(|v| v * v).sum());
    raw.into_iter()
        .map(|v| Complex64::new(v / norm, 0.0))
        .collect()
}

/// Runs [`mc_error_estimate`] on `harmonic_frame(n, M)` for each `M` in order,
/// with the fixed input `default_input(n, seed)`.
pub fn redundancy_sweep(
    n: usize,
    frame_lens: &[usize],
    trials: usize,
    seed: u64,
    keep_prob: f64,
) -> Result<Vec<ErasureTrialReport>> {
    let x = default_input(n, seed);
    frame_lens
        .iter()
        .map(|&len| mc_error_estimate(&harmonic_frame(n, len, None)?, &x, trials, seed, keep_prob))
        .collect()
}
