//! Numerical erasure robustness: worst-case condition numbers of column
//! submatrices that keep `K` of the `N` frame vectors.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::linalg;
use crate::rng;

/// Largest `C(N, K)` examined in exhaustive mode.
pub const EXHAUSTIVE_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Every `K`-subset in lexicographic order.
    Exhaustive,
    /// `samples` uniformly random subsets; a lower bound on the worst case.
    Sampled { samples: usize, seed: u64 },
}

impl SearchMode {
    pub fn name(&self) -> &'static str {
        match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Sampled { .. } => "sampled",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NerCertificate {
    /// Number of frame vectors `N`.
    pub frame_len: usize,
    /// Kept subset size `K`.
    pub kept: usize,
    /// Erasure fraction `1 - K/N`.
    pub p: f64,
    /// `+inf` when a rank-deficient subset was met.
    pub worst_cond: f64,
    pub worst_subset: Vec<usize>,
    pub mode: SearchMode,
    pub subsets_examined: u128,
}

impl NerCertificate {
    pub fn rank_deficient(&self) -> bool {
        self.worst_cond.is_infinite()
    }
}

/// `C(n, k)`, saturating.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Condition number of the `n x |subset|` column submatrix.
pub fn submatrix_condition(f: &Frame, subset: &[usize]) -> Result<f64> {
    if subset.is_empty() {
        return Err(Error::InvalidDimension("empty subset"));
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("subset indices must be distinct"));
    }
    linalg::condition_number(&f.vectors().select_columns(subset)?)
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in (i + 1)..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Lexicographic iterator over the `k`-subsets of `0..n`.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    core::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        current = if next_combination(&mut next, n) {
            Some(next)
        } else {
            None
        };
        Some(out)
    })
}

/// Worst submatrix condition number over subsets of size `kept`.
///
/// A rank-deficient subset stops the search with [`Error::RankDeficient`].
/// Ties keep the lexicographically smallest subset.
pub fn worst_condition(f: &Frame, kept: usize, mode: SearchMode) -> Result<NerCertificate> {
    search(f, kept, mode, false)
}

fn search(
    f: &Frame,
    kept: usize,
    mode: SearchMode,
    tolerate_rank_deficiency: bool,
) -> Result<NerCertificate> {
    let (n, frame_len) = (f.dim(), f.len());
    if kept < n || kept > frame_len {
        return Err(Error::OutOfRange("K must satisfy M <= K <= N"));
    }
    let mut cert = NerCertificate {
        frame_len,
        kept,
        p: 1.0 - kept as f64 / frame_len as f64,
        worst_cond: 1.0,
        worst_subset: Vec::new(),
        mode,
        subsets_examined: 0,
    };
    let consider = |cert: &mut NerCertificate, subset: Vec<usize>| -> Result<bool> {
        cert.subsets_examined += 1;
        let cond = match submatrix_condition(f, &subset) {
            Ok(c) => c,
            Err(Error::RankDeficient) if tolerate_rank_deficiency => f64::INFINITY,
            Err(e) => return Err(e),
        };
        if cert.worst_subset.is_empty()
            || cond > cert.worst_cond
            || (cond == cert.worst_cond && subset < cert.worst_subset)
        {
            cert.worst_cond = cond;
            cert.worst_subset = subset;
        }
        Ok(cond.is_infinite())
    };
    match mode {
        SearchMode::Exhaustive => {
            let total = binomial(frame_len, kept);
            if total > EXHAUSTIVE_BUDGET {
                return Err(Error::BudgetExceeded {
                    subsets: total,
                    limit: EXHAUSTIVE_BUDGET,
                });
            }
            for subset in combinations(frame_len, kept) {
                if consider(&mut cert, subset)? {
                    break;
                }
            }
        }
        SearchMode::Sampled { samples, seed } => {
            if samples == 0 {
                return Err(Error::InvalidParameter("samples must be positive"));
            }
            for i in 0..samples as u64 {
                let subset = rng::subset(&mut rng::substream(seed, i), frame_len, kept);
                if consider(&mut cert, subset)? {
                    break;
                }
            }
        }
    }
    Ok(cert)
}

/// Smallest `C >= 1` with `p <= 1/2 - C^2 / (C^4 + 1)`: with `a = 1/2 - p`,
/// `C = sqrt((1 + sqrt(1 - 4 a^2)) / (2 a))`.
pub fn erasure_robust_bound(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::OutOfRange("erasure fraction must lie in (0, 1/2)"));
    }
    let a = 0.5 - p;
    Ok(libm::sqrt(
        (1.0 + libm::sqrt(1.0 - 4.0 * a * a)) / (2.0 * a),
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certification {
    /// Exhaustive mode: definitive. Sampled mode: "not refuted".
    pub pass: bool,
    pub bound: f64,
    pub cert: NerCertificate,
}

/// Checks `(p, C)` robustness with `K = round((1 - p) N)`.
pub fn certify(f: &Frame, p: f64, bound: f64, mode: SearchMode) -> Result<Certification> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::OutOfRange("erasure fraction must lie in [0, 1)"));
    }
    let kept = libm::round((1.0 - p) * f.len() as f64) as usize;
    certify_kept(f, kept, bound, mode)
}

/// Same as [`certify`] with `K` given directly. A rank-deficient subset
/// yields a failing certificate with `worst_cond = inf`.
pub fn certify_kept(f: &Frame, kept: usize, bound: f64, mode: SearchMode) -> Result<Certification> {
    let cert = search(f, kept, mode, true)?;
    Ok(Certification {
        pass: cert.worst_cond <= bound,
        bound,
        cert,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffset::find_difference_set;
    use crate::frame::{difference_set_etf, Normalization};
    use crate::DenseMatrix;
    use num_complex::Complex64;

    fn etf(n: usize, m: usize) -> Frame {
        difference_set_etf(&find_difference_set(n, m).unwrap(), Normalization::Unit)
    }

    #[test]
    fn combinations_lexicographic() {
        let all: Vec<Vec<usize>> = combinations(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(7, 5).count(), 21);
        assert_eq!(binomial(13, 8), 1287);
        assert_eq!(binomial(7, 8), 0);
    }

    #[test]
    fn submatrix_examples() {
        let f = etf(7, 3);
        let all: Vec<usize> = (0..7).collect();
        assert!((submatrix_condition(&f, &all).unwrap() - 1.0).abs() < 1e-9);
        // Three columns of the 7-point table: a 3x3 Vandermonde on distinct nodes.
        let k = submatrix_condition(&f, &[0, 1, 2]).unwrap();
        let oracle = {
            let sv = crate::linalg::svd_values(&f.vectors().select_columns(&[0, 1, 2]).unwrap())
                .unwrap();
            sv.largest() / sv.smallest()
        };
        assert!(k >= 1.0 && (k - oracle).abs() < 1e-12);
        let dup = Frame::new(
            DenseMatrix::from_real(2, 2, vec![1.0, 1.0, 0.0, 0.0]).unwrap(),
            Normalization::Unit,
            "dup",
        );
        assert_eq!(
            submatrix_condition(&dup, &[0, 1]),
            Err(Error::RankDeficient)
        );
    }

    #[test]
    fn bound_inversion() {
        let c = erasure_robust_bound(2.0 / 7.0).unwrap();
        assert!((c - ((7.0 + 2.0 * 10f64.sqrt()) / 3.0).sqrt()).abs() < 1e-14);
        assert!((c - 2.10749).abs() < 1e-5);
        for p in [2.0 / 7.0, 5.0 / 13.0, 0.01, 0.3, 0.45] {
            let c = erasure_robust_bound(p).unwrap();
            let back = 0.5 - c * c / (c.powi(4) + 1.0);
            assert!((back - p).abs() < 1e-12 && c >= 1.0);
        }
        assert!((erasure_robust_bound(5.0 / 13.0).unwrap() - 2.92402).abs() < 1e-4);
        assert!((erasure_robust_bound(1e-9).unwrap() - 1.0).abs() < 1e-3);
        assert!(erasure_robust_bound(0.5).is_err() && erasure_robust_bound(0.0).is_err());
    }

    #[test]
    fn worst_condition_examples() {
        let f = etf(7, 3);
        let full = worst_condition(&f, 7, SearchMode::Exhaustive).unwrap();
        assert!((full.worst_cond - 1.0).abs() < 1e-9 && full.subsets_examined == 1);
        let five = worst_condition(&f, 5, SearchMode::Exhaustive).unwrap();
        assert_eq!(five.subsets_examined, 21);
        assert!(five.worst_cond <= erasure_robust_bound(2.0 / 7.0).unwrap());
        assert!(worst_condition(&f, 2, SearchMode::Exhaustive).is_err());
        let big = etf(57, 8);
        assert!(matches!(
            worst_condition(&big, 20, SearchMode::Exhaustive),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn exhaustive_dominates_sampled() {
        let f = etf(13, 4);
        let exact = worst_condition(&f, 8, SearchMode::Exhaustive).unwrap();
        for seed in 0..5 {
            let sampled =
                worst_condition(&f, 8, SearchMode::Sampled { samples: 40, seed }).unwrap();
            assert!(sampled.worst_cond <= exact.worst_cond);
            assert_eq!(sampled.subsets_examined, 40);
        }
    }

    #[test]
    fn invariant_under_unimodular_scaling_and_permutation() {
        let f = etf(7, 3);
        let base = worst_condition(&f, 4, SearchMode::Exhaustive)
            .unwrap()
            .worst_cond;
        let phases = DenseMatrix::from_fn(3, 7, |i, k| {
            let t = 0.7 * k as f64 + 0.1;
            f.vectors().get(i, k) * Complex64::new(t.cos(), t.sin())
        });
        let scaled = Frame::new(phases, Normalization::Unit, "scaled");
        let perm = [3, 6, 0, 5, 1, 4, 2];
        let permuted = Frame::new(
            f.vectors().select_columns(&perm).unwrap(),
            Normalization::Unit,
            "perm",
        );
        for g in [&scaled, &permuted] {
            let w = worst_condition(g, 4, SearchMode::Exhaustive)
                .unwrap()
                .worst_cond;
            assert!((w - base).abs() < 1e-9);
        }
    }

    #[test]
    fn certify_examples() {
        let f = etf(7, 3);
        let c = erasure_robust_bound(2.0 / 7.0).unwrap();
        let ok = certify(&f, 2.0 / 7.0, c, SearchMode::Exhaustive).unwrap();
        assert!(ok.pass && ok.cert.kept == 5);
        assert!(
            !certify(&f, 2.0 / 7.0, 1.0 - 1e-6, SearchMode::Exhaustive)
                .unwrap()
                .pass
        );
        let degenerate = Frame::new(
            DenseMatrix::from_real(2, 3, vec![1.0, 1.0, 0.0, 0.0, 0.0, 1.0]).unwrap(),
            Normalization::Unit,
            "dup",
        );
        let out = certify(&degenerate, 1.0 / 3.0, 10.0, SearchMode::Exhaustive).unwrap();
        assert!(!out.pass && out.cert.rank_deficient());
        assert_eq!(out.cert.worst_subset, vec![0, 1]);
    }
}
