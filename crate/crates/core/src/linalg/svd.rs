//! One-sided (Hestenes) Jacobi singular values.
//!
//! Columns of a tall working copy are orthogonalized by plane rotations until
//! every pair is orthogonal to working precision; the singular values are then
//! the column norms. The method is deterministic and keeps high relative
//! accuracy for small singular values, which the condition-number routines
//! depend on.

use alloc::vec::Vec;

use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 80;

/// Singular values of a row-major `rows x cols` matrix, sorted nonincreasing.
pub(crate) fn singular_values<S: Scalar>(rows: usize, cols: usize, data: &[S]) -> Vec<f64> {
    // Column-major tall working copy with m >= n. When the input is wide the
    // rows become the columns (singular values of A and A^T coincide).
    let (m, n, mut work) = if rows >= cols {
        let mut w = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            w.extend((0..rows).map(|i| data[i * cols + j]));
        }
        (rows, cols, w)
    } else {
        (cols, rows, data.to_vec())
    };

    let tol = f64::EPSILON * libm::sqrt(m as f64);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let (head, tail) = work.split_at_mut(q * m);
                let col_p = &mut head[p * m..(p + 1) * m];
                let col_q = &mut tail[..m];
                rotated |= rotate_pair(col_p, col_q, tol);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut values: Vec<f64> = work
        .chunks_exact(m)
        .map(|col| libm::sqrt(col.iter().map(|v| v.abs_sqr()).sum::<f64>()))
        .collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// Orthogonalizes one column pair. Returns whether a rotation was applied.
#[inline]
fn rotate_pair<S: Scalar>(col_p: &mut [S], col_q: &mut [S], tol: f64) -> bool {
    let mut alpha = 0.0;
    let mut beta = 0.0;
    let mut gamma = S::ZERO;
    for (&a, &b) in col_p.iter().zip(col_q.iter()) {
        alpha += a.abs_sqr();
        beta += b.abs_sqr();
        gamma += a.conj() * b;
    }
    let g = gamma.modulus();
    if g == 0.0 || g <= tol * libm::sqrt(alpha * beta) {
        return false;
    }

    // Rotate (a_p, a_q * conj(phase)) so that the pair inner product is real.
    let phase_conj = gamma.conj().scale(1.0 / g);
    let zeta = (beta - alpha) / (2.0 * g);
    let t = libm::copysign(1.0, zeta) / (libm::fabs(zeta) + libm::sqrt(1.0 + zeta * zeta));
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = c * t;
    for (a, b) in col_p.iter_mut().zip(col_q.iter_mut()) {
        let ap = *a;
        let bq = *b * phase_conj;
        *a = ap.scale(c) - bq.scale(s);
        *b = ap.scale(s) + bq.scale(c);
    }
    true
}
