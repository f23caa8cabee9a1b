use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Solves `A x = b` for square row-major `A` by LU with partial pivoting.
pub(crate) fn lu_solve<S: Scalar>(n: usize, mut a: Vec<S>, mut b: Vec<S>) -> Result<Vec<S>> {
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&i, &j| a[i * n + k].abs_sqr().total_cmp(&a[j * n + k].abs_sqr()))
            .unwrap_or(k);
        if a[pivot_row * n + k].abs_sqr() == 0.0 {
            return Err(Error::Singular);
        }
        if pivot_row != k {
            for j in 0..n {
                a.swap(k * n + j, pivot_row * n + j);
            }
            b.swap(k, pivot_row);
        }
        let pivot = a[k * n + k];
        for i in (k + 1)..n {
            let factor = a[i * n + k] / pivot;
            if factor == S::ZERO {
                continue;
            }
            for j in (k + 1)..n {
                let akj = a[k * n + j];
                a[i * n + j] -= factor * akj;
            }
            let bk = b[k];
            b[i] -= factor * bk;
        }
    }
    for k in (0..n).rev() {
        let mut acc = b[k];
        for j in (k + 1)..n {
            acc -= a[k * n + j] * b[j];
        }
        b[k] = acc / a[k * n + k];
    }
    Ok(b)
}
