//! Eigenvalues of Hermitian matrices: Householder reduction to real symmetric
//! tridiagonal form, then implicit QL with Wilkinson-style shifts.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_QL_ITERATIONS: usize = 60;

/// Eigenvalues (ascending) of the Hermitian matrix whose lower triangle is
/// stored row-major in `a`. The strict upper triangle is ignored.
pub(crate) fn hermitian_eigenvalues<S: Scalar>(n: usize, mut a: Vec<S>) -> Result<Vec<f64>> {
    debug_assert_eq!(a.len(), n * n);
    for i in 0..n {
        a[i * n + i] = S::from_re(a[i * n + i].re());
        for j in (i + 1)..n {
            a[i * n + j] = a[j * n + i].conj();
        }
    }
    let (mut diag, mut off) = tridiagonalize(n, &mut a);
    tql(&mut diag, &mut off)?;
    diag.sort_by(|x, y| x.total_cmp(y));
    Ok(diag)
}

/// Reduces the full Hermitian matrix in place. Returns the real diagonal and
/// the moduli of the subdiagonal (a unitary diagonal similarity makes the
/// complex subdiagonal real without changing the spectrum).
fn tridiagonalize<S: Scalar>(n: usize, a: &mut [S]) -> (Vec<f64>, Vec<f64>) {
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    let mut v = vec![S::ZERO; n];
    let mut p = vec![S::ZERO; n];

    for k in 0..n.saturating_sub(1) {
        diag[k] = a[k * n + k].re();
        let len = n - k - 1;
        let base = k + 1;
        let x0 = a[base * n + k];
        if len == 1 {
            off[k] = x0.modulus();
            continue;
        }
        let sigma = libm::sqrt((base..n).map(|i| a[i * n + k].abs_sqr()).sum::<f64>());
        if sigma == 0.0 {
            continue;
        }
        let x0_mod = x0.modulus();
        let phase = if x0_mod == 0.0 {
            S::ONE
        } else {
            x0.scale(1.0 / x0_mod)
        };
        let alpha = -phase.scale(sigma);

        let v = &mut v[..len];
        for (t, vi) in v.iter_mut().enumerate() {
            *vi = a[(base + t) * n + k];
        }
        v[0] -= alpha;
        let vnorm = libm::sqrt(v.iter().map(|x| x.abs_sqr()).sum::<f64>());
        let inv = 1.0 / vnorm;
        v.iter_mut().for_each(|x| *x = x.scale(inv));
        off[k] = sigma;

        // B <- H B H with H = I - 2 v v^H, written as B - 2 (v w^H + w v^H).
        let p = &mut p[..len];
        for (r, pr) in p.iter_mut().enumerate() {
            let row = &a[(base + r) * n + base..(base + r) * n + n];
            let mut acc = S::ZERO;
            for (&b, &vj) in row.iter().zip(v.iter()) {
                acc += b * vj;
            }
            *pr = acc;
        }
        let kappa: f64 = v
            .iter()
            .zip(p.iter())
            .map(|(&vi, &pi)| (vi.conj() * pi).re())
            .sum();
        for (pi, &vi) in p.iter_mut().zip(v.iter()) {
            *pi -= vi.scale(kappa);
        }
        let w = p;
        for r in 0..len {
            let vr = v[r].scale(2.0);
            let wr = w[r].scale(2.0);
            let row = &mut a[(base + r) * n + base..(base + r) * n + n];
            for ((b, &vc), &wc) in row.iter_mut().zip(v.iter()).zip(w.iter()) {
                *b -= vr * wc.conj() + wr * vc.conj();
            }
        }
    }
    if n > 0 {
        diag[n - 1] = a[(n - 1) * n + n - 1].re();
    }
    (diag, off)
}

/// Implicit QL on a symmetric tridiagonal matrix; `off[i]` couples `i` and
/// `i + 1`. Eigenvalues overwrite `diag`.
fn tql(diag: &mut [f64], off: &mut [f64]) -> Result<()> {
    let n = diag.len();
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = libm::fabs(diag[m]) + libm::fabs(diag[m + 1]);
                if libm::fabs(off[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence);
            }

            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = libm::hypot(g, 1.0);
            g = diag[m] - diag[l] + off[l] / (g + libm::copysign(r, g));
            let (mut s, mut c, mut shift) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = libm::hypot(f, g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= shift;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - shift;
                r = (diag[i] - g) * s + 2.0 * c * b;
                shift = s * r;
                diag[i + 1] = g + shift;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            diag[l] -= shift;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}
