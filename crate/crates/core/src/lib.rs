//! Numerical toolkit for highly redundant tight frames.
//!
//! The crate covers four experiments that share one dense linear-algebra
//! substrate:
//!
//! * [`frame`]: scaled orthonormal unions, harmonic frames and equiangular
//!   tight frames built from cyclic difference sets.
//! * [`erasure`]: random erasure of transmitted frame coefficients followed by
//!   unbiased reconstruction, with exact enumeration and Monte Carlo estimates.
//! * [`ner`]: worst-case condition numbers of column submatrices, i.e.
//!   numerical erasure robustness certificates.
//! * [`signs`] and [`probing`]: Rademacher sign-sum inequalities (Rudelson,
//!   operator Khintchine, contraction) and recovery of a matrix with a sparse
//!   representation from a single probe vector.
//!
//! Everything here is `no_std` with `alloc`. File formats, the CLI and the
//! parallel runners live in the `framekit-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
mod scalar;

pub mod diffset;
pub mod erasure;
pub mod frame;
pub mod linalg;
pub mod ner;
pub mod probing;
pub mod rng;
pub mod signs;
pub mod stats;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, Mode};
pub use num_complex::Complex64;

/// Shorthand for a complex vector.
pub type CVector = alloc::vec::Vec<Complex64>;
