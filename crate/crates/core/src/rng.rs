//! Seeded random streams.
//!
//! Every stochastic routine draws trial `i` from `substream(seed, i)`: a
//! ChaCha8 generator keyed by the seed with its stream id set to `i`. Trials
//! are therefore independent of execution order and thread count.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Stream ids at the top of the range are reserved for auxiliary draws so
/// they never collide with trial indices.
pub const INPUT_STREAM: u64 = u64::MAX;
pub const INSTANCE_STREAM: u64 = u64::MAX - 1;
pub const PROBE_STREAM: u64 = u64::MAX - 2;

pub type Stream = ChaCha8Rng;

pub fn substream(seed: u64, index: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform on `[0, 1)` with 53 random bits.
#[inline]
pub fn unit_f64<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform on `[-1, 1)`.
#[inline]
pub fn symmetric_unit<R: RngCore>(rng: &mut R) -> f64 {
    2.0 * unit_f64(rng) - 1.0
}

/// Rademacher sign: `+1` or `-1` with probability 1/2.
#[inline]
pub fn sign<R: RngCore>(rng: &mut R) -> f64 {
    if rng.next_u64() >> 63 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Uniform integer in `[0, bound)` by rejection (no modulo bias).
pub fn below<R: RngCore>(rng: &mut R, bound: u64) -> u64 {
    assert!(bound > 0);
    let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
    loop {
        let v = rng.next_u64();
        if v <= zone {
            return v % bound;
        }
    }
}

/// Sorted uniformly random `k`-subset of `0..n` (partial Fisher-Yates).
pub fn subset<R: RngCore>(rng: &mut R, n: usize, k: usize) -> alloc::vec::Vec<usize> {
    assert!(k <= n);
    let mut pool: alloc::vec::Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + below(rng, (n - i) as u64) as usize;
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool.sort_unstable();
    pool
}
