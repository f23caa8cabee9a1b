use rayon::prelude::*;

use crate::error::CliError;

/// Evaluates `f(0..count)` in parallel. Results come back in index order and
/// the first failing index decides the error, so the outcome is the same for
/// any thread count.
pub fn map_trials<F>(count: u64, f: F) -> framekit::Result<Vec<f64>>
where
    F: Fn(u64) -> framekit::Result<f64> + Sync + Send,
{
    let results: Vec<framekit::Result<f64>> = (0..count as usize)
        .into_par_iter()
        .map(|i| f(i as u64))
        .collect();
    results.into_iter().collect()
}

/// Runs `job` on a pool of `threads` workers; 0 uses the global pool.
pub fn with_threads<T: Send>(
    threads: usize,
    job: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    if threads == 0 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Io(format!("cannot start thread pool: {e}")))?;
    Ok(pool.install(job))
}
