/// Mean and standard error of the mean, accumulated in slice order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub stderr: f64,
    pub count: usize,
}

/// Summarizes samples in index order, so identical inputs give bit-identical
/// output. `stderr` uses the unbiased sample deviation (zero for one sample).
pub fn summarize(samples: &[f64]) -> Summary {
    let count = samples.len();
    if count == 0 {
        return Summary {
            mean: 0.0,
            stderr: 0.0,
            count,
        };
    }
    let n = count as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let stderr = if count > 1 {
        let var = samples
            .iter()
            .map(|&s| (s - mean) * (s - mean))
            .sum::<f64>()
            / (n - 1.0);
        libm::sqrt(var / n)
    } else {
        0.0
    };
    Summary {
        mean,
        stderr,
        count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_of_known_samples() {
        let s = summarize(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.stderr - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
        assert_eq!(summarize(&[3.0]).stderr, 0.0);
        assert_eq!(summarize(&[]).count, 0);
    }
}
