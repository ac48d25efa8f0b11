use statrs::distribution::{ContinuousCDF, StudentsT};

/// Summary of a batch-means sample: the batch-mean average, the standard
/// error of that average, and the 95% half width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchStats {
    pub mean: f64,
    pub std_error: f64,
    pub ci_half_width: f64,
}

/// Two-sided 97.5% Student-t quantile with `dof` degrees of freedom, i.e.
/// the multiplier for a 95% confidence interval.
pub fn student_t_975(dof: usize) -> f64 {
    let t = StudentsT::new(0.0, 1.0, dof as f64)
        .expect("degrees of freedom are positive by construction");
    t.inverse_cdf(0.975)
}

/// Batch-means statistics: treats the per-batch means as an i.i.d. sample,
/// which is the standard steady-state simulation approximation for long
/// contiguous batches.
///
/// Panics if fewer than two batches are supplied; the config validator
/// guarantees at least two upstream.
pub fn batch_stats(batch_means: &[f64]) -> BatchStats {
    let b = batch_means.len();
    assert!(b >= 2, "batch means need at least two batches");
    let mean = batch_means.iter().sum::<f64>() / b as f64;
    let var = batch_means
        .iter()
        .map(|m| (m - mean) * (m - mean))
        .sum::<f64>()
        / (b - 1) as f64;
    let std_error = (var / b as f64).sqrt();
    BatchStats {
        mean,
        std_error,
        ci_half_width: student_t_975(b - 1) * std_error,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_quantile_matches_table_values() {
        // Classic two-sided 95% table entries.
        assert!((student_t_975(19) - 2.093).abs() < 1e-3);
        assert!((student_t_975(1) - 12.706).abs() < 1e-2);
        assert!((student_t_975(1_000_000) - 1.960).abs() < 1e-3);
    }

    #[test]
    fn batch_stats_on_a_known_sample() {
        // Sample 1..=5: mean 3, sample variance 2.5, SE = sqrt(0.5).
        let s = batch_stats(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!((s.mean - 3.0).abs() < 1e-15);
        assert!((s.std_error - 0.5_f64.sqrt()).abs() < 1e-12);
        // t(0.975, 4) = 2.776...
        assert!((s.ci_half_width - 2.7764 * 0.5_f64.sqrt()).abs() < 1e-3);
    }

    #[test]
    fn constant_sample_has_zero_width() {
        let s = batch_stats(&[2.0; 8]);
        assert_eq!(s.std_error, 0.0);
        assert_eq!(s.ci_half_width, 0.0);
    }
}
