//! Hill estimator of a power-law tail exponent.

use crate::error::{Error, Result};

pub const DEFAULT_TOP_FRACTION: f64 = 0.01;
pub const MIN_TAIL_COUNT: usize = 10;

/// Hill estimate with its order-statistic count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HillEstimate {
    pub zeta: f64,
    pub k: usize,
}

impl HillEstimate {
    /// Asymptotic normal interval `ζ̂ (1 ± z/√k)`.
    pub fn confidence_interval(&self, z: f64) -> (f64, f64) {
        let half = z * self.zeta / (self.k as f64).sqrt();
        (self.zeta - half, self.zeta + half)
    }
}

/// Tail exponent from the top `⌈top_fraction · N⌉` order statistics.
pub fn hill_estimator(samples: &[f64], top_fraction: f64) -> Result<f64> {
    hill_estimate(samples, top_fraction).map(|h| h.zeta)
}

pub fn hill_estimate(samples: &[f64], top_fraction: f64) -> Result<HillEstimate> {
    if !(top_fraction > 0.0 && top_fraction <= 0.5) {
        return Err(Error::param(format!(
            "top_fraction must be in (0, 0.5], got {top_fraction}"
        )));
    }
    if samples.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::param("Hill estimator needs positive finite samples"));
    }
    let k = (top_fraction * samples.len() as f64).ceil() as usize;
    if k < MIN_TAIL_COUNT || k >= samples.len() {
        return Err(Error::TooFewSamples {
            needed: MIN_TAIL_COUNT,
            got: k.min(samples.len().saturating_sub(1)),
        });
    }
    let mut sorted = samples.to_vec();
    // descending: only the top k+1 order statistics are needed
    sorted.select_nth_unstable_by(k, |a, b| b.total_cmp(a));
    let threshold = sorted[k];
    let log_sum: f64 = sorted[..k].iter().map(|&x| (x / threshold).ln()).sum();
    if !(log_sum > 0.0) {
        return Err(Error::DegenerateSample("zero log-spacings in the upper tail"));
    }
    Ok(HillEstimate {
        zeta: k as f64 / log_sum,
        k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Deterministic inverse-CDF Pareto sample on a stratified uniform grid.
    fn pareto_grid(zeta: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| ((i as f64 + 0.5) / n as f64).powf(-1.0 / zeta))
            .collect()
    }

    #[test]
    fn recovers_exponent_two() {
        let s = pareto_grid(2.0, 1_000_000);
        let z = hill_estimator(&s, 0.01).unwrap();
        assert!((z - 2.0).abs() < 0.1, "{z}");
    }

    #[test]
    fn recovers_exponent_one() {
        let s = pareto_grid(1.0, 1_000_000);
        let z = hill_estimator(&s, 0.01).unwrap();
        assert!((z - 1.0).abs() < 0.1, "{z}");
    }

    #[test]
    fn constant_samples_are_degenerate() {
        let s = vec![3.0; 5000];
        assert!(matches!(
            hill_estimator(&s, 0.01),
            Err(Error::DegenerateSample(_))
        ));
    }

    #[test]
    fn too_few_in_tail() {
        let s = pareto_grid(2.0, 500);
        assert!(matches!(
            hill_estimator(&s, 0.01),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn bad_fraction() {
        let s = pareto_grid(2.0, 5000);
        assert!(hill_estimator(&s, 0.0).is_err());
        assert!(hill_estimator(&s, 0.6).is_err());
    }

    #[test]
    fn interval_brackets_estimate() {
        let h = HillEstimate { zeta: 2.0, k: 100 };
        let (lo, hi) = h.confidence_interval(1.96);
        assert!((lo - 1.608).abs() < 1e-12 && (hi - 2.392).abs() < 1e-12);
    }
}
