use serde::{Deserialize, Serialize};

/// Outcome of a Monte Carlo estimate.
///
/// Accumulators are integers so the result does not depend on the order in
/// which trials are merged.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatorResult {
    pub trials: u64,
    pub accepted: u64,
    /// Indicator count for proportions, value sum for means.
    pub sum: u64,
    pub sum_sq: u128,
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
    pub kind: EstimateKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimateKind {
    Proportion,
    Mean,
}

impl EstimatorResult {
    /// `hits / accepted` with the binomial standard error.
    pub fn proportion(trials: u64, accepted: u64, hits: u64, seed: u64) -> Self {
        assert!(hits <= accepted && accepted <= trials);
        let (estimate, stderr) = if accepted == 0 {
            (f64::NAN, f64::NAN)
        } else {
            let p = hits as f64 / accepted as f64;
            (p, (p * (1.0 - p) / accepted as f64).sqrt())
        };
        EstimatorResult {
            trials,
            accepted,
            sum: hits,
            sum_sq: hits as u128,
            estimate,
            stderr,
            seed,
            kind: EstimateKind::Proportion,
        }
    }

    /// Sample mean over the accepted trials with standard error
    /// `s / sqrt(accepted)`, `s` the sample standard deviation.
    pub fn mean(trials: u64, accepted: u64, sum: u64, sum_sq: u128, seed: u64) -> Self {
        assert!(accepted <= trials);
        let (estimate, stderr) = match accepted {
            0 => (f64::NAN, f64::NAN),
            1 => (sum as f64, f64::NAN),
            k => {
                let k = k as f64;
                let mean = sum as f64 / k;
                let var = ((sum_sq as f64) - k * mean * mean) / (k - 1.0);
                (mean, (var.max(0.0) / k).sqrt())
            }
        };
        EstimatorResult { trials, accepted, sum, sum_sq, estimate, stderr, seed, kind: EstimateKind::Mean }
    }

    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.trials as f64
    }

    /// `|estimate - exact| <= k * stderr`; a zero stderr demands equality.
    pub fn within(&self, exact: f64, k: f64) -> bool {
        (self.estimate - exact).abs() <= k * self.stderr + 1e-12
    }
}

/// Ratio `a / b` with the delta-method standard error for independent
/// estimates.
pub fn ratio(a: f64, sa: f64, b: f64, sb: f64) -> (f64, f64) {
    let r = a / b;
    let rel = ((sa / a).powi(2) + (sb / b).powi(2)).sqrt();
    (r, (r * rel).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proportion_stderr() {
        let r = EstimatorResult::proportion(100, 100, 25, 1);
        assert_eq!(r.estimate, 0.25);
        assert!((r.stderr - (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn mean_stderr_matches_direct() {
        let xs = [3u64, 5, 7, 11];
        let sum: u64 = xs.iter().sum();
        let sq: u128 = xs.iter().map(|&x| (x * x) as u128).sum();
        let r = EstimatorResult::mean(10, 4, sum, sq, 0);
        let m = 6.5;
        let var = xs.iter().map(|&x| (x as f64 - m).powi(2)).sum::<f64>() / 3.0;
        assert!((r.estimate - m).abs() < 1e-12);
        assert!((r.stderr - (var / 4.0).sqrt()).abs() < 1e-12);
        assert_eq!(r.acceptance_rate(), 0.4);
    }
}
