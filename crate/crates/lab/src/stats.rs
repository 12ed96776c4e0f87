//! Binomial confidence intervals.

use statrs::distribution::{ContinuousCDF, Normal};

/// Two-sided standard normal quantile for `confidence`.
pub fn z_for(confidence: f64) -> f64 {
    Normal::standard().inverse_cdf(1.0 - (1.0 - confidence) / 2.0)
}

/// Wilson score interval for `failures` out of `shots`.
///
/// The ends are pinned to 0 and 1 when there are no failures or no
/// successes, and the interval always contains the point estimate.
pub fn wilson_interval(failures: u64, shots: u64, confidence: f64) -> (f64, f64) {
    assert!(failures <= shots, "failures exceed shots");
    if shots == 0 {
        return (0.0, 1.0);
    }
    let n = shots as f64;
    let phat = failures as f64 / n;
    let z = z_for(confidence);
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if failures == 0 { 0.0 } else { (centre - half).clamp(0.0, phat) };
    let hi = if failures == shots { 1.0 } else { (centre + half).clamp(phat, 1.0) };
    (lo, hi)
}
