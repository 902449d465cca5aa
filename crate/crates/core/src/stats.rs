//! Statistical test helpers for the sampler-quality suites: one-sample
//! Kolmogorov–Smirnov against an analytic CDF, a two-sample χ² histogram
//! comparison, and eigenphase spacings of unitary matrices.

use crate::linalg::{eigenphases, CMatrix};
use std::f64::consts::PI;

/// Sample mean and standard error of the mean. A single sample reports
/// stderr 0 by convention.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    assert!(n > 0, "mean of empty sample");
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let ss: f64 = xs.iter().map(|x| (x - mean).powi(2)).sum();
    let var = ss / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// One-sample Kolmogorov–Smirnov statistic D_n = sup |F_emp − F| against
/// the analytic CDF. Sorts the input in place.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = samples.len();
    assert!(n > 0, "KS test on empty sample");
    samples.sort_by(f64::total_cmp);
    let nf = n as f64;
    let mut d = 0.0f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / nf).abs());
        d = d.max((f - (i + 1) as f64 / nf).abs());
    }
    d
}

/// Asymptotic critical value for the one-sample KS test:
/// D_crit = √(−ln(α/2)/2) / √n.
pub fn ks_critical(alpha: f64, n: usize) -> f64 {
    (-((alpha / 2.0).ln()) / 2.0).sqrt() / (n as f64).sqrt()
}

/// Equal-width histogram of `xs` over [lo, hi); values outside the range
/// are clamped into the edge bins.
pub fn histogram(xs: &[f64], lo: f64, hi: f64, bins: usize) -> Vec<u64> {
    assert!(bins > 0 && hi > lo);
    let mut counts = vec![0u64; bins];
    let w = (hi - lo) / bins as f64;
    for &x in xs {
        let b = (((x - lo) / w).floor() as isize).clamp(0, bins as isize - 1) as usize;
        counts[b] += 1;
    }
    counts
}

/// Two-sample χ² statistic over matched histograms. Bins empty in both
/// samples are skipped. Returns (statistic, degrees of freedom).
pub fn chi2_two_sample(a: &[u64], b: &[u64]) -> (f64, usize) {
    assert_eq!(a.len(), b.len());
    let na: f64 = a.iter().sum::<u64>() as f64;
    let nb: f64 = b.iter().sum::<u64>() as f64;
    let k1 = (nb / na).sqrt();
    let k2 = (na / nb).sqrt();
    let mut stat = 0.0;
    let mut used = 0usize;
    for (&x, &y) in a.iter().zip(b.iter()) {
        let (x, y) = (x as f64, y as f64);
        if x + y == 0.0 {
            continue;
        }
        stat += (k1 * x - k2 * y).powi(2) / (x + y);
        used += 1;
    }
    (stat, used.saturating_sub(1))
}

/// Upper χ² quantile at significance α = 0.01 via the Wilson–Hilferty
/// approximation (relative error well below 1% for the dof used here).
pub fn chi2_critical_p99(dof: usize) -> f64 {
    // z_{0.99}, the standard normal 99% quantile
    const Z99: f64 = 2.326_347_874_040_840_8;
    let k = dof as f64;
    let t = 1.0 - 2.0 / (9.0 * k) + Z99 * (2.0 / (9.0 * k)).sqrt();
    k * t.powi(3)
}

/// Consecutive eigenvalue-angle spacings of a unitary matrix, including
/// the wrap-around gap; n spacings summing to 2π.
pub fn eigenphase_spacings(u: &CMatrix) -> Vec<f64> {
    let phases = eigenphases(u);
    let n = phases.len();
    let mut spacings = Vec::with_capacity(n);
    for i in 1..n {
        spacings.push(phases[i] - phases[i - 1]);
    }
    spacings.push(2.0 * PI - (phases[n - 1] - phases[0]));
    spacings
}
