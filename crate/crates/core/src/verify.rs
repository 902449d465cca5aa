//! Named invariant suites: each runs a batch of checks for one subsystem
//! and reports observed statistics against fixed thresholds. The CLI
//! `verify` subcommand prints these as a table and exits nonzero when any
//! check fails.

use crate::algebra::{build_basis, verify_identities};
use crate::error::{Error, Result};
use crate::geometry::{
    verify_metric_equality, vielbein, vielbein_det_closed_form, x_form, DEFAULT_STEP,
};
use crate::group::{build_element, coordinate_layout, EulerCoordinates, SlotKind};
use crate::measure::{
    base_volume_monte_carlo, marginal_cdf, qr_haar_oracle, sample_haar, unitary_group_volume,
    volume_closed_form, volume_monte_carlo,
};
use crate::stats::{
    chi2_critical_p99, chi2_two_sample, eigenphase_spacings, histogram, ks_critical,
    ks_statistic, mean_stderr,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// The invariant suites exposed by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Commutators,
    Measure,
    Metric,
    Haar,
    Volume,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "commutators" => Ok(Suite::Commutators),
            "measure" => Ok(Suite::Measure),
            "metric" => Ok(Suite::Metric),
            "haar" => Ok(Suite::Haar),
            "volume" => Ok(Suite::Volume),
            other => Err(Error::Domain(format!("unknown suite '{other}'"))),
        }
    }
}

/// Knobs shared by the suites; only the ones a suite uses matter.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub points: usize,
}

impl SuiteConfig {
    pub fn new(n: usize) -> Self {
        Self { n, samples: 100_000, seed: 0, points: 100 }
    }
}

/// One named check: passes when `observed <= threshold`.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub observed: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: impl Into<String>, observed: f64, threshold: f64) -> Self {
        let passed = observed <= threshold && observed.is_finite();
        Self { name: name.into(), observed, threshold, passed }
    }
}

/// Margin (radians) keeping random test points away from the degenerate
/// φ boundaries.
pub const INTERIOR_MARGIN: f64 = 0.05;

/// Random coordinates with φ slots kept `margin` inside their ranges.
pub fn random_interior_point(
    n: usize,
    rng: &mut impl Rng,
    margin: f64,
) -> Result<EulerCoordinates> {
    let layout = coordinate_layout(n)?;
    let angles = layout
        .slots()
        .iter()
        .map(|s| {
            let (lo, hi) = match s.kind {
                SlotKind::Phi { .. } => (s.lo + margin, s.hi - margin),
                _ => (s.lo + 1e-3, s.hi - 1e-3),
            };
            lo + (hi - lo) * rng.gen::<f64>()
        })
        .collect();
    EulerCoordinates::new(n, angles)
}

/// Runs a suite and returns its checks.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    match suite {
        Suite::Commutators => run_commutators(config),
        Suite::Measure => run_measure(config),
        Suite::Metric => run_metric(config),
        Suite::Haar => run_haar(config),
        Suite::Volume => run_volume(config),
    }
}

fn run_commutators(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let report = verify_identities(config.n)?;
    Ok(report
        .checks
        .into_iter()
        .map(|c| CheckResult::new(c.name, c.max_deviation, 1e-12))
        .collect())
}

fn run_measure(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let n = config.n;
    if n < 3 {
        return Err(Error::Domain(format!(
            "measure suite needs n >= 3, got {n}"
        )));
    }
    let basis = build_basis(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut worst = 0.0f64;
    for _ in 0..config.points {
        let coords = random_interior_point(n, &mut rng, INTERIOR_MARGIN)?;
        let det = vielbein(&basis, &coords, DEFAULT_STEP)?.det();
        let closed = vielbein_det_closed_form(&coords)?;
        worst = worst.max((det / closed - 1.0).abs());
    }
    let mut checks = vec![CheckResult::new("vielbein_det_rel_error", worst, 1e-6)];

    let nn = n - 1;
    let est = base_volume_monte_carlo(n, config.samples, config.seed)?;
    let exact = PI.powi(nn as i32) / (1..=nn).map(|k| k as f64).product::<f64>();
    let z = (est.mean - exact).abs() / est.stderr;
    checks.push(CheckResult::new("base_volume_mc_z", z, 3.0));
    Ok(checks)
}

fn run_metric(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let n = config.n;
    let basis = build_basis(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut worst = 0.0f64;
    for _ in 0..config.points {
        let coords = random_interior_point(n, &mut rng, INTERIOR_MARGIN)?;
        worst = worst.max(verify_metric_equality(&basis, &coords, DEFAULT_STEP)?);
    }
    let mut checks = vec![CheckResult::new("metric_equality_max_dev", worst, 1e-6)];

    if n >= 3 {
        let sub_basis = build_basis(n - 1)?;
        let layout = coordinate_layout(n)?;
        let sub_layout = coordinate_layout(n - 1)?;
        let mut worst = 0.0f64;
        for _ in 0..config.points.min(20) {
            let coords = random_interior_point(n, &mut rng, INTERIOR_MARGIN)?;
            let x = x_form(&basis, &coords, DEFAULT_STEP)?;
            let mut sub_angles = vec![0.0; (n - 1) * (n - 1) - 1];
            for a in 1..n - 1 {
                sub_angles[sub_layout.theta_index(n - 2, a)] =
                    coords.angles()[layout.theta_index(n - 1, a)];
                sub_angles[sub_layout.phi_index(n - 2, a)] =
                    coords.angles()[layout.phi_index(n - 1, a)];
            }
            let sub_coords = EulerCoordinates::new(n - 1, sub_angles)?;
            let x_sub = x_form(&sub_basis, &sub_coords, DEFAULT_STEP)?;
            let c2 = coords.phi(n - 1, n - 1).cos().powi(2);
            for c in 0..2 * (n - 1) {
                let expected = if c < 2 * (n - 2) {
                    c2 * x_sub[c]
                } else if c == 2 * (n - 2) {
                    c2
                } else {
                    0.0
                };
                worst = worst.max((x[c] - expected).abs());
            }
        }
        checks.push(CheckResult::new("x_form_recursion_residual", worst, 1e-8));
    }
    Ok(checks)
}

fn run_haar(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let n = config.n;
    let samples = config.samples as usize;
    if samples < 100 {
        return Err(Error::Domain("haar suite needs at least 100 samples".into()));
    }
    let basis = build_basis(n)?;
    let layout = coordinate_layout(n)?;

    let mut euler_rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut oracle_rng = ChaCha8Rng::seed_from_u64(config.seed);
    oracle_rng.set_stream(1);

    let mut columns: Vec<Vec<f64>> = vec![Vec::with_capacity(samples); layout.len()];
    let mut trace_sq_euler = Vec::with_capacity(samples);
    let mut trace_sq_oracle = Vec::with_capacity(samples);
    let mut spacings_euler = Vec::with_capacity(samples * n);
    let mut spacings_oracle = Vec::with_capacity(samples * n);
    for _ in 0..samples {
        let coords = sample_haar(n, &mut euler_rng)?;
        for (col, &x) in columns.iter_mut().zip(coords.angles()) {
            col.push(x);
        }
        let u = build_element(&basis, &coords)?;
        let tr: crate::linalg::C64 = (0..n).map(|k| u.matrix()[(k, k)]).sum();
        trace_sq_euler.push(tr.norm_sqr());
        spacings_euler.extend(eigenphase_spacings(u.matrix()));

        let v = qr_haar_oracle(n, &mut oracle_rng)?;
        let tr: crate::linalg::C64 = (0..n).map(|k| v.matrix()[(k, k)]).sum();
        trace_sq_oracle.push(tr.norm_sqr());
        spacings_oracle.extend(eigenphase_spacings(v.matrix()));
    }

    let mut checks = Vec::new();
    for (slot, col) in layout.slots().iter().zip(columns.iter_mut()) {
        let d = ks_statistic(col, |x| marginal_cdf(slot, x));
        checks.push(CheckResult::new(
            format!("ks_{}", slot.name),
            d,
            ks_critical(0.01, samples),
        ));
    }

    let (m1, se1) = mean_stderr(&trace_sq_euler);
    let (m2, se2) = mean_stderr(&trace_sq_oracle);
    let z = (m1 - m2).abs() / (se1 * se1 + se2 * se2).sqrt();
    checks.push(CheckResult::new("avg_trace_sq_z", z, 3.0));

    let bins = 20;
    let h1 = histogram(&spacings_euler, 0.0, 2.0 * PI, bins);
    let h2 = histogram(&spacings_oracle, 0.0, 2.0 * PI, bins);
    let (stat, dof) = chi2_two_sample(&h1, &h2);
    checks.push(CheckResult::new(
        "eigenphase_spacing_chi2",
        stat,
        chi2_critical_p99(dof),
    ));
    Ok(checks)
}

fn run_volume(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let n = config.n;
    let est = volume_monte_carlo(n, config.samples, config.seed)?;
    let closed = volume_closed_form(n)?;
    let z = (est.mean - closed).abs() / est.stderr;
    let mut checks = vec![CheckResult::new("volume_mc_z", z, 3.0)];

    let nn = n - 1;
    let base = PI.powi(nn as i32) / (1..=nn).map(|k| k as f64).product::<f64>();
    let rel = (volume_closed_form(n)? / (unitary_group_volume(nn)? * base) - 1.0).abs();
    checks.push(CheckResult::new("fibration_volume_identity_rel", rel, 1e-10));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for (s, v) in [
            ("commutators", Suite::Commutators),
            ("measure", Suite::Measure),
            ("metric", Suite::Metric),
            ("haar", Suite::Haar),
            ("volume", Suite::Volume),
        ] {
            assert_eq!(s.parse::<Suite>().unwrap(), v);
        }
        assert!("unknown".parse::<Suite>().is_err());
    }

    #[test]
    fn commutator_suite_passes() {
        let checks = run_suite(Suite::Commutators, &SuiteConfig::new(4)).unwrap();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }

    #[test]
    fn measure_suite_passes_small() {
        let mut config = SuiteConfig::new(3);
        config.points = 20;
        config.samples = 50_000;
        let checks = run_suite(Suite::Measure, &config).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }

    #[test]
    fn metric_suite_passes_small() {
        let mut config = SuiteConfig::new(3);
        config.points = 10;
        let checks = run_suite(Suite::Metric, &config).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }

    #[test]
    fn volume_suite_passes_small() {
        let mut config = SuiteConfig::new(2);
        config.samples = 100_000;
        let checks = run_suite(Suite::Volume, &config).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }

    #[test]
    fn haar_suite_passes_small() {
        let mut config = SuiteConfig::new(2);
        config.samples = 5_000;
        let checks = run_suite(Suite::Haar, &config).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }
}
