//! Acceptance suite: every release-gating check with its tolerance and
//! runtime budget pinned in code. Each test prints one PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::{Duration, Instant};
use sun_euler::algebra::{build_basis, verify_identities};
use sun_euler::geometry::{
    verify_metric_equality, vielbein, vielbein_det_closed_form, x_form, DEFAULT_STEP,
};
use sun_euler::group::{
    build_element, coordinate_layout, tangent_rank, EulerCoordinates,
};
use sun_euler::linalg::{max_diff, trace_product, CMatrix, ONE, ZERO};
use sun_euler::measure::{
    base_volume_monte_carlo, volume_closed_form, volume_monte_carlo,
};
use sun_euler::verify::{random_interior_point, run_suite, Suite, SuiteConfig, INTERIOR_MARGIN};

fn run_criterion(name: &str, budget: Duration, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    match result {
        Ok(()) => {
            println!("PASS {name} ({elapsed:.2?})");
            assert!(
                elapsed < budget,
                "{name} exceeded its {budget:?} budget: {elapsed:?}"
            );
        }
        Err(msg) => {
            println!("FAIL {name}: {msg}");
            panic!("{name}: {msg}");
        }
    }
}

#[test]
fn c1_basis_exactness() {
    run_criterion("basis exactness (n = 2..8)", Duration::from_secs(1), || {
        for n in 2..=8usize {
            let basis = build_basis(n).map_err(|e| e.to_string())?;
            let mut dev = 0.0f64;
            for (i, gi) in basis.generators().iter().enumerate() {
                for (j, gj) in basis.generators().iter().enumerate() {
                    let expected = if i == j { 2.0 } else { 0.0 };
                    let t = trace_product(gi, gj);
                    dev = dev.max((t - nalgebra::Complex::new(expected, 0.0)).norm());
                }
            }
            if dev > 1e-12 {
                return Err(format!("n={n}: orthonormality deviation {dev:e}"));
            }
        }
        // n = 2 must reproduce the Pauli matrices exactly
        let basis = build_basis(2).map_err(|e| e.to_string())?;
        let paulis = [
            CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
            CMatrix::from_row_slice(
                2,
                2,
                &[
                    ZERO,
                    nalgebra::Complex::new(0.0, -1.0),
                    nalgebra::Complex::new(0.0, 1.0),
                    ZERO,
                ],
            ),
            CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        ];
        for (g, p) in basis.generators().iter().zip(&paulis) {
            if max_diff(g, p) != 0.0 {
                return Err("su(2) basis is not exactly the Pauli matrices".to_string());
            }
        }
        Ok(())
    });
}

#[test]
fn c2_structure_identity_suite() {
    run_criterion(
        "structure identities (n = 3..8)",
        Duration::from_secs(10),
        || {
            for n in 3..=8usize {
                let report = verify_identities(n).map_err(|e| e.to_string())?;
                for c in &report.checks {
                    if c.max_deviation > 1e-12 {
                        return Err(format!("n={n} {}: {:e}", c.name, c.max_deviation));
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn c3_group_element_validity() {
    run_criterion(
        "group element validity and tangent rank",
        Duration::from_secs(30),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for n in 2..=6usize {
                let basis = build_basis(n).map_err(|e| e.to_string())?;
                let layout = coordinate_layout(n).map_err(|e| e.to_string())?;
                for i in 0..500 {
                    let angles: Vec<f64> = layout
                        .slots()
                        .iter()
                        .map(|s| s.lo + (s.hi - s.lo) * rng.gen::<f64>())
                        .collect();
                    let coords =
                        EulerCoordinates::new(n, angles).map_err(|e| e.to_string())?;
                    let g = build_element(&basis, &coords).map_err(|e| e.to_string())?;
                    let u = g.unitarity_defect();
                    let d = g.determinant_defect();
                    if u > 1e-10 || d > 1e-10 {
                        return Err(format!(
                            "n={n} sample {i}: unitarity {u:e}, det {d:e}"
                        ));
                    }
                }
            }
            for n in 2..=5usize {
                let basis = build_basis(n).map_err(|e| e.to_string())?;
                for i in 0..20 {
                    let coords = random_interior_point(n, &mut rng, INTERIOR_MARGIN)
                        .map_err(|e| e.to_string())?;
                    let rank =
                        tangent_rank(&basis, &coords, 1e-5).map_err(|e| e.to_string())?;
                    if rank != n * n - 1 {
                        return Err(format!(
                            "n={n} point {i}: tangent rank {rank} != {}",
                            n * n - 1
                        ));
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn c4_measure_formula_equivalence() {
    run_criterion(
        "vielbein determinant matches the measure closed form",
        Duration::from_secs(60),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for n in 3..=5usize {
                let basis = build_basis(n).map_err(|e| e.to_string())?;
                for i in 0..100 {
                    let coords = random_interior_point(n, &mut rng, INTERIOR_MARGIN)
                        .map_err(|e| e.to_string())?;
                    let det = vielbein(&basis, &coords, DEFAULT_STEP)
                        .map_err(|e| e.to_string())?
                        .det();
                    let closed =
                        vielbein_det_closed_form(&coords).map_err(|e| e.to_string())?;
                    let rel = (det / closed - 1.0).abs();
                    if rel > 1e-6 {
                        return Err(format!("n={n} point {i}: relative error {rel:e}"));
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn c5_base_space_volume() {
    run_criterion(
        "base density integrates to pi^N/N!",
        Duration::from_secs(60),
        || {
            for n in 3..=4usize {
                let nn = n - 1;
                let est = base_volume_monte_carlo(n, 1_000_000, 0)
                    .map_err(|e| e.to_string())?;
                let exact =
                    PI.powi(nn as i32) / (1..=nn).map(|k| k as f64).product::<f64>();
                let z = (est.mean - exact).abs() / est.stderr;
                if z > 3.0 {
                    return Err(format!(
                        "n={n}: MC {} vs {exact} is {z:.2} sigma",
                        est.mean
                    ));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn c6_total_group_volume() {
    run_criterion(
        "Monte Carlo group volume matches the closed-form recursion",
        Duration::from_secs(120),
        || {
            // the closed-form values themselves
            let v2 = volume_closed_form(2).map_err(|e| e.to_string())?;
            if (v2 / (2.0 * PI * PI) - 1.0).abs() > 1e-12 {
                return Err(format!("Vol(SU(2)) = {v2}, expected 2 pi^2"));
            }
            let v3 = volume_closed_form(3).map_err(|e| e.to_string())?;
            if (v3 / (3.0f64.sqrt() * PI.powi(5)) - 1.0).abs() > 1e-12 {
                return Err(format!("Vol(SU(3)) = {v3}, expected sqrt(3) pi^5"));
            }
            for n in 2..=4usize {
                let est =
                    volume_monte_carlo(n, 1_000_000, 0).map_err(|e| e.to_string())?;
                let closed = volume_closed_form(n).map_err(|e| e.to_string())?;
                let z = (est.mean - closed).abs() / est.stderr;
                if z > 3.0 {
                    return Err(format!(
                        "n={n}: MC {} vs closed {closed} is {z:.2} sigma",
                        est.mean
                    ));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn c7_haar_sampler_quality() {
    run_criterion(
        "Haar sampler marginals and two-sampler statistics",
        Duration::from_secs(120),
        || {
            for n in 2..=4usize {
                let config = SuiteConfig { n, samples: 100_000, seed: 0, points: 0 };
                let checks = run_suite(Suite::Haar, &config).map_err(|e| e.to_string())?;
                for c in &checks {
                    if !c.passed {
                        return Err(format!(
                            "n={n} {}: observed {:e} > threshold {:e}",
                            c.name, c.observed, c.threshold
                        ));
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn c8_base_metric_is_fubini_study() {
    run_criterion(
        "induced base metric equals the Fubini-Study metric",
        Duration::from_secs(120),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for n in 3..=6usize {
                let basis = build_basis(n).map_err(|e| e.to_string())?;
                for i in 0..100 {
                    let coords = random_interior_point(n, &mut rng, INTERIOR_MARGIN)
                        .map_err(|e| e.to_string())?;
                    let dev = verify_metric_equality(&basis, &coords, DEFAULT_STEP)
                        .map_err(|e| e.to_string())?;
                    if dev > 1e-6 {
                        return Err(format!("n={n} point {i}: deviation {dev:e}"));
                    }
                }
            }
            // X_N recursion residual
            for m in 3..=5usize {
                let basis = build_basis(m).map_err(|e| e.to_string())?;
                let sub_basis = build_basis(m - 1).map_err(|e| e.to_string())?;
                let layout = coordinate_layout(m).map_err(|e| e.to_string())?;
                let sub_layout = coordinate_layout(m - 1).map_err(|e| e.to_string())?;
                for i in 0..20 {
                    let coords = random_interior_point(m, &mut rng, INTERIOR_MARGIN)
                        .map_err(|e| e.to_string())?;
                    let x = x_form(&basis, &coords, DEFAULT_STEP)
                        .map_err(|e| e.to_string())?;
                    let mut sub_angles = vec![0.0; (m - 1) * (m - 1) - 1];
                    for a in 1..m - 1 {
                        sub_angles[sub_layout.theta_index(m - 2, a)] =
                            coords.angles()[layout.theta_index(m - 1, a)];
                        sub_angles[sub_layout.phi_index(m - 2, a)] =
                            coords.angles()[layout.phi_index(m - 1, a)];
                    }
                    let sub_coords = EulerCoordinates::new(m - 1, sub_angles)
                        .map_err(|e| e.to_string())?;
                    let x_sub = x_form(&sub_basis, &sub_coords, DEFAULT_STEP)
                        .map_err(|e| e.to_string())?;
                    let c2 = coords.phi(m - 1, m - 1).cos().powi(2);
                    for c in 0..2 * (m - 1) {
                        let expected = if c < 2 * (m - 2) {
                            c2 * x_sub[c]
                        } else if c == 2 * (m - 2) {
                            c2
                        } else {
                            0.0
                        };
                        let resid = (x[c] - expected).abs();
                        if resid > 1e-8 {
                            return Err(format!(
                                "m={m} point {i} component {c}: residual {resid:e}"
                            ));
                        }
                    }
                }
            }
            Ok(())
        },
    );
}
