//! The invariant (Haar) measure on SU(N) in Euler coordinates: closed-form
//! density, group volumes, and Haar-uniform sampling.
//!
//! With N = n−1, the base-space density at the top recursion level is
//!
//!   2 cos φ_N sin^{2N−1} φ_N ∏_{a=1}^{N−1} sin φ_a cos^{2a−1} φ_a
//!
//! (θ-independent), and the full group density is the product of that
//! factor over all recursion levels, one fiber Jacobian 1/ε_{m+1} per
//! level, and the terminal SU(2) density sin 2θ. The SU(2) factor is the
//! recursion base, pinned by Vol(SU(2)) = 2π².

use crate::algebra::epsilon;
use crate::error::{Error, Result};
use crate::group::{
    base_offset, coordinate_layout, EulerCoordinates, Slot, SlotKind, SpecialUnitary,
};
use crate::linalg::{C64, CMatrix, ONE};
use nalgebra::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Monte Carlo integral result. For a fixed (seed, samples, n) the mean
/// is reproducible bit-for-bit, independent of thread count.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Samples per parallel chunk; part of the determinism contract (chunk i
/// draws from ChaCha stream i of the seed).
const MC_CHUNK: u64 = 1 << 16;

/// Top-level base density: 2 cos φ_N sin^{2N−1} φ_N ∏ sin φ_a cos^{2a−1} φ_a.
///
/// θ-independent; the θ list is accepted only to mirror the coordinate
/// split and is length-checked, never read.
pub fn base_density(n: usize, thetas: &[f64], phis: &[f64]) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "base density needs n >= 3 (N = n-1 >= 2), got {n}"
        )));
    }
    let nn = n - 1;
    if thetas.len() != nn || phis.len() != nn {
        return Err(Error::Shape(format!(
            "expected {nn} thetas and {nn} phis, got {} and {}",
            thetas.len(),
            phis.len()
        )));
    }
    Ok(base_density_level(nn, |a| phis[a - 1]))
}

/// Density factor contributed by recursion level m ≥ 2, with φ_a supplied
/// by the closure (1-based a ≤ m).
fn base_density_level(m: usize, phi: impl Fn(usize) -> f64) -> f64 {
    let top = phi(m);
    let mut value = 2.0 * top.cos() * top.sin().powi(2 * m as i32 - 1);
    for a in 1..m {
        let p = phi(a);
        value *= p.sin() * p.cos().powi(2 * a as i32 - 1);
    }
    value
}

/// Full group density with respect to the flat coordinate volume element:
/// the product of every level's base density, the fiber Jacobians
/// ∏ 1/ε_{m+1}, and the terminal sin 2θ.
pub fn full_density(coords: &EulerCoordinates) -> Result<f64> {
    Ok(full_density_flat(coords.n(), coords.angles()))
}

pub(crate) fn full_density_flat(n: usize, angles: &[f64]) -> f64 {
    let phi = |m: usize, a: usize| angles[base_offset(n, m) + 2 * a - 1];
    // terminal SU(2): sin 2θ with θ the level-1 φ slot
    let mut density = (2.0 * phi(1, 1)).sin();
    for m in 2..n {
        let level = base_density_level(m, |a| phi(m, a));
        density *= level / epsilon(m + 1).expect("m+1 >= 3");
    }
    density
}

/// Closed-form Vol(SU(n)) from the recursion
/// Vol(SU(k+1)) = Vol(SU(k)) · 2 π^{k+1}/k! · √((k+1)/(2k)),
/// base Vol(SU(2)) = 2π². Accumulated in log space so large n cannot
/// overflow intermediate factors.
pub fn volume_closed_form(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("group volume needs n >= 2, got {n}")));
    }
    let mut ln_v = (2.0 * PI * PI).ln();
    let mut ln_fact = 0.0; // ln k!
    for k in 2..n {
        let kf = k as f64;
        ln_fact += kf.ln();
        ln_v += 2f64.ln() + (kf + 1.0) * PI.ln() - ln_fact
            + 0.5 * ((kf + 1.0) / (2.0 * kf)).ln();
    }
    Ok(ln_v.exp())
}

/// Vol(U(k)) through the fibration U(k) = [SU(k)×U(1)]/Z_k: the fiber
/// phase ω ranges over [0, 2π/k] with Jacobian 1/ε_{k+1}.
pub fn unitary_group_volume(k: usize) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain("U(k) volume needs k >= 1".to_string()));
    }
    let su = if k == 1 { 1.0 } else { volume_closed_form(k)? };
    Ok(su * (2.0 * PI / k as f64) / epsilon(k + 1)?)
}

/// Volume of the canonical coordinate range box for SU(n).
pub fn range_box_volume(n: usize) -> Result<f64> {
    let layout = coordinate_layout(n)?;
    Ok(layout.slots().iter().map(|s| s.hi - s.lo).product())
}

fn monte_carlo_over_box(
    slots: &[Slot],
    samples: u64,
    seed: u64,
    density: impl Fn(&[f64]) -> f64 + Sync,
) -> Result<VolumeEstimate> {
    if samples == 0 {
        return Err(Error::Domain("Monte Carlo needs samples >= 1".to_string()));
    }
    let box_volume: f64 = slots.iter().map(|s| s.hi - s.lo).product();
    let chunks = samples.div_ceil(MC_CHUNK);
    let partials: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let count = MC_CHUNK.min(samples - chunk * MC_CHUNK);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            let mut point = vec![0.0; slots.len()];
            for _ in 0..count {
                for (x, s) in point.iter_mut().zip(slots) {
                    *x = s.lo + (s.hi - s.lo) * rng.gen::<f64>();
                }
                let d = density(&point);
                sum += d;
                sum_sq += d * d;
            }
            (sum, sum_sq)
        })
        .collect();
    // reduce in chunk-index order: the result is then a function of
    // (seed, samples) only, not of the thread schedule
    let (sum, sum_sq) = partials
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let nf = samples as f64;
    let mean_density = sum / nf;
    let stderr = if samples > 1 {
        let var = ((sum_sq - nf * mean_density * mean_density) / (nf - 1.0)).max(0.0);
        (var / nf).sqrt() * box_volume
    } else {
        0.0
    };
    Ok(VolumeEstimate {
        mean: mean_density * box_volume,
        stderr,
        samples,
        seed,
    })
}

/// Monte Carlo estimate of Vol(SU(n)): uniform draws over the canonical
/// range box, averaging [`full_density`].
pub fn volume_monte_carlo(n: usize, samples: u64, seed: u64) -> Result<VolumeEstimate> {
    let layout = coordinate_layout(n)?;
    monte_carlo_over_box(layout.slots(), samples, seed, |point| {
        full_density_flat(n, point)
    })
}

/// Monte Carlo integral of the top-level base density over its 2N-dim
/// range box; converges to π^N/N!.
pub fn base_volume_monte_carlo(n: usize, samples: u64, seed: u64) -> Result<VolumeEstimate> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "base volume needs n >= 3, got {n}"
        )));
    }
    let layout = coordinate_layout(n)?;
    let nn = n - 1;
    let top: Vec<Slot> = layout.slots()[..2 * nn].to_vec();
    monte_carlo_over_box(&top, samples, seed, |point| {
        base_density_level(nn, |a| point[2 * a - 1])
    })
}

/// Analytic CDF of a slot's Haar marginal on its canonical range.
pub fn marginal_cdf(slot: &Slot, x: f64) -> f64 {
    if x <= slot.lo {
        return 0.0;
    }
    if x >= slot.hi {
        return 1.0;
    }
    match slot.kind {
        SlotKind::Theta { .. } | SlotKind::Omega { .. } => (x - slot.lo) / (slot.hi - slot.lo),
        SlotKind::Phi { level, a } => {
            if a == level {
                x.sin().powi(2 * level as i32)
            } else {
                1.0 - x.cos().powi(2 * a as i32)
            }
        }
    }
}

/// Inverse-CDF draw for one slot from a uniform u ∈ [0, 1].
pub(crate) fn haar_slot_draw(slot: &Slot, u: f64) -> f64 {
    match slot.kind {
        SlotKind::Theta { .. } | SlotKind::Omega { .. } => slot.lo + (slot.hi - slot.lo) * u,
        SlotKind::Phi { level, a } => {
            if a == level {
                if level == 1 {
                    // terminal SU(2) angle: density sin 2θ
                    0.5 * (1.0 - 2.0 * u).acos()
                } else {
                    // density ∝ cos φ sin^{2m−1} φ
                    u.powf(1.0 / (2.0 * level as f64)).asin()
                }
            } else {
                // density ∝ sin φ cos^{2a−1} φ
                (1.0 - u).powf(1.0 / (2.0 * a as f64)).acos()
            }
        }
    }
}

/// Draws Haar-distributed Euler coordinates: every angle comes from its
/// factorized marginal, one uniform variate per slot in layout order, so
/// a fixed RNG state yields a fixed coordinate stream.
pub fn sample_haar<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<EulerCoordinates> {
    let layout = coordinate_layout(n)?;
    let angles = layout
        .slots()
        .iter()
        .map(|slot| haar_slot_draw(slot, rng.gen::<f64>()))
        .collect();
    EulerCoordinates::new(n, angles)
}

/// Independent Haar oracle: a Ginibre matrix is QR-factorized, the R
/// diagonal phases are absorbed into Q (making the factorization unique
/// and Q Haar-distributed on U(n)), and a global n-th root of det Q
/// brings the result into SU(n).
pub fn qr_haar_oracle<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SpecialUnitary> {
    if n < 2 {
        return Err(Error::Domain(format!("SU(n) requires n >= 2, got {n}")));
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let entries: Vec<C64> = (0..n * n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(re * inv_sqrt2, im * inv_sqrt2)
        })
        .collect();
    let g = CMatrix::from_vec(n, n, entries);
    let qr = g.qr();
    let r = qr.r();
    let mut u = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for i in 0..n {
            u[(i, j)] *= phase;
        }
    }
    let det = u.determinant();
    let fix = Complex::from_polar(1.0, -det.arg() / n as f64);
    Ok(SpecialUnitary::new_unchecked(u.map(|z| z * fix)))
}
