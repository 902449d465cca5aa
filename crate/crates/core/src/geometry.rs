//! Geometry of the fibration: left-invariant currents, the base-space
//! vielbein, the induced base metric, and its identification with the
//! Fubini-Study metric on CP^N.
//!
//! The base point h(θ_a, φ_a) of SU(n) (N = n−1) lives over the 2N
//! coordinates X^{2j−1} = θ_j, X^{2j} = φ_j. The current
//! J_c = −i h⁻¹ ∂_c h is computed by central finite differences, the
//! vielbein rows are e^l_c = ½Tr(J_c λ_{N²+l−1}) for l = 1..2N, and the
//! induced base metric is G = EᵀE. Pulling the trigonometric Fubini-Study
//! metric back through the affine θ→ψ change of variables reproduces G;
//! [`verify_metric_equality`] measures the residual.

use crate::algebra::GellMannBasis;
use crate::error::{Error, Result};
use crate::group::{build_base_point, EulerCoordinates};
use crate::linalg::{half_trace_product, CMatrix};
use crate::measure::base_density;
use nalgebra::{Complex, DMatrix};
use std::f64::consts::PI;

/// Default finite-difference step on angles. O(h²) truncation at this
/// step balances double-precision rounding in the difference quotient.
pub const DEFAULT_STEP: f64 = 1e-5;

/// An algebra-valued one-form: for each base coordinate c the Hermitian
/// coefficient matrix J_c of dX^c.
#[derive(Debug, Clone)]
pub struct AlgebraValuedForm {
    components: Vec<CMatrix>,
    near_boundary: bool,
}

impl AlgebraValuedForm {
    /// Coefficient matrices in X order (θ₁, φ₁, …, θ_N, φ_N).
    pub fn components(&self) -> &[CMatrix] {
        &self.components
    }

    /// Set when some φ_a sits close enough to {0, π/2} that the frame
    /// degenerates within the finite-difference stencil.
    pub fn near_boundary(&self) -> bool {
        self.near_boundary
    }
}

/// The 2N×2N matrix of base one-form components: row l, column c holds
/// e^l_c = ½Tr(J_c λ_{N²+l−1}).
#[derive(Debug, Clone)]
pub struct VielbeinFrame {
    matrix: DMatrix<f64>,
}

impl VielbeinFrame {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Frame determinant in the measure orientation.
    ///
    /// The raw determinant of the component matrix (rows in λ-index order
    /// λ_{N²}, λ_{N²+1}, …) carries a constant extra parity (−1)^{N−1}
    /// relative to the measure density: reducing the antisymmetric-pair
    /// rows to base one-forms flips N−1 signs. The orientation is fixed
    /// here so that the determinant is positive on the interior of the
    /// range box and equals the closed-form density.
    pub fn det(&self) -> f64 {
        let nn = self.matrix.nrows() / 2;
        let parity = if (nn - 1) % 2 == 1 { -1.0 } else { 1.0 };
        parity * self.matrix.clone().lu().determinant()
    }
}

/// A point of CP^N in trigonometric coordinates (ξ, ω_μ, ψ_i) with
/// μ = 1..N−1, i = 1..N. The chart covers ξ ∈ (0, π/2), ω_μ ∈ (0, π/2);
/// the ψ_i are circle coordinates and may carry any real representative.
#[derive(Debug, Clone, PartialEq)]
pub struct FSPoint {
    pub xi: f64,
    pub omegas: Vec<f64>,
    pub psis: Vec<f64>,
}

impl FSPoint {
    /// Complex projective dimension N.
    pub fn complex_dim(&self) -> usize {
        self.psis.len()
    }

    /// Real coordinate dimension 2N, the size of the metric.
    pub fn dim(&self) -> usize {
        2 * self.psis.len()
    }
}

/// A real symmetric metric tensor at a point.
#[derive(Debug, Clone)]
pub struct MetricTensor {
    components: DMatrix<f64>,
}

impl MetricTensor {
    pub fn dim(&self) -> usize {
        self.components.nrows()
    }

    pub fn components(&self) -> &DMatrix<f64> {
        &self.components
    }

    /// Max |G − Gᵀ|.
    pub fn symmetry_defect(&self) -> f64 {
        let t = self.components.transpose();
        (&self.components - t).iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Smallest eigenvalue (PSD check).
    pub fn min_eigenvalue(&self) -> f64 {
        let sym = (&self.components + self.components.transpose()).scale(0.5);
        sym.symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }
}

fn check_step(step: f64) -> Result<()> {
    if step <= 0.0 || !step.is_finite() {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    Ok(())
}

/// J_c = −i h⁻¹ ∂h/∂X^c over the 2N base coordinates, by central
/// differences on the base point. Points where some φ_a sits within
/// 10·step of {0, π/2} are flagged (`near_boundary`), not rejected.
pub fn left_current(
    basis: &GellMannBasis,
    coords: &EulerCoordinates,
    step: f64,
) -> Result<AlgebraValuedForm> {
    check_step(step)?;
    let n = coords.n();
    let nn = n - 1;
    let h = build_base_point(basis, coords)?;
    let hinv = h.matrix().adjoint();
    let mut work = coords.clone();
    let mut components = Vec::with_capacity(2 * nn);
    for c in 0..2 * nn {
        let x0 = coords.angles()[c];
        work.angles_mut()[c] = x0 + step;
        let plus = build_base_point(basis, &work)?;
        work.angles_mut()[c] = x0 - step;
        let minus = build_base_point(basis, &work)?;
        work.angles_mut()[c] = x0;
        let deriv = (plus.matrix() - minus.matrix()).map(|z| z / (2.0 * step));
        components.push((&hinv * deriv).map(|z| z * Complex::new(0.0, -1.0)));
    }
    let margin = 10.0 * step;
    let near_boundary = (1..=nn).any(|a| {
        let p = coords.phi(nn, a);
        p.min(PI / 2.0 - p).abs() < margin
    });
    Ok(AlgebraValuedForm { components, near_boundary })
}

/// The vielbein E_{l,c} = ½Tr(J_c λ_{N²+l−1}), l = 1..2N.
pub fn vielbein(
    basis: &GellMannBasis,
    coords: &EulerCoordinates,
    step: f64,
) -> Result<VielbeinFrame> {
    let current = left_current(basis, coords, step)?;
    let n = coords.n();
    let nn = n - 1;
    let mut e = DMatrix::<f64>::zeros(2 * nn, 2 * nn);
    for (c, jc) in current.components().iter().enumerate() {
        for l in 1..=2 * nn {
            e[(l - 1, c)] = half_trace_product(jc, basis.generator(nn * nn + l - 1)).re;
        }
    }
    Ok(VielbeinFrame { matrix: e })
}

/// Induced base metric G = EᵀE over the 2N base coordinates.
pub fn base_metric(
    basis: &GellMannBasis,
    coords: &EulerCoordinates,
    step: f64,
) -> Result<MetricTensor> {
    let e = vielbein(basis, coords, step)?;
    let components = e.matrix().transpose() * e.matrix();
    Ok(MetricTensor { components })
}

/// Base metric with one step-halving Richardson refinement:
/// (4·G(h/2) − G(h))/3 cancels the leading O(h²) truncation term.
pub fn base_metric_refined(
    basis: &GellMannBasis,
    coords: &EulerCoordinates,
    step: f64,
) -> Result<MetricTensor> {
    let coarse = base_metric(basis, coords, step)?;
    let fine = base_metric(basis, coords, step / 2.0)?;
    let components = (fine.components.scale(4.0) - &coarse.components).scale(1.0 / 3.0);
    Ok(MetricTensor { components })
}

/// The positive-orthant sphere parametrization R^i(ω): R₁ = sin ω_{N−1},
/// R_k = sin ω_{N−k} ∏_{i=1}^{k−1} cos ω_{N−i}, R_N = ∏ cos ω_{N−i}.
/// Accepts N−1 angles and returns N components with Σ(R^i)² = 1.
pub fn r_vector(omegas: &[f64]) -> Vec<f64> {
    let nn = omegas.len() + 1;
    let mut r = Vec::with_capacity(nn);
    let mut cum = 1.0;
    for k in 0..nn - 1 {
        let w = omegas[omegas.len() - 1 - k];
        r.push(w.sin() * cum);
        cum *= w.cos();
    }
    r.push(cum);
    r
}

/// Analytic Jacobian ∂R^i/∂ω_μ, an N×(N−1) matrix.
pub fn r_jacobian(omegas: &[f64]) -> DMatrix<f64> {
    let nn = omegas.len() + 1;
    let mut jac = DMatrix::<f64>::zeros(nn, omegas.len());
    // R_{k+1} (0-based row k) depends on reversed angles rev[0..=k],
    // rev[i] = ω_{N−1−i}
    let rev = |i: usize| omegas[omegas.len() - 1 - i];
    for row in 0..nn {
        let active = if row < nn - 1 { row + 1 } else { nn - 1 };
        for (col, &_w) in omegas.iter().enumerate() {
            let i = omegas.len() - 1 - col; // reversed position of ω_{col+1}
            if i >= active {
                continue;
            }
            let mut d = 1.0;
            for p in 0..active {
                let w = rev(p);
                let is_sin_slot = row < nn - 1 && p == row;
                let factor = if p == i {
                    if is_sin_slot { w.cos() } else { -w.sin() }
                } else if is_sin_slot {
                    w.sin()
                } else {
                    w.cos()
                };
                d *= factor;
            }
            jac[(row, col)] = d;
        }
    }
    jac
}

/// Evaluates the trigonometric Fubini-Study metric at a point, in the
/// coordinate order (ξ, ω₁..ω_{N−1}, ψ₁..ψ_N):
///
///   ds² = dξ² + sin²ξ [ Σ dR^i dR^i + Σ (R^i)² dψ_i² ]
///         − sin⁴ξ [ Σ (R^i)² dψ_i ]².
pub fn fubini_study_metric(point: &FSPoint) -> Result<MetricTensor> {
    let nn = point.complex_dim();
    if nn < 1 || point.omegas.len() + 1 != nn {
        return Err(Error::Shape(format!(
            "FS point needs N psis and N-1 omegas, got {} and {}",
            point.psis.len(),
            point.omegas.len()
        )));
    }
    let s = point.xi.sin();
    let c = point.xi.cos();
    if s.abs() < 1e-9 || c.abs() < 1e-9 {
        return Err(Error::Boundary(format!(
            "degenerate point: xi = {} is at a chart boundary",
            point.xi
        )));
    }
    let s2 = s * s;
    let s4 = s2 * s2;
    let r = r_vector(&point.omegas);
    let jac = r_jacobian(&point.omegas);
    let dim = 2 * nn;
    let mut g = DMatrix::<f64>::zeros(dim, dim);
    g[(0, 0)] = 1.0;
    for mu in 0..nn - 1 {
        for nu in 0..nn - 1 {
            let mut dot = 0.0;
            for i in 0..nn {
                dot += jac[(i, mu)] * jac[(i, nu)];
            }
            g[(1 + mu, 1 + nu)] = s2 * dot;
        }
    }
    for i in 0..nn {
        let ri2 = r[i] * r[i];
        g[(nn + i, nn + i)] += s2 * ri2;
        for j in 0..nn {
            g[(nn + i, nn + j)] -= s4 * ri2 * r[j] * r[j];
        }
    }
    Ok(MetricTensor { components: g })
}

/// The constant matrix A with ψ = A·θ: the affine change of variables
/// θ̃_N = θ_N, θ_{N−k} = θ̃_{N−k} − θ̃_{N−k+1} (k = 1..N−3),
/// θ₁+θ₂ = θ̃₁−θ̃₃, θ₁−θ₂ = θ̃₃−θ̃₂, followed by ψ_i = θ̃_{N−i+1}.
/// For N = 2 only the pair relations apply (θ̃₃ ≡ 0).
pub fn theta_to_psi_matrix(nn: usize) -> Result<DMatrix<f64>> {
    if nn < 2 {
        return Err(Error::Domain(format!(
            "coordinate change needs N >= 2, got {nn}"
        )));
    }
    // rows of θ̃_j in terms of θ (1-based j)
    let mut tilde = DMatrix::<f64>::zeros(nn + 1, nn);
    for j in 3..=nn {
        for k in j..=nn {
            tilde[(j, k - 1)] = 1.0;
        }
    }
    // θ̃₁ = θ₁ + θ₂ + Σ_{k≥3} θ_k, θ̃₂ = −θ₁ + θ₂ + Σ_{k≥3} θ_k
    tilde[(1, 0)] = 1.0;
    tilde[(1, 1)] = 1.0;
    tilde[(2, 0)] = -1.0;
    tilde[(2, 1)] = 1.0;
    for k in 3..=nn {
        tilde[(1, k - 1)] = 1.0;
        tilde[(2, k - 1)] = 1.0;
    }
    let mut a = DMatrix::<f64>::zeros(nn, nn);
    for i in 1..=nn {
        let j = nn - i + 1; // ψ_i = θ̃_{N−i+1}
        for k in 0..nn {
            a[(i - 1, k)] = tilde[(j, k)];
        }
    }
    Ok(a)
}

/// Maps top-level Euler base coordinates to the Fubini-Study chart:
/// ξ = φ_N, ω_μ = φ_μ, ψ_i = θ̃_{N−i+1}. The ψ values are returned as
/// raw affine combinations (no 2π reduction) so the map inverts exactly.
pub fn coordinate_map(coords: &EulerCoordinates) -> Result<FSPoint> {
    let n = coords.n();
    if n < 3 {
        return Err(Error::Domain(format!(
            "coordinate map needs n >= 3 (N >= 2), got {n}"
        )));
    }
    let nn = n - 1;
    let thetas: Vec<f64> = (1..=nn).map(|a| coords.theta(nn, a)).collect();
    let phis: Vec<f64> = (1..=nn).map(|a| coords.phi(nn, a)).collect();
    let a = theta_to_psi_matrix(nn)?;
    let theta_vec = nalgebra::DVector::from_column_slice(&thetas);
    let psi_vec = &a * theta_vec;
    Ok(FSPoint {
        xi: phis[nn - 1],
        omegas: phis[..nn - 1].to_vec(),
        psis: psi_vec.iter().cloned().collect(),
    })
}

/// Inverse of [`coordinate_map`]: recovers (θ_a, φ_a) from an FS point.
pub fn coordinate_map_inverse(point: &FSPoint) -> Result<(Vec<f64>, Vec<f64>)> {
    let nn = point.complex_dim();
    if nn < 2 || point.omegas.len() + 1 != nn {
        return Err(Error::Shape(format!(
            "FS point needs N >= 2 psis and N-1 omegas, got {} and {}",
            point.psis.len(),
            point.omegas.len()
        )));
    }
    // θ̃_j = ψ_{N−j+1}
    let tilde = |j: usize| point.psis[nn - j];
    let mut thetas = vec![0.0; nn];
    thetas[nn - 1] = tilde(nn);
    for j in 3..nn {
        thetas[j - 1] = tilde(j) - tilde(j + 1);
    }
    let t3 = if nn >= 3 { tilde(3) } else { 0.0 };
    thetas[0] = (tilde(1) - tilde(2)) / 2.0;
    thetas[1] = (tilde(1) + tilde(2)) / 2.0 - t3;
    let mut phis = point.omegas.clone();
    phis.push(point.xi);
    Ok((thetas, phis))
}

/// Full Jacobian of (θ_a, φ_a) → (ξ, ω_μ, ψ_i): rows FS coordinates,
/// columns X coordinates (θ₁, φ₁, …, θ_N, φ_N).
pub fn fs_pullback_jacobian(n: usize) -> Result<DMatrix<f64>> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "pullback Jacobian needs n >= 3, got {n}"
        )));
    }
    let nn = n - 1;
    let a = theta_to_psi_matrix(nn)?;
    let mut m = DMatrix::<f64>::zeros(2 * nn, 2 * nn);
    m[(0, 2 * nn - 1)] = 1.0; // ξ = φ_N
    for mu in 1..nn {
        m[(mu, 2 * mu - 1)] = 1.0; // ω_μ = φ_μ
    }
    for i in 0..nn {
        for j in 0..nn {
            m[(nn + i, 2 * j)] = a[(i, j)]; // ψ rows against θ columns
        }
    }
    Ok(m)
}

/// The one-form X_m = ½ Σ_{a=2}^{m} ε_a Tr[J_{h_m} λ_{a²−1}] as
/// components over the 2(m−1) base coordinates, with m = coords.n().
/// For m = 2 this reduces to cos(2φ₁) dθ₁, the recursion base.
pub fn x_form(
    basis: &GellMannBasis,
    coords: &EulerCoordinates,
    step: f64,
) -> Result<Vec<f64>> {
    let m = coords.n();
    let current = left_current(basis, coords, step)?;
    let mut out = Vec::with_capacity(2 * (m - 1));
    for jc in current.components() {
        let mut v = 0.0;
        for a in 2..=m {
            v += 0.5
                * basis.epsilon(a)
                * crate::linalg::trace_product(jc, basis.generator(a * a - 1)).re;
        }
        out.push(v);
    }
    Ok(out)
}

/// The analytic reference for the induced base metric: the Fubini-Study
/// metric pulled back through the coordinate change for n ≥ 3, and the
/// round sphere of radius ½ (ds² = dθ² + sin²(2θ) dφ² in the (φ, θ) base
/// coordinates) for n = 2.
pub fn reference_base_metric(coords: &EulerCoordinates) -> Result<MetricTensor> {
    let n = coords.n();
    if n == 2 {
        let theta = coords.phi(1, 1);
        let mut expected = DMatrix::<f64>::zeros(2, 2);
        expected[(0, 0)] = (2.0 * theta).sin().powi(2);
        expected[(1, 1)] = 1.0;
        return Ok(MetricTensor { components: expected });
    }
    let fs_point = coordinate_map(coords)?;
    let g_fs = fubini_study_metric(&fs_point)?;
    let m = fs_pullback_jacobian(n)?;
    Ok(MetricTensor {
        components: m.transpose() * g_fs.components() * &m,
    })
}

/// Compares the induced base metric (finite differences with Richardson
/// refinement) against [`reference_base_metric`]; returns the maximum
/// absolute component deviation.
pub fn verify_metric_equality(
    basis: &GellMannBasis,
    coords: &EulerCoordinates,
    step: f64,
) -> Result<f64> {
    let n = coords.n();
    let nn = n - 1;
    for a in 1..=nn {
        let p = coords.phi(nn, a);
        if p.min(PI / 2.0 - p) < 1e-3 {
            return Err(Error::Boundary(format!(
                "phi_{a} = {p} too close to a degenerate boundary"
            )));
        }
    }
    let g_base = base_metric_refined(basis, coords, step)?;
    let reference = reference_base_metric(coords)?;
    let dev = (g_base.components() - reference.components())
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    Ok(dev)
}

/// Closed-form determinant of the vielbein from the measure formula, for
/// cross-checking the finite-difference frame.
pub fn vielbein_det_closed_form(coords: &EulerCoordinates) -> Result<f64> {
    let n = coords.n();
    if n == 2 {
        return Ok((2.0 * coords.phi(1, 1)).sin());
    }
    let nn = n - 1;
    let thetas: Vec<f64> = (1..=nn).map(|a| coords.theta(nn, a)).collect();
    let phis: Vec<f64> = (1..=nn).map(|a| coords.phi(nn, a)).collect();
    base_density(n, &thetas, &phis)
}
