//! SU(N) group elements via the recursive Euler-angle parametrization.
//!
//! A group element of SU(n), with N = n−1, is the ordered product
//!
//!   g = e^{iθ₁λ₃} e^{iφ₁λ₂} ∏_{a=2}^{N} [e^{i(θ_a/ε_a)λ_{a²−1}} e^{iφ_a λ_{a²+1}}] · U(N)
//!
//! where U(N) = SU(N)·e^{i(ω/ε_{N+1})λ_{(N+1)²−1}} with the SU(N) factor
//! built recursively in the top-left block and ω ∈ [0, 2π/N], and the
//! terminal SU(2) is e^{iφσ₃}e^{iθσ₂}e^{iψσ₃}. Every factor exponentiates
//! in closed form: diagonal generators give phase diagonals, pair
//! generators give a 2×2 block on the two rows they couple. Flattened,
//! the factor product follows the canonical coordinate layout exactly,
//! one factor per angle slot.

use crate::algebra::GellMannBasis;
use crate::error::{Error, Result};
use crate::linalg::{half_trace_product, unitarity_defect, CMatrix, ONE};
use nalgebra::{Complex, DMatrix};
use std::f64::consts::PI;

/// What an angle slot parametrizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotKind {
    /// θ_a at a recursion level: the diagonal factor e^{i(θ/ε_a)λ_{a²−1}}
    /// (for a = 1 the λ₃ factor). At the terminal level this is the SU(2)
    /// angle φ.
    Theta { level: usize, a: usize },
    /// φ_a at a recursion level: the plane rotation e^{iφ λ_{a²+1}}. At
    /// the terminal level this is the SU(2) angle θ.
    Phi { level: usize, a: usize },
    /// The fiber phase ω_m ∈ [0, 2π/m]; ω₁ is the SU(2) angle ψ.
    Omega { level: usize },
}

/// One named angle slot with its admissible range.
#[derive(Debug, Clone)]
pub struct Slot {
    pub name: String,
    pub kind: SlotKind,
    pub lo: f64,
    pub hi: f64,
}

/// The canonical flat coordinate ordering for SU(n): for the top level
/// m = n−1 the pairs θ₁,φ₁,…,θ_m,φ_m, then recursively the layout of
/// SU(m), then ω_m; the terminal SU(2) triple is (φ, θ, ψ).
#[derive(Debug, Clone)]
pub struct CoordinateLayout {
    n: usize,
    slots: Vec<Slot>,
}

impl CoordinateLayout {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of slots, n²−1.
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// Flat index of θ_a at recursion level m.
    pub fn theta_index(&self, level: usize, a: usize) -> usize {
        base_offset(self.n, level) + 2 * (a - 1)
    }

    /// Flat index of φ_a at recursion level m.
    pub fn phi_index(&self, level: usize, a: usize) -> usize {
        base_offset(self.n, level) + 2 * a - 1
    }

    /// Flat index of ω_m.
    pub fn omega_index(&self, level: usize) -> usize {
        self.n * (self.n - 1) + level - 1
    }
}

/// Offset of level m's θ/φ block in the flat layout.
pub(crate) fn base_offset(n: usize, level: usize) -> usize {
    n * (n - 1) - level * (level + 1)
}

/// Builds the canonical layout descriptor for SU(n).
pub fn coordinate_layout(n: usize) -> Result<CoordinateLayout> {
    if n < 2 {
        return Err(Error::Domain(format!("SU(n) requires n >= 2, got {n}")));
    }
    let mut slots = Vec::with_capacity(n * n - 1);
    // θ/φ blocks, levels n−1 down to 1
    for level in (1..n).rev() {
        for a in 1..=level {
            let (theta_name, phi_name) = if level == 1 {
                ("phi".to_string(), "theta".to_string())
            } else {
                (format!("theta_{a}@{level}"), format!("phi_{a}@{level}"))
            };
            let theta_hi = if a == 1 { PI } else { 2.0 * PI };
            slots.push(Slot {
                name: theta_name,
                kind: SlotKind::Theta { level, a },
                lo: 0.0,
                hi: theta_hi,
            });
            slots.push(Slot {
                name: phi_name,
                kind: SlotKind::Phi { level, a },
                lo: 0.0,
                hi: PI / 2.0,
            });
        }
    }
    // fiber phases: unrolling the recursion puts ω_m right after the
    // sub-layout of SU(m), i.e. all of ω₁ (= ψ) … ω_{n−1} at the tail in
    // ascending level order.
    for level in 1..n {
        let name = if level == 1 {
            "psi".to_string()
        } else {
            format!("omega@{level}")
        };
        slots.push(Slot {
            name,
            kind: SlotKind::Omega { level },
            lo: 0.0,
            hi: 2.0 * PI / level as f64,
        });
    }
    Ok(CoordinateLayout { n, slots })
}

/// The full (n²−1)-dimensional Euler angle vector in canonical layout
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerCoordinates {
    n: usize,
    angles: Vec<f64>,
}

impl EulerCoordinates {
    /// Wraps a flat angle vector; the length must be n²−1.
    pub fn new(n: usize, angles: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("SU(n) requires n >= 2, got {n}")));
        }
        if angles.len() != n * n - 1 {
            return Err(Error::Shape(format!(
                "SU({n}) needs {} angles, got {}",
                n * n - 1,
                angles.len()
            )));
        }
        Ok(Self { n, angles })
    }

    /// All angles zero (the identity element).
    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(n, vec![0.0; n * n - 1])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn angles_mut(&mut self) -> &mut [f64] {
        &mut self.angles
    }

    /// θ_a at recursion level m (level n−1 is the top).
    pub fn theta(&self, level: usize, a: usize) -> f64 {
        self.angles[base_offset(self.n, level) + 2 * (a - 1)]
    }

    /// φ_a at recursion level m.
    pub fn phi(&self, level: usize, a: usize) -> f64 {
        self.angles[base_offset(self.n, level) + 2 * a - 1]
    }

    /// Fiber phase ω_m; ω₁ is the SU(2) angle ψ.
    pub fn omega(&self, level: usize) -> f64 {
        self.angles[self.n * (self.n - 1) + level - 1]
    }

    /// Coordinates of the embedded SU(n−1) element (the recursive part of
    /// the layout).
    pub fn sub_coordinates(&self) -> Result<EulerCoordinates> {
        if self.n < 3 {
            return Err(Error::Domain(
                "SU(2) has no embedded subgroup coordinates".to_string(),
            ));
        }
        let m = self.n - 1;
        let start = 2 * m;
        EulerCoordinates::new(m, self.angles[start..start + m * m - 1].to_vec())
    }

    /// Checks every angle against the canonical ranges; names the first
    /// offending slot. Group-element construction itself accepts any real
    /// angles (the map is entire); this validator enforces the canonical
    /// box used by the measure and sampling.
    pub fn validate_ranges(&self, layout: &CoordinateLayout) -> Result<()> {
        for (slot, &x) in layout.slots().iter().zip(&self.angles) {
            if x < slot.lo || x > slot.hi {
                return Err(Error::Domain(format!(
                    "angle {} = {x} outside [{}, {}]",
                    slot.name, slot.lo, slot.hi
                )));
            }
        }
        Ok(())
    }

    /// True when every angle is strictly inside its range, with the given
    /// margin on the φ slots (whose boundaries degenerate the measure).
    pub fn is_interior(&self, layout: &CoordinateLayout, margin: f64) -> bool {
        layout.slots().iter().zip(&self.angles).all(|(slot, &x)| {
            let m = match slot.kind {
                SlotKind::Phi { .. } => margin,
                _ => 0.0,
            };
            x > slot.lo + m && x < slot.hi - m
        })
    }
}

/// A dense complex n×n matrix satisfying U†U = I, det U = 1 up to
/// numerical tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialUnitary {
    mat: CMatrix,
}

impl SpecialUnitary {
    /// Wraps a matrix without checking the invariants.
    pub(crate) fn new_unchecked(mat: CMatrix) -> Self {
        Self { mat }
    }

    /// Wraps a matrix, verifying ‖U†U−I‖_max ≤ tol and |det U − 1| ≤ tol.
    pub fn try_new(mat: CMatrix, tol: f64) -> Result<Self> {
        let u = Self { mat };
        u.validate(tol)?;
        Ok(u)
    }

    pub fn n(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    /// ‖U†U − I‖_max.
    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(&self.mat)
    }

    /// |det U − 1|.
    pub fn determinant_defect(&self) -> f64 {
        (self.mat.determinant() - ONE).norm()
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let u = self.unitarity_defect();
        if u > tol {
            return Err(Error::Domain(format!("unitarity defect {u:e} exceeds {tol:e}")));
        }
        let d = self.determinant_defect();
        if d > tol {
            return Err(Error::Domain(format!(
                "determinant defect {d:e} exceeds {tol:e}"
            )));
        }
        Ok(())
    }
}

/// In-place right multiplication by diag(e^{ix}×k, e^{−ikx}, 1, …):
/// the closed-form exponential of a diagonal generator, scaled so the
/// leading phases are exactly e^{ix}.
fn apply_phase_diag(m: &mut CMatrix, k: usize, x: f64) {
    let up = Complex::from_polar(1.0, x);
    let down = Complex::from_polar(1.0, -(k as f64) * x);
    for j in 0..k {
        for i in 0..m.nrows() {
            m[(i, j)] *= up;
        }
    }
    for i in 0..m.nrows() {
        m[(i, k)] *= down;
    }
}

/// In-place right multiplication by the rotation exp(i x σ₂-type) acting
/// in the (0, r) plane: [[cos x, sin x], [−sin x, cos x]].
fn apply_plane_rotation(m: &mut CMatrix, r: usize, x: f64) {
    let (s, c) = x.sin_cos();
    for i in 0..m.nrows() {
        let a = m[(i, 0)];
        let b = m[(i, r)];
        m[(i, 0)] = a * c - b * s;
        m[(i, r)] = a * s + b * c;
    }
}

fn apply_slot_factor(m: &mut CMatrix, kind: SlotKind, x: f64) {
    match kind {
        SlotKind::Theta { a, .. } => apply_phase_diag(m, a.max(2) - 1, x),
        SlotKind::Phi { a, .. } => apply_plane_rotation(m, a, x),
        SlotKind::Omega { level } => apply_phase_diag(m, level, x),
    }
}

fn check_dims(basis: &GellMannBasis, coords: &EulerCoordinates) -> Result<()> {
    if basis.n() != coords.n() {
        return Err(Error::Shape(format!(
            "basis is su({}) but coordinates are for SU({})",
            basis.n(),
            coords.n()
        )));
    }
    Ok(())
}

/// Assembles the SU(n) element for the given coordinates.
///
/// Angles are not range-checked here: the map is entire, and derivative
/// code needs small excursions past the canonical box. Use
/// [`EulerCoordinates::validate_ranges`] to enforce ranges.
pub fn build_element(basis: &GellMannBasis, coords: &EulerCoordinates) -> Result<SpecialUnitary> {
    check_dims(basis, coords)?;
    let layout = coordinate_layout(coords.n())?;
    let mut m = CMatrix::identity(coords.n(), coords.n());
    for (slot, &x) in layout.slots().iter().zip(coords.angles()) {
        apply_slot_factor(&mut m, slot.kind, x);
    }
    Ok(SpecialUnitary::new_unchecked(m))
}

/// The coset representative h(θ_a, φ_a): only the top-level θ/φ factors,
/// the U(N) fiber factor omitted.
pub fn build_base_point(basis: &GellMannBasis, coords: &EulerCoordinates) -> Result<SpecialUnitary> {
    check_dims(basis, coords)?;
    let layout = coordinate_layout(coords.n())?;
    let top = 2 * (coords.n() - 1);
    let mut m = CMatrix::identity(coords.n(), coords.n());
    for (slot, &x) in layout.slots().iter().zip(coords.angles()).take(top) {
        apply_slot_factor(&mut m, slot.kind, x);
    }
    Ok(SpecialUnitary::new_unchecked(m))
}

/// Closed-form exp(i x λ_index) for a basis generator.
///
/// Diagonal generators exponentiate entrywise; pair generators give a 2×2
/// rotation/phase block on the rows they couple. The classification is
/// exhaustive for this basis, so no eigendecomposition fallback is ever
/// taken; [`crate::linalg::exp_hermitian`] provides the independent route
/// for cross-checks.
pub fn exp_generator(basis: &GellMannBasis, index: usize, x: f64) -> Result<SpecialUnitary> {
    let n = basis.n();
    if index == 0 || index > basis.dim() {
        return Err(Error::Domain(format!(
            "generator index {index} out of range 1..={}",
            basis.dim()
        )));
    }
    let mut m = CMatrix::identity(n, n);
    let next = (index + 1) as f64;
    let root = next.sqrt().round() as usize;
    if root >= 2 && root * root == index + 1 {
        // diagonal λ_{m²−1}: phases e^{ixε_m} on the first m−1 entries,
        // e^{−ix(m−1)ε_m} on entry m
        apply_phase_diag(&mut m, root - 1, x * basis.epsilon(root));
        return Ok(SpecialUnitary::new_unchecked(m));
    }
    let mut k = (index as f64).sqrt().floor() as usize;
    if (k + 1) * (k + 1) <= index {
        k += 1;
    } else if k * k > index {
        k -= 1;
    }
    let t = index - k * k;
    let a = t / 2; // 0-based row of the pair partner
    let (s, c) = x.sin_cos();
    let (cc, ss) = (Complex::new(c, 0.0), Complex::new(s, 0.0));
    if t.is_multiple_of(2) {
        // symmetric pair: exp(i x σ₁) block
        m[(a, a)] = cc;
        m[(k, k)] = cc;
        m[(a, k)] = Complex::new(0.0, s);
        m[(k, a)] = Complex::new(0.0, s);
    } else {
        // antisymmetric pair: exp(i x σ₂) block
        m[(a, a)] = cc;
        m[(k, k)] = cc;
        m[(a, k)] = ss;
        m[(k, a)] = -ss;
    }
    Ok(SpecialUnitary::new_unchecked(m))
}

/// Numerical rank of the (n²−1)×(n²−1) Jacobian of the coordinate map,
/// computed from the left-invariant current components
/// ½Tr(−i g⁻¹ ∂_c g · λ_I) by central finite differences.
///
/// Requires a point strictly interior to all ranges: the rank genuinely
/// drops on the boundary set.
pub fn tangent_rank(
    basis: &GellMannBasis,
    coords: &EulerCoordinates,
    step: f64,
) -> Result<usize> {
    check_dims(basis, coords)?;
    if step <= 0.0 {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    let layout = coordinate_layout(coords.n())?;
    for (slot, &x) in layout.slots().iter().zip(coords.angles()) {
        if x <= slot.lo || x >= slot.hi {
            return Err(Error::Boundary(format!(
                "angle {} = {x} is not strictly inside ({}, {})",
                slot.name, slot.lo, slot.hi
            )));
        }
    }
    let dim = basis.dim();
    let g = build_element(basis, coords)?;
    let ginv = g.matrix().adjoint();
    let mut jac = DMatrix::<f64>::zeros(dim, dim);
    let mut work = coords.clone();
    for c in 0..dim {
        let x0 = coords.angles()[c];
        work.angles_mut()[c] = x0 + step;
        let plus = build_element(basis, &work)?;
        work.angles_mut()[c] = x0 - step;
        let minus = build_element(basis, &work)?;
        work.angles_mut()[c] = x0;
        let deriv = (plus.matrix() - minus.matrix()).map(|z| z / (2.0 * step));
        let current = (&ginv * deriv).map(|z| z * Complex::new(0.0, -1.0));
        for i in 0..dim {
            jac[(i, c)] = half_trace_product(&current, basis.generator(i + 1)).re;
        }
    }
    let svd = jac.svd(false, false);
    let max_sv = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    Ok(svd
        .singular_values
        .iter()
        .filter(|&&s| s > 1e-6 * max_sv)
        .count())
}
