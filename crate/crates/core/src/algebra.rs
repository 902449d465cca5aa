//! Generalized Gell-Mann basis for su(N).
//!
//! The basis is built inductively: the su(k) generators are embedded into
//! su(k+1) with a zero row/column appended, then for each a = 1..k a
//! symmetric and an antisymmetric pair generator coupling rows (a, k+1)
//! are added, and finally one diagonal generator
//! ε_{k+1}·diag(1,…,1,−k) with ε_{k+1} = √(2/(k(k+1))).
//! Generator indices are 1-based throughout the public interface; the
//! normalization is Tr(λ_I λ_J) = 2δ_IJ.

use crate::error::{Error, Result};
use crate::linalg::{
    exp_hermitian, half_trace_product, max_diff, trace_product, CMatrix, ONE, ZERO,
};
use nalgebra::Complex;

/// Largest supported matrix dimension. Generators are stored densely, so
/// memory grows as n⁴; past this point a sparse representation would be
/// required.
pub const MAX_DIMENSION: usize = 32;

/// ε_k = √(2/(k(k−1))), the normalization of the k-th diagonal generator
/// λ_{k²−1}.
pub fn epsilon(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::Domain(format!("epsilon requires k >= 2, got {k}")));
    }
    let kf = k as f64;
    Ok((2.0 / (kf * (kf - 1.0))).sqrt())
}

/// The ordered generalized Gell-Mann basis of su(n).
#[derive(Debug, Clone)]
pub struct GellMannBasis {
    n: usize,
    generators: Vec<CMatrix>,
    epsilons: Vec<f64>,
}

impl GellMannBasis {
    /// Builds the basis for su(n); see [`build_basis`].
    pub fn new(n: usize) -> Result<Self> {
        build_basis(n)
    }

    /// Matrix dimension n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generators, n²−1.
    pub fn dim(&self) -> usize {
        self.n * self.n - 1
    }

    /// λ_I with the 1-based index, I = 1..n²−1.
    ///
    /// Panics if the index is out of range; use [`Self::try_generator`] for
    /// a checked lookup.
    pub fn generator(&self, index: usize) -> &CMatrix {
        self.try_generator(index).expect("generator index")
    }

    /// Checked 1-based generator lookup.
    pub fn try_generator(&self, index: usize) -> Result<&CMatrix> {
        if index == 0 || index > self.dim() {
            return Err(Error::Domain(format!(
                "generator index {index} out of range 1..={}",
                self.dim()
            )));
        }
        Ok(&self.generators[index - 1])
    }

    /// All generators in index order (slot i holds λ_{i+1}).
    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    /// ε_k for k = 2..=n.
    pub fn epsilon(&self, k: usize) -> f64 {
        assert!((2..=self.n).contains(&k), "epsilon index {k} out of range");
        self.epsilons[k - 2]
    }

    /// The list ε_2..ε_n.
    pub fn epsilons(&self) -> &[f64] {
        &self.epsilons
    }

    /// Linear combination Σ c_i λ_{i+1} of the leading generators.
    pub fn combination(&self, coefficients: &[f64]) -> Result<CMatrix> {
        if coefficients.len() > self.dim() {
            return Err(Error::Shape(format!(
                "{} coefficients for {} generators",
                coefficients.len(),
                self.dim()
            )));
        }
        let mut m = CMatrix::zeros(self.n, self.n);
        for (c, g) in coefficients.iter().zip(&self.generators) {
            if *c != 0.0 {
                m += g.map(|z| z * *c);
            }
        }
        Ok(m)
    }
}

/// Builds the full ordered Gell-Mann basis for su(n), n ≥ 2.
///
/// Index layout: indices 1..k²−1 are the su(k) basis zero-padded, indices
/// k²+2a−2 / k²+2a−1 (a = 1..k) the new symmetric/antisymmetric pair
/// generators on rows (a, k+1), and (k+1)²−1 the new diagonal generator.
pub fn build_basis(n: usize) -> Result<GellMannBasis> {
    if n < 2 {
        return Err(Error::Domain(format!("su(n) basis requires n >= 2, got {n}")));
    }
    if n > MAX_DIMENSION {
        return Err(Error::Capacity(format!(
            "dense generator storage supports n <= {MAX_DIMENSION}, got {n}"
        )));
    }
    let mut generators: Vec<CMatrix> = Vec::with_capacity(n * n - 1);
    let mut epsilons = Vec::with_capacity(n - 1);
    for k in 1..n {
        let dim = k + 1;
        for g in &mut generators {
            *g = g.clone().resize(dim, dim, ZERO);
        }
        for a in 1..=k {
            let mut sym = CMatrix::zeros(dim, dim);
            sym[(a - 1, k)] = ONE;
            sym[(k, a - 1)] = ONE;
            generators.push(sym);
            let mut asym = CMatrix::zeros(dim, dim);
            asym[(a - 1, k)] = Complex::new(0.0, -1.0);
            asym[(k, a - 1)] = Complex::new(0.0, 1.0);
            generators.push(asym);
        }
        let eps = epsilon(k + 1)?;
        epsilons.push(eps);
        let mut diag = CMatrix::zeros(dim, dim);
        for i in 0..k {
            diag[(i, i)] = Complex::new(eps, 0.0);
        }
        diag[(k, k)] = Complex::new(-eps * k as f64, 0.0);
        generators.push(diag);
    }
    Ok(GellMannBasis { n, generators, epsilons })
}

/// AB − BA.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.nrows() != a.ncols() || a.shape() != b.shape() {
        return Err(Error::Shape(format!(
            "commutator needs equal square matrices, got {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(a * b - b * a)
}

/// One verified structure relation: name and the maximum absolute
/// deviation observed over all sampled indices and angles.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub max_deviation: f64,
}

/// Result of [`verify_identities`].
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    /// Largest deviation across all checks.
    pub fn max_deviation(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.max_deviation)
            .fold(0.0, f64::max)
    }

    pub fn all_within(&self, tol: f64) -> bool {
        self.max_deviation() <= tol
    }
}

/// Angles for the x-dependent relations: a spread of points inside
/// (0, π/2), all with sin x > 0.1 so the conjugation relations (which
/// divide by sin x) stay away from their singularity.
fn sample_angles() -> [f64; 11] {
    let mut xs = [0.3, 0.7, 1.2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    for i in 0..8 {
        xs[3 + i] = 0.15 + (1.5 - 0.15) * i as f64 / 7.0;
    }
    xs
}

/// Evaluates every displayed structure relation of the basis for su(n)
/// (with N = n−1): the pair commutators, the three commutators of
/// λ_{N²+1} with λ_{N²}, λ_{a²−1} and λ_{(N+1)²−1}, the double
/// commutator, the sin/tan conjugation relations, the two ε-sum
/// identities, and the trace/conjugation formulas. Returns the maximum
/// absolute deviation per relation.
///
/// The commutator of λ_{N²+1} with the diagonal generators is checked for
/// a = 2..N: the a = 1 case would reference the undefined λ_0.
pub fn verify_identities(n: usize) -> Result<IdentityReport> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "identity suite requires n >= 3, got {n}"
        )));
    }
    let basis = build_basis(n)?;
    let nn = n - 1;
    let lam = |i: usize| basis.generator(i);
    let eps = |k: usize| basis.epsilon(k);
    let scale = |m: &CMatrix, c: f64| m.map(|z| z * c);
    let i_scale = |m: &CMatrix, c: f64| m.map(|z| z * Complex::new(0.0, c));

    let mut checks = Vec::new();
    let mut push =
        |name: &'static str, dev: f64| checks.push(IdentityCheck { name, max_deviation: dev });

    let pivot = lam(nn * nn + 1); // λ_{N²+1}

    // [λ_{N²+1}, λ_{N²+2j}] = −i λ_{j²}
    let mut dev = 0.0f64;
    for j in 1..nn {
        let lhs = commutator(pivot, lam(nn * nn + 2 * j))?;
        dev = dev.max(max_diff(&lhs, &i_scale(lam(j * j), -1.0)));
    }
    push("pair_commutator_sym", dev);

    // [λ_{N²+1}, λ_{N²+2j+1}] = i λ_{j²+1}
    let mut dev = 0.0f64;
    for j in 1..nn {
        let lhs = commutator(pivot, lam(nn * nn + 2 * j + 1))?;
        dev = dev.max(max_diff(&lhs, &i_scale(lam(j * j + 1), 1.0)));
    }
    push("pair_commutator_antisym", dev);

    // [λ_{N²+1}, λ_{N²}] = −i(N+1)ε_{N+1} λ_{(N+1)²−1} − i Σ_{a=2}^N ε_a λ_{a²−1}
    let lhs = commutator(pivot, lam(nn * nn))?;
    let mut rhs = i_scale(lam(n * n - 1), -(n as f64) * eps(n));
    for a in 2..=nn {
        rhs += i_scale(lam(a * a - 1), -eps(a));
    }
    push("commutator_with_sym_partner", max_diff(&lhs, &rhs));

    // [λ_{N²+1}, λ_{a²−1}] = i ε_a λ_{N²}, a = 2..N
    let mut dev = 0.0f64;
    for a in 2..=nn {
        let lhs = commutator(pivot, lam(a * a - 1))?;
        dev = dev.max(max_diff(&lhs, &i_scale(lam(nn * nn), eps(a))));
    }
    push("commutator_with_diagonals", dev);

    // [λ_{N²+1}, λ_{(N+1)²−1}] = i(N+1)ε_{N+1} λ_{N²}
    let lhs = commutator(pivot, lam(n * n - 1))?;
    push(
        "commutator_with_last_diagonal",
        max_diff(&lhs, &i_scale(lam(nn * nn), n as f64 * eps(n))),
    );

    // [λ_{N²+1}, [λ_{N²+1}, λ_{N²}]] = 4 λ_{N²}
    let inner = commutator(pivot, lam(nn * nn))?;
    let lhs = commutator(pivot, &inner)?;
    push("double_commutator", max_diff(&lhs, &scale(lam(nn * nn), 4.0)));

    // Σ ε_a² + (N+1)² ε²_{N+1} = 4  and  Σ ε_a² + (N+1) ε²_{N+1} = 2
    let sum: f64 = (2..=nn).map(|a| eps(a).powi(2)).sum();
    let e_top = eps(n).powi(2);
    let nf = n as f64;
    push("epsilon_sum_four", (sum + nf * nf * e_top - 4.0).abs());
    push("epsilon_sum_two", (sum + nf * e_top - 2.0).abs());

    let xs = sample_angles();

    // e^{ix λ_{N²+1}} λ_{j²+1} e^{−ix λ_{N²+1}}
    //   = (1/sin x) λ_{N²+2j+1} − (1/tan x) e^{ix} λ_{N²+2j+1} e^{−ix}
    // and the partner relation with λ_{j²}, λ_{N²+2j}, opposite signs.
    let mut dev_asym = 0.0f64;
    let mut dev_sym = 0.0f64;
    for &x in &xs {
        let u = exp_hermitian(pivot, x);
        let udag = u.adjoint();
        for j in 1..nn {
            let target = lam(nn * nn + 2 * j + 1);
            let lhs = &u * lam(j * j + 1) * &udag;
            let rhs = scale(target, 1.0 / x.sin()) - scale(&(&u * target * &udag), 1.0 / x.tan());
            dev_asym = dev_asym.max(max_diff(&lhs, &rhs));

            let target = lam(nn * nn + 2 * j);
            let lhs = &u * lam(j * j) * &udag;
            let rhs = scale(&(&u * target * &udag), 1.0 / x.tan()) - scale(target, 1.0 / x.sin());
            dev_sym = dev_sym.max(max_diff(&lhs, &rhs));
        }
    }
    push("conjugation_antisym", dev_asym);
    push("conjugation_sym", dev_sym);

    // Tr[e^{−ix λ_{N²+1}} λ_{N²−1} e^{ix λ_{N²+1}} λ_{N²+I}] = ε_N δ_{I0} sin 2x
    let mut dev = 0.0f64;
    for &x in &xs {
        let u = exp_hermitian(pivot, x);
        let rotated = u.adjoint() * lam(nn * nn - 1) * &u;
        for offset in 0..2 * nn {
            let t = trace_product(&rotated, lam(nn * nn + offset));
            let expected = if offset == 0 { eps(nn) * (2.0 * x).sin() } else { 0.0 };
            dev = dev.max((t - Complex::new(expected, 0.0)).norm());
        }
    }
    push("trace_rotated_diagonal", dev);

    // ½Tr[λ_a e^{ix} λ_{N²+2i} e^{−ix}]   = δ_{a,i²} sin x
    // ½Tr[λ_a e^{ix} λ_{N²+2i+1} e^{−ix}] = −δ_{a,i²+1} sin x
    // for a ≤ N²−1, i = 1..N−1.
    let mut dev_sym = 0.0f64;
    let mut dev_asym = 0.0f64;
    for &x in &xs {
        let u = exp_hermitian(pivot, x);
        let udag = u.adjoint();
        for i in 1..nn {
            let conj_sym = &u * lam(nn * nn + 2 * i) * &udag;
            let conj_asym = &u * lam(nn * nn + 2 * i + 1) * &udag;
            for a in 1..nn * nn {
                let t = half_trace_product(lam(a), &conj_sym);
                let expected = if a == i * i { x.sin() } else { 0.0 };
                dev_sym = dev_sym.max((t - Complex::new(expected, 0.0)).norm());

                let t = half_trace_product(lam(a), &conj_asym);
                let expected = if a == i * i + 1 { -x.sin() } else { 0.0 };
                dev_asym = dev_asym.max((t - Complex::new(expected, 0.0)).norm());
            }
        }
    }
    push("trace_projected_pair_sym", dev_sym);
    push("trace_projected_pair_antisym", dev_asym);

    // ½Tr[e^{ix} λ_{N²} e^{−ix} λ_a] = (ε_b/2) sin 2x for a = b²−1
    // (b = 2..N), 0 for every other a ≤ N²−1: the rotated pair generator
    // projects onto the diagonal su(N) directions only.
    let mut dev = 0.0f64;
    for &x in &xs {
        let u = exp_hermitian(pivot, x);
        let conj = &u * lam(nn * nn) * u.adjoint();
        for a in 1..nn * nn {
            let t = half_trace_product(&conj, lam(a));
            let b = ((a + 1) as f64).sqrt().round() as usize;
            let expected = if (2..=nn).contains(&b) && b * b - 1 == a {
                0.5 * eps(b) * (2.0 * x).sin()
            } else {
                0.0
            };
            dev = dev.max((t - Complex::new(expected, 0.0)).norm());
        }
    }
    push("trace_diagonal_projection", dev);

    // Σ_{a=2}^N ε_a Tr[A e^{ix λ_{(N−1)²+1}} λ_{a²−1} e^{−ix}] =
    //   cos²x · Σ_{a=2}^N ε_a Tr[A λ_{a²−1}]
    // for A in the embedded su(N−1). Trivially 0 = 0 when N = 2.
    let mut dev = 0.0f64;
    if nn >= 3 {
        let sub_dim = (nn - 1) * (nn - 1) - 1;
        // fixed, seed-free pseudo-random coefficients
        let coeffs: Vec<f64> = (0..sub_dim)
            .map(|i| ((i as f64 + 1.0) * 0.7391).sin())
            .collect();
        let a_mat = basis.combination(&coeffs)?;
        let rot = lam((nn - 1) * (nn - 1) + 1);
        for &x in &xs {
            let u = exp_hermitian(rot, x);
            let udag = u.adjoint();
            let mut lhs = ZERO;
            let mut rhs = ZERO;
            for a in 2..=nn {
                let conj = &u * lam(a * a - 1) * &udag;
                lhs += trace_product(&a_mat, &conj) * eps(a);
                rhs += trace_product(&a_mat, lam(a * a - 1)) * eps(a);
            }
            dev = dev.max((lhs - rhs * x.cos().powi(2)).norm());
        }
    }
    push("conjugation_weighted_diagonals", dev);

    // e^{ix λ_{N²−1}} λ_{(N−1)²}   e^{−ix} = cos(Nε_N x) λ_{(N−1)²}   − sin(Nε_N x) λ_{(N−1)²+1}
    // e^{ix λ_{N²−1}} λ_{(N−1)²+1} e^{−ix} = cos(Nε_N x) λ_{(N−1)²+1} + sin(Nε_N x) λ_{(N−1)²}
    let mut dev = 0.0f64;
    let diag = lam(nn * nn - 1);
    let p_sym = lam((nn - 1) * (nn - 1));
    let p_asym = lam((nn - 1) * (nn - 1) + 1);
    for &x in &xs {
        let u = exp_hermitian(diag, x);
        let udag = u.adjoint();
        let ang = nn as f64 * eps(nn) * x;
        let lhs = &u * p_sym * &udag;
        let rhs = scale(p_sym, ang.cos()) - scale(p_asym, ang.sin());
        dev = dev.max(max_diff(&lhs, &rhs));
        let lhs = &u * p_asym * &udag;
        let rhs = scale(p_asym, ang.cos()) + scale(p_sym, ang.sin());
        dev = dev.max(max_diff(&lhs, &rhs));
    }
    push("conjugation_by_diagonal", dev);

    Ok(IdentityReport { checks })
}
