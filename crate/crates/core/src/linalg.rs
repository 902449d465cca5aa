//! Dense complex matrix helpers used across the crate.
//!
//! All group elements and algebra generators are stored as dense
//! `DMatrix<Complex<f64>>`. The helpers here cover the handful of
//! operations nalgebra does not provide directly: trace products,
//! entrywise max norms, Hermitian exponentials and eigenphases of
//! unitary matrices.

use nalgebra::{Complex, DMatrix};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

pub const ONE: C64 = Complex::new(1.0, 0.0);
pub const ZERO: C64 = Complex::new(0.0, 0.0);
pub const I: C64 = Complex::new(0.0, 1.0);

/// Entrywise maximum modulus.
pub fn max_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Entrywise maximum modulus of `a - b`.
pub fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Tr(a·b) without forming the product matrix.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.nrows();
    let mut t = ZERO;
    for i in 0..n {
        for k in 0..n {
            t += a[(i, k)] * b[(k, i)];
        }
    }
    t
}

/// ½Tr(a·b), the inner product that makes the Gell-Mann generators
/// orthonormal.
pub fn half_trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    trace_product(a, b) * Complex::new(0.5, 0.0)
}

/// Max modulus of `m - m†`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_diff(m, &m.adjoint())
}

/// ‖U†U − I‖_max.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_diff(&(m.adjoint() * m), &CMatrix::identity(n, n))
}

/// exp(i·x·H) for Hermitian H, via eigendecomposition.
///
/// This is the generic fallback route; closed forms for individual
/// generators live in [`crate::group`].
pub fn exp_hermitian(h: &CMatrix, x: f64) -> CMatrix {
    let eig = h.clone().symmetric_eigen();
    let phases = eig.eigenvalues.map(|e| Complex::from_polar(1.0, x * e));
    &eig.eigenvectors * CMatrix::from_diagonal(&phases) * eig.eigenvectors.adjoint()
}

/// Eigenvalue phases of a unitary matrix, in (−π, π].
///
/// U is normal, so H = (U+U†)/2 and B = (U−U†)/(2i) are commuting
/// Hermitian matrices. We diagonalize H, split near-degenerate cos-phase
/// clusters with B restricted to the cluster subspace, and read each phase
/// off the Rayleigh quotient v†Uv. Returned sorted ascending.
pub fn eigenphases(u: &CMatrix) -> Vec<f64> {
    let n = u.nrows();
    let udag = u.adjoint();
    let h = (u + &udag).map(|z| z * 0.5);
    let b = (u - &udag).map(|z| z * Complex::new(0.0, -0.5));

    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    const CLUSTER_GAP: f64 = 1e-7;
    let mut phases = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n
            && (eig.eigenvalues[order[j]] - eig.eigenvalues[order[j - 1]]).abs() < CLUSTER_GAP
        {
            j += 1;
        }
        if j - i == 1 {
            let v = eig.eigenvectors.column(order[i]);
            let lam = (v.adjoint() * u * v)[(0, 0)];
            phases.push(lam.im.atan2(lam.re));
        } else {
            let cluster = CMatrix::from_fn(n, j - i, |r, c| eig.eigenvectors[(r, order[i + c])]);
            let w = cluster.adjoint() * &b * &cluster;
            let weig = w.symmetric_eigen();
            for c in 0..j - i {
                let v = &cluster * weig.eigenvectors.column(c);
                let lam = (v.adjoint() * u * &v)[(0, 0)];
                phases.push(lam.im.atan2(lam.re));
            }
        }
        i = j;
    }
    phases.sort_by(f64::total_cmp);
    phases
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_unitary(phases: &[f64]) -> CMatrix {
        CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            phases.len(),
            phases.iter().map(|&p| Complex::from_polar(1.0, p)),
        ))
    }

    #[test]
    fn eigenphases_of_diagonal_unitary() {
        let u = diag_unitary(&[0.4, -1.3, 2.9]);
        let mut expected = [0.4, -1.3, 2.9];
        expected.sort_by(f64::total_cmp);
        let got = eigenphases(&u);
        for (g, e) in got.iter().zip(expected.iter()) {
            assert!((g - e).abs() < 1e-12, "{g} vs {e}");
        }
    }

    #[test]
    fn eigenphases_resolves_cos_degeneracy() {
        // phases ±x share cos x; the cluster split on B must separate them.
        let u = diag_unitary(&[0.7, -0.7, 0.0]);
        let got = eigenphases(&u);
        assert!((got[0] + 0.7).abs() < 1e-12);
        assert!((got[1] - 0.0).abs() < 1e-12);
        assert!((got[2] - 0.7).abs() < 1e-12);
    }

    #[test]
    fn eigenphases_of_rotated_unitary() {
        // conjugation by a fixed unitary leaves phases unchanged
        let u = diag_unitary(&[1.1, -2.0, 0.3]);
        let c = (3.0f64).sqrt().recip();
        let v = CMatrix::from_row_slice(
            3,
            3,
            &[
                Complex::new(c, 0.0),
                Complex::new(0.0, c),
                Complex::new(c, 0.0),
                Complex::new(c, 0.0),
                Complex::new(0.0, -c * 0.5) * Complex::new(0.0, 1.0),
                Complex::new(-c, 0.0),
                Complex::new(c, 0.0),
                Complex::new(0.0, 0.0),
                Complex::new(0.0, 0.0),
            ],
        );
        // orthonormalize v first so the conjugation is exactly unitary
        let q = v.qr().q();
        let w = &q * &u * q.adjoint();
        let got = eigenphases(&w);
        let mut expected = [1.1, -2.0, 0.3];
        expected.sort_by(f64::total_cmp);
        for (g, e) in got.iter().zip(expected.iter()) {
            assert!((g - e).abs() < 1e-10, "{g} vs {e}");
        }
    }

    #[test]
    fn exp_hermitian_matches_series() {
        // exp(i x σ₂) summed term by term
        let sigma2 = CMatrix::from_row_slice(
            2,
            2,
            &[ZERO, Complex::new(0.0, -1.0), Complex::new(0.0, 1.0), ZERO],
        );
        let x = 0.83;
        let mut series = CMatrix::identity(2, 2);
        let mut term = CMatrix::identity(2, 2);
        for k in 1..40 {
            term = (&term * &sigma2).map(|z| z * Complex::new(0.0, x) / (k as f64));
            series += &term;
        }
        let direct = exp_hermitian(&sigma2, x);
        assert!(max_diff(&direct, &series) < 1e-14);
        // and the closed form [[cos, sin], [-sin, cos]]
        assert!((direct[(0, 0)].re - x.cos()).abs() < 1e-14);
        assert!((direct[(0, 1)].re - x.sin()).abs() < 1e-14);
        assert!((direct[(1, 0)].re + x.sin()).abs() < 1e-14);
    }
}
