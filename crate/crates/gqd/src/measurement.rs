//! Local von Neumann measurements and the pinching maps they induce.
//!
//! Each qubit carries a rank-1 projective measurement whose first projector is
//!
//! ```text
//! P1(theta, phi) = [ cos^2(theta/2)                e^{i phi} cos(theta/2) sin(theta/2) ]
//!                  [ e^{-i phi} cos sin            sin^2(theta/2)                      ]
//! ```
//!
//! and whose second is `P2 = I - P1`. Pinching a state means summing
//! `P_k rho P_k` over all measurement outcomes, which erases the coherences
//! between the measurement branches while preserving the trace.

use crate::density::DensityMatrix;
use crate::matrix::{C64, ComplexMatrix};

/// Angles below this distance from a pole (theta = 0 or pi) collapse to the
/// z-axis measurement, where phi is meaningless.
const POLE_TOL: f64 = 1e-9;

/// One measurement direction (theta_j, phi_j) per qubit. Construction
/// canonicalizes each pair: the unordered projector set is invariant under
/// theta -> theta + pi, so theta is reduced modulo pi (phi modulo 2 pi), and
/// at the poles phi is fixed to zero because every phi yields the same
/// z-axis measurement there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementBasis {
    theta: [f64; 3],
    phi: [f64; 3],
}

impl MeasurementBasis {
    pub fn new(theta: [f64; 3], phi: [f64; 3]) -> Self {
        let mut t = [0.0; 3];
        let mut p = [0.0; 3];
        for j in 0..3 {
            let (tj, pj) = canonical_pair(theta[j], phi[j]);
            t[j] = tj;
            p[j] = pj;
        }
        Self { theta: t, phi: p }
    }

    /// The measurement along z on every qubit (all angles zero).
    pub fn sigma_z() -> Self {
        Self::new([0.0; 3], [0.0; 3])
    }

    pub fn theta(&self) -> [f64; 3] {
        self.theta
    }

    pub fn phi(&self) -> [f64; 3] {
        self.phi
    }

    /// The (theta, phi) pair for `qubit` in 1..=3.
    pub fn angles(&self, qubit: usize) -> (f64, f64) {
        assert!((1..=3).contains(&qubit), "qubit index must be 1, 2 or 3");
        (self.theta[qubit - 1], self.phi[qubit - 1])
    }
}

fn canonical_pair(theta: f64, phi: f64) -> (f64, f64) {
    let mut t = theta.rem_euclid(std::f64::consts::PI);
    let mut p = phi.rem_euclid(2.0 * std::f64::consts::PI);
    if t < POLE_TOL || t > std::f64::consts::PI - POLE_TOL {
        t = 0.0;
        p = 0.0;
    }
    (t, p)
}

/// The two orthonormal branch vectors u0, u1 with P_k = |u_k><u_k|:
/// u0 = (cos(theta/2), e^{-i phi} sin(theta/2)), u1 its orthogonal complement.
pub(crate) fn branch_vectors(theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let c = (0.5 * theta).cos();
    let s = (0.5 * theta).sin();
    let e = C64::new(0.0, -phi).exp(); // e^{-i phi}
    [
        [C64::new(c, 0.0), e * s],
        [C64::new(-s, 0.0), e * c],
    ]
}

fn outer_2(v: &[C64; 2]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    for r in 0..2 {
        for c in 0..2 {
            m[(r, c)] = v[r] * v[c].conj();
        }
    }
    m
}

/// The ordered projector pair (P1, P2) measured on `qubit` (1..=3).
pub fn projectors(basis: &MeasurementBasis, qubit: usize) -> (ComplexMatrix, ComplexMatrix) {
    let (theta, phi) = basis.angles(qubit);
    let u = branch_vectors(theta, phi);
    (outer_2(&u[0]), outer_2(&u[1]))
}

/// Pinches a three-qubit state over the 8 product projectors of `basis`:
/// `sum_k P_k rho P_k`. Idempotent and trace-preserving; the result is
/// diagonal in the product measurement basis.
pub fn pinch_global(rho: &DensityMatrix, basis: &MeasurementBasis) -> DensityMatrix {
    assert_eq!(rho.qubit_count(), 3, "global pinching needs a 3-qubit state");
    let u: Vec<[[C64; 2]; 2]> = (1..=3)
        .map(|q| {
            let (t, p) = basis.angles(q);
            branch_vectors(t, p)
        })
        .collect();
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(8);
    let mut v = [C64::new(0.0, 0.0); 8];
    for k in 0..8usize {
        let b = [(k >> 2) & 1, (k >> 1) & 1, k & 1];
        for (idx, slot) in v.iter_mut().enumerate() {
            let a = [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1];
            *slot = u[0][b[0]][a[0]] * u[1][b[1]][a[1]] * u[2][b[2]][a[2]];
        }
        // p_k = <v| rho |v>, real and non-negative up to roundoff.
        let mut p = 0.0;
        for r in 0..8 {
            let mut row = C64::new(0.0, 0.0);
            for c in 0..8 {
                row += m[(r, c)] * v[c];
            }
            p += (v[r].conj() * row).re;
        }
        let p = p.max(0.0);
        for r in 0..8 {
            for c in 0..8 {
                out[(r, c)] += v[r] * v[c].conj() * p;
            }
        }
    }
    DensityMatrix::new(out).expect("pinching preserves density-matrix validity")
}

/// Pinches a single-qubit state over the two projectors of (theta, phi).
pub fn pinch_local(rho: &DensityMatrix, theta: f64, phi: f64) -> DensityMatrix {
    assert_eq!(rho.qubit_count(), 1, "local pinching needs a 1-qubit state");
    let (theta, phi) = canonical_pair(theta, phi);
    let u = branch_vectors(theta, phi);
    let m = rho.matrix();
    let mut q = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            q += (u[0][r].conj() * m[(r, c)] * u[0][c]).re;
        }
    }
    let q = q.clamp(0.0, 1.0);
    let mut out = outer_2(&u[0]);
    out.scale_assign(q);
    let mut second = outer_2(&u[1]);
    second.scale_assign(1.0 - q);
    DensityMatrix::new(out.add(&second)).expect("pinching preserves density-matrix validity")
}
