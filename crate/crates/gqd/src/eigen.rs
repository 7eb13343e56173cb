//! Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! At dimension <= 8 a dependency-free O(n^3)-per-sweep Jacobi iteration is
//! plenty: it converges quadratically once the off-diagonal mass is small and
//! needs a handful of sweeps in practice. Each pivot (p, q) is annihilated by
//! a complex Givens rotation obtained from the real Jacobi rotation of the
//! phase-factored 2x2 block.

use crate::error::GqdError;
use crate::matrix::{C64, ComplexMatrix};

/// Result of a Hermitian eigendecomposition: real eigenvalues in descending
/// order and the matching orthonormal eigenvectors as matrix columns, so that
/// `A = V diag(eigenvalues) V^dagger`.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    /// Rebuilds `V diag(lambda) V^dagger`; tests compare this against the input.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, |r, c| {
            (0..n)
                .map(|k| v[(r, k)] * self.eigenvalues[k] * v[(c, k)].conj())
                .sum()
        })
    }
}

/// Hermiticity tolerance on the input; larger deviations are an error rather
/// than something to silently symmetrize away.
const HERMITICITY_TOL: f64 = 1e-10;

/// Convergence threshold on the Frobenius norm of the off-diagonal part.
const OFF_DIAGONAL_TOL: f64 = 1e-13;

const MAX_SWEEPS: usize = 60;

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            sum += 2.0 * a[(p, q)].norm_sqr();
        }
    }
    sum.sqrt()
}

/// Diagonalizes a Hermitian matrix.
///
/// Errors when the input deviates from Hermiticity by more than 1e-10 or (not
/// observed in practice at these dimensions) when the sweep limit is reached.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<Spectrum, GqdError> {
    let deviation = a.hermiticity_error();
    if deviation > HERMITICITY_TOL {
        return Err(GqdError::NotHermitian {
            deviation,
            tolerance: HERMITICITY_TOL,
        });
    }

    let n = a.dim();
    let mut m = a.clone();
    m.hermitize(); // remove the sub-tolerance asymmetry so rotations stay exact
    let mut v = ComplexMatrix::identity(n);

    let mut converged = false;
    for _s in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) < OFF_DIAGONAL_TOL {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&m) >= OFF_DIAGONAL_TOL {
        return Err(GqdError::EigenNoConvergence {
            sweeps: MAX_SWEEPS,
            off_norm: off_diagonal_norm(&m),
        });
    }

    // Extract, then sort descending carrying the eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    let raw: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| raw[j].total_cmp(&raw[i]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| raw[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);

    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Annihilates the (p, q) entry: with the block [[a, d], [conj(d), b]] and
/// d = |d| e^{i alpha}, the phase diag(1, e^{-i alpha}) reduces it to a real
/// symmetric block, which the classic Jacobi rotation (theta = (b-a)/2|d|,
/// t the smaller root of t^2 + 2 theta t - 1 = 0) then diagonalizes.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let d = m[(p, q)];
    let r = d.norm();
    if r == 0.0 {
        return;
    }
    let a = m[(p, p)].re;
    let b = m[(q, q)].re;
    let phase = d / r; // e^{i alpha}

    let theta = (b - a) / (2.0 * r);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G is identity except G[p][p] = c, G[p][q] = s, G[q][p] = -s/phase,
    // G[q][q] = c/phase; update A <- G^dagger A G and V <- V G.
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -s * phase.conj();
    let g_qq = c * phase.conj();

    let n = m.dim();
    // Columns: B = A G.
    for i in 0..n {
        let aip = m[(i, p)];
        let aiq = m[(i, q)];
        m[(i, p)] = aip * g_pp + aiq * g_qp;
        m[(i, q)] = aip * g_pq + aiq * g_qq;
    }
    // Rows: A <- G^dagger B.
    for j in 0..n {
        let apj = m[(p, j)];
        let aqj = m[(q, j)];
        m[(p, j)] = g_pp.conj() * apj + g_qp.conj() * aqj;
        m[(q, j)] = g_pq.conj() * apj + g_qq.conj() * aqj;
    }
    // Exact zeros on the annihilated pair keep roundoff from accumulating.
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);
    let hpp = m[(p, p)];
    let hqq = m[(q, q)];
    m[(p, p)] = C64::new(hpp.re, 0.0);
    m[(q, q)] = C64::new(hqq.re, 0.0);

    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * g_pp + viq * g_qp;
        v[(i, q)] = vip * g_pq + viq * g_qq;
    }
}
