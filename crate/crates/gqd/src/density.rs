//! Density matrices and the entropic quantities built on them.
//!
//! A [`DensityMatrix`] wraps a validated Hermitian, unit-trace, positive
//! semidefinite matrix of one or three qubits. Qubit 1 occupies the most
//! significant bit of the computational-basis index, so the 8-dimensional
//! basis is |000>, |001>, ..., |111> at indices 0..=7.

use crate::eigen::hermitian_eig;
use crate::error::GqdError;
use crate::matrix::{C64, ComplexMatrix};

/// Maximum allowed |rho - rho^dagger| entry for a valid state.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Maximum allowed |tr(rho) - 1| for a valid state.
pub const TRACE_TOL: f64 = 1e-12;
/// Most negative eigenvalue tolerated before a state is rejected.
pub const PSD_TOL: f64 = -1e-10;
/// Eigenvalues below this are treated as exact zeros inside entropies.
pub const ENTROPY_EIGENVALUE_CLIP: f64 = 1e-12;
/// Maximum probability weight a state may put on the null space of the
/// reference state in a relative entropy before the result is declared +inf.
pub const SUPPORT_TOL: f64 = 1e-10;

/// A validated quantum state of one qubit (dim 2) or three qubits (dim 8).
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    qubit_count: usize,
}

impl DensityMatrix {
    /// Validates and wraps a candidate state. The matrix must be 2x2 or 8x8,
    /// Hermitian within 1e-12, unit trace within 1e-12, and positive
    /// semidefinite with eigenvalues no lower than -1e-10.
    pub fn new(matrix: ComplexMatrix) -> Result<Self, GqdError> {
        let qubit_count = match matrix.dim() {
            2 => 1,
            8 => 3,
            dim => return Err(GqdError::InvalidDimension { dim }),
        };
        let herm = matrix.hermiticity_error();
        if herm > HERMITICITY_TOL {
            return Err(GqdError::NotHermitian {
                deviation: herm,
                tolerance: HERMITICITY_TOL,
            });
        }
        let tr = matrix.trace();
        let trace_dev = (tr - C64::new(1.0, 0.0)).norm();
        if trace_dev > TRACE_TOL {
            return Err(GqdError::TraceNotUnit {
                deviation: trace_dev,
                tolerance: TRACE_TOL,
            });
        }
        let spectrum = hermitian_eig(&matrix)?;
        let min_eigenvalue = *spectrum
            .eigenvalues
            .last()
            .expect("dimension checked above");
        if min_eigenvalue < PSD_TOL {
            return Err(GqdError::NotPositiveSemidefinite {
                min_eigenvalue,
                tolerance: PSD_TOL,
            });
        }
        Ok(Self {
            matrix,
            qubit_count,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// |psi><psi| for a normalized state vector of dimension 2 or 8.
pub fn pure_state_density(psi: &[C64]) -> Result<DensityMatrix, GqdError> {
    let dim = psi.len();
    let m = ComplexMatrix::from_fn(dim, |r, c| psi[r] * psi[c].conj());
    DensityMatrix::new(m)
}

/// The maximally mixed state I/dim.
pub fn maximally_mixed(dim: usize) -> Result<DensityMatrix, GqdError> {
    DensityMatrix::new(ComplexMatrix::identity(dim).scaled(1.0 / dim as f64))
}

/// Traces out two of the three qubits, keeping `keep` (1, 2, or 3; qubit 1 is
/// the most significant bit). Returns the single-qubit reduced state.
pub fn partial_trace(rho: &DensityMatrix, keep: usize) -> Result<DensityMatrix, GqdError> {
    if rho.qubit_count() != 3 {
        return Err(GqdError::InvalidDimension { dim: rho.dim() });
    }
    if !(1..=3).contains(&keep) {
        return Err(GqdError::InvalidQubit { index: keep });
    }
    // Bit position of the kept qubit (qubit j sits at bit 3 - j), and the two
    // traced-out positions.
    let kb = 3 - keep;
    let others: Vec<usize> = (0..3).filter(|&b| b != kb).collect();
    let src = rho.matrix();
    let mut out = ComplexMatrix::zeros(2);
    for r in 0..2usize {
        for c in 0..2usize {
            let mut sum = C64::new(0.0, 0.0);
            for e0 in 0..2usize {
                for e1 in 0..2usize {
                    let env = (e0 << others[0]) | (e1 << others[1]);
                    sum += src[((r << kb) | env, (c << kb) | env)];
                }
            }
            out[(r, c)] = sum;
        }
    }
    DensityMatrix::new(out)
}

/// v * log2(v), continuously extended by 0 at and below v = 0.
pub(crate) fn xlog2(v: f64) -> f64 {
    if v <= 0.0 {
        0.0
    } else {
        v * v.log2()
    }
}

/// Shannon entropy (bits) of a probability vector; entries below the
/// eigenvalue clip contribute zero.
pub(crate) fn shannon_entropy(p: &[f64]) -> f64 {
    -p.iter()
        .filter(|&&v| v >= ENTROPY_EIGENVALUE_CLIP)
        .map(|&v| xlog2(v))
        .sum::<f64>()
}

/// Binary entropy h(p) = -p lg p - (1-p) lg (1-p) in bits.
pub(crate) fn binary_entropy(p: f64) -> f64 {
    shannon_entropy(&[p, 1.0 - p])
}

/// Von Neumann entropy S(rho) = -tr(rho lg rho) in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64, GqdError> {
    let spectrum = hermitian_eig(rho.matrix())?;
    Ok(shannon_entropy(&spectrum.eigenvalues))
}

/// Quantum relative entropy S(rho || sigma) = tr(rho lg rho) - tr(rho lg sigma)
/// in bits. Errors with a support violation when rho places more than 1e-10
/// probability weight on the null space of sigma (the divergence is +inf).
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64, GqdError> {
    if rho.dim() != sigma.dim() {
        return Err(GqdError::InvalidDimension { dim: sigma.dim() });
    }
    let s_rho = von_neumann_entropy(rho)?;
    let sig = hermitian_eig(sigma.matrix())?;
    let n = sigma.dim();
    let rm = rho.matrix();
    let mut cross = 0.0; // tr(rho lg sigma), summed over the support of sigma
    let mut null_weight = 0.0;
    for k in 0..n {
        // <w_k| rho |w_k> for eigenvector w_k of sigma.
        let mut weight = 0.0;
        for r in 0..n {
            let mut row = C64::new(0.0, 0.0);
            for c in 0..n {
                row += rm[(r, c)] * sig.eigenvectors[(c, k)];
            }
            weight += (sig.eigenvectors[(r, k)].conj() * row).re;
        }
        let weight = weight.max(0.0);
        let mu = sig.eigenvalues[k];
        if mu >= ENTROPY_EIGENVALUE_CLIP {
            cross += weight * mu.log2();
        } else {
            null_weight += weight;
        }
    }
    if null_weight > SUPPORT_TOL {
        return Err(GqdError::SupportViolation {
            weight: null_weight,
        });
    }
    let value = -s_rho - cross;
    // Klein's inequality guarantees non-negativity; snap roundoff-scale
    // negatives to zero so callers can rely on it.
    if value < 0.0 && value > -1e-9 {
        Ok(0.0)
    } else {
        Ok(value)
    }
}
