//! Error type shared across the crate.

use thiserror::Error;

/// Failures surfaced by state validation, the eigensolver, the integrator
/// and the discord minimizer. Dimension mismatches in plain matrix algebra
/// are programming errors and panic instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GqdError {
    #[error("matrix is not Hermitian: max |A - A\u{2020}| = {deviation:.3e} exceeds {tolerance:.1e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("trace deviates from one by {deviation:.3e} (tolerance {tolerance:.1e})")]
    TraceNotUnit { deviation: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e} is below the floor {tolerance:.1e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64, tolerance: f64 },

    #[error("invalid value {value} for {name}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("dimension {dim} is not a 1- or 3-qubit dimension (2 or 8)")]
    InvalidDimension { dim: usize },

    #[error("invalid qubit index {index}: expected 1, 2 or 3")]
    InvalidQubit { index: usize },

    #[error("relative entropy diverges: weight {weight:.3e} of the state lies outside the reference's support")]
    SupportViolation { weight: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    EigenNoConvergence { sweeps: usize, off_norm: f64 },

    #[error("simplex refinement exceeded {iterations} iterations; best objective value found is {best_value:.12e}")]
    RefinementStalled { iterations: usize, best_value: f64 },

    #[error("integration produced a non-finite entry at step {step}")]
    NonFiniteIntegration { step: usize },
}
