//! Dissipative dynamics of global quantum discord and entanglement bounds
//! for three-qubit GHZ and W states.
//!
//! The crate models three qubits coupled independently to Markovian noise —
//! bit-flip, bit-phase-flip, phase-damping, or isotropic depolarising — and
//! follows two quantities along the evolution:
//!
//! * **Global quantum discord**: the gap between a state's correlations and
//!   what survives the best local projective measurement, minimized over all
//!   product bases ([`minimize_gqd`]) or evaluated from analytic expressions
//!   where the pair admits one ([`closed_form_discord`]).
//! * **Three-tangle lower bounds** for the GHZ state under the Pauli
//!   channels ([`tau3`]), including the finite sudden-death time of the
//!   bit-phase-flip bound ([`sudden_death_time`]).
//!
//! Every evolved state is available twice: in closed form
//! ([`evolve_analytic`]) and by integrating the master equation
//! ([`evolve_numeric`]); the test suite holds the two routes together. All
//! entropies are base-2, so discord is reported in bits, and time enters only
//! through the dimensionless product `kappa * t`.
//!
//! ```
//! use gqd::{ChannelKind, ClosedFormKind, ScaledTime, closed_form_discord};
//!
//! let kind = ClosedFormKind::GhzZ;
//! let fresh = closed_form_discord(kind, ScaledTime::new(0.0).unwrap());
//! assert!((fresh - 1.0).abs() < 1e-12);
//! ```

pub mod channels;
pub mod density;
pub mod discord;
pub mod eigen;
pub mod entanglement;
pub mod error;
pub mod matrix;
pub mod measurement;
pub mod states;

pub use channels::{
    ChannelKind, ChannelSpec, ScaledTime, evolve_analytic, evolve_numeric, evolve_numeric_from,
    lindblad_rhs,
};
pub use density::{
    DensityMatrix, maximally_mixed, partial_trace, pure_state_density, relative_entropy,
    von_neumann_entropy,
};
pub use discord::{
    ClosedFormKind, DiscordResult, closed_form_discord, depol_discord_variant, gqd_objective,
    minimize_gqd,
};
pub use eigen::{Spectrum, hermitian_eig};
pub use entanglement::{Tau3Kind, sudden_death_time, tau3};
pub use error::GqdError;
pub use matrix::{C64, ComplexMatrix, kron, pauli_x, pauli_y, pauli_z};
pub use measurement::{MeasurementBasis, pinch_global, pinch_local, projectors};
pub use states::{InitialState, initial_density};
