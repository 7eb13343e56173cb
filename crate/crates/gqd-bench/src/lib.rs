//! Benchmark-only crate: shared fixtures for `benches/kernels.rs`.

use gqd::{
    evolve_analytic, ChannelKind, ChannelSpec, DensityMatrix, InitialState, ScaledTime,
};

/// A dissipatively evolved state, the standard input for kernel benchmarks
/// (full rank, no special sparsity for the eigensolver to exploit).
pub fn evolved_state(state: InitialState, kind: ChannelKind, kt: f64) -> DensityMatrix {
    let channel = ChannelSpec::new(kind, 1.0).expect("valid rate");
    evolve_analytic(state, &channel, ScaledTime::new(kt).expect("valid time"))
}
