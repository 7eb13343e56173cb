//! Lower bounds on the three-tangle of the evolved GHZ state under the three
//! Pauli channels, and the sudden-death time of the one bound that reaches
//! zero at finite time.
//!
//! Each bound is an explicit function of the scaled time `kappa * t`. Under
//! bit-flip and phase-damping noise the bound decays exponentially and only
//! vanishes asymptotically; under bit-phase-flip noise it hits zero at a
//! finite scaled time (entanglement sudden death), which [`sudden_death_time`]
//! locates by bisection.

use crate::channels::{ChannelKind, ScaledTime};

/// Tolerance (in scaled time) to which the sudden-death root is bisected.
const SUDDEN_DEATH_TOL: f64 = 1e-10;
/// Upper end of the initial bisection bracket; the bound is already negative
/// here for the one channel that admits sudden death.
const SUDDEN_DEATH_BRACKET_END: f64 = 2.0;

/// The three GHZ/Pauli-channel pairs with a tracked three-tangle lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tau3Kind {
    GhzX,
    GhzY,
    GhzZ,
}

impl Tau3Kind {
    /// The bound family for a channel, if one is tracked. The depolarising
    /// channel has no closed lower-bound expression here.
    pub fn for_channel(channel: ChannelKind) -> Option<Self> {
        match channel {
            ChannelKind::PauliX => Some(Tau3Kind::GhzX),
            ChannelKind::PauliY => Some(Tau3Kind::GhzY),
            ChannelKind::PauliZ => Some(Tau3Kind::GhzZ),
            ChannelKind::Depolarising => None,
        }
    }
}

/// The three-tangle lower bound at scaled time `t`. Starts at 1 (the GHZ
/// state is maximally three-tangled), never increases, and stays in [0, 1].
pub fn tau3(kind: Tau3Kind, t: ScaledTime) -> f64 {
    let kt = t.value();
    match kind {
        Tau3Kind::GhzX => (-4.0 * kt).exp(),
        Tau3Kind::GhzY => bit_phase_flip_bound(kt).max(0.0),
        Tau3Kind::GhzZ => (-6.0 * kt).exp(),
    }
}

/// The signed bit-phase-flip bound before clamping; its root is the
/// sudden-death time.
fn bit_phase_flip_bound(kt: f64) -> f64 {
    let e2 = (-2.0 * kt).exp();
    let e4 = e2 * e2;
    let e6 = e4 * e2;
    0.25 * (3.0 * e2 + e4 + e6 - 1.0)
}

/// The finite scaled time at which the bound reaches zero, if it does.
///
/// Only the bit-phase-flip bound dies suddenly; the other two decay
/// exponentially and return `None`. The root is bracketed on
/// `[0, 2]` and bisected to width 1e-10; the returned value is the upper end
/// of the final bracket, so `tau3` evaluates to exactly zero at and beyond
/// it.
pub fn sudden_death_time(kind: Tau3Kind) -> Option<f64> {
    match kind {
        Tau3Kind::GhzX | Tau3Kind::GhzZ => None,
        Tau3Kind::GhzY => {
            let mut lo = 0.0f64;
            let mut hi = SUDDEN_DEATH_BRACKET_END;
            debug_assert!(bit_phase_flip_bound(lo) > 0.0 && bit_phase_flip_bound(hi) < 0.0);
            while hi - lo > SUDDEN_DEATH_TOL {
                let mid = 0.5 * (lo + hi);
                if bit_phase_flip_bound(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Some(hi)
        }
    }
}
