//! The two tripartite reference states whose dissipative dynamics this crate
//! reproduces: the GHZ state (|000> + |111>)/sqrt(2) and the W state
//! (|100> + |010> + sqrt(2)|001>)/2.

use crate::density::{DensityMatrix, pure_state_density};
use crate::matrix::C64;

/// Which three-qubit reference state to start from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InitialState {
    Ghz,
    W,
}

impl InitialState {
    pub fn label(self) -> &'static str {
        match self {
            InitialState::Ghz => "ghz",
            InitialState::W => "w",
        }
    }
}

/// The pure initial density matrix of the chosen state. Qubit 1 is the most
/// significant bit, so |001> sits at index 1 and |100> at index 4.
pub fn initial_density(state: InitialState) -> DensityMatrix {
    let mut psi = vec![C64::new(0.0, 0.0); 8];
    match state {
        InitialState::Ghz => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            psi[0b000] = C64::new(h, 0.0);
            psi[0b111] = C64::new(h, 0.0);
        }
        InitialState::W => {
            psi[0b001] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            psi[0b010] = C64::new(0.5, 0.0);
            psi[0b100] = C64::new(0.5, 0.0);
        }
    }
    pure_state_density(&psi).expect("reference states are valid by construction")
}
