//! Markovian dissipative channels acting independently on each qubit.
//!
//! Each qubit couples with equal strength `kappa` to its own bath through
//! Lindblad operators `sqrt(kappa) sigma_alpha` — a single Pauli axis for the
//! `PauliX`/`PauliY`/`PauliZ` channels, all three axes for `Depolarising`.
//! The system Hamiltonian is zero, so the master equation reduces to
//! `d rho / dt = kappa * [sum_i sigma_i rho sigma_i - c rho]` with `c` the
//! number of Lindblad operators, and every result depends on time only
//! through the dimensionless product `kt = kappa * t`.
//!
//! Two routes produce the evolved state and deliberately stay independent:
//! [`evolve_analytic`] assembles closed-form matrices whose entries are
//! exponentials in `kt`, while [`evolve_numeric`] integrates the master
//! equation with a classical fixed-step RK4. Tests hold the two routes
//! together to 1e-7; neither is ever defined in terms of the other.

use crate::density::DensityMatrix;
use crate::error::GqdError;
use crate::matrix::{C64, ComplexMatrix};
use crate::states::{InitialState, initial_density};

/// The noise family applied identically to all three qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    PauliX,
    PauliY,
    PauliZ,
    Depolarising,
}

impl ChannelKind {
    pub fn label(self) -> &'static str {
        match self {
            ChannelKind::PauliX => "x",
            ChannelKind::PauliY => "y",
            ChannelKind::PauliZ => "z",
            ChannelKind::Depolarising => "depol",
        }
    }

    pub const ALL: [ChannelKind; 4] = [
        ChannelKind::PauliX,
        ChannelKind::PauliY,
        ChannelKind::PauliZ,
        ChannelKind::Depolarising,
    ];
}

/// A channel kind plus the common qubit-bath coupling rate `kappa > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelSpec {
    kind: ChannelKind,
    kappa: f64,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, kappa: f64) -> Result<Self, GqdError> {
        if !kappa.is_finite() || kappa <= 0.0 {
            return Err(GqdError::InvalidParameter {
                name: "kappa",
                value: kappa,
            });
        }
        Ok(Self { kind, kappa })
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

/// Dimensionless time `kt = kappa * t`, the only time variable the evolved
/// states depend on.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ScaledTime {
    kt: f64,
}

impl ScaledTime {
    pub fn new(kt: f64) -> Result<Self, GqdError> {
        if !kt.is_finite() || kt < 0.0 {
            return Err(GqdError::InvalidParameter {
                name: "kt",
                value: kt,
            });
        }
        Ok(Self { kt })
    }

    pub fn value(self) -> f64 {
        self.kt
    }
}

/// Writes `v` symmetrically at (r, c) and (c, r); all analytic matrices here
/// are real symmetric.
fn sym_set(m: &mut ComplexMatrix, r: usize, c: usize, v: f64) {
    m[(r, c)] = C64::new(v, 0.0);
    m[(c, r)] = C64::new(v, 0.0);
}

fn ghz_pauli_x(kt: f64) -> ComplexMatrix {
    let e4 = (-4.0 * kt).exp();
    let a_plus = 1.0 + 3.0 * e4;
    let a_minus = 1.0 - e4;
    let mut m = ComplexMatrix::zeros(8);
    sym_set(&mut m, 0, 0, a_plus / 8.0);
    sym_set(&mut m, 7, 7, a_plus / 8.0);
    sym_set(&mut m, 0, 7, a_plus / 8.0);
    for i in 1..7 {
        m[(i, i)] = C64::new(a_minus / 8.0, 0.0);
        m[(i, 7 - i)] = C64::new(a_minus / 8.0, 0.0);
    }
    m
}

fn ghz_pauli_y(kt: f64) -> ComplexMatrix {
    let e2 = (-2.0 * kt).exp();
    let e4 = e2 * e2;
    let e6 = e4 * e2;
    let a_plus = 1.0 + 3.0 * e4;
    let a_minus = 1.0 - e4;
    let b1 = 3.0 * e2 + e6;
    let b2 = e2 - e6;
    let mut m = ComplexMatrix::zeros(8);
    sym_set(&mut m, 0, 0, a_plus / 8.0);
    sym_set(&mut m, 7, 7, a_plus / 8.0);
    sym_set(&mut m, 0, 7, b1 / 8.0);
    for i in 1..7 {
        m[(i, i)] = C64::new(a_minus / 8.0, 0.0);
        m[(i, 7 - i)] = C64::new(-b2 / 8.0, 0.0);
    }
    m
}

fn ghz_pauli_z(kt: f64) -> ComplexMatrix {
    let e6 = (-6.0 * kt).exp();
    let mut m = ComplexMatrix::zeros(8);
    sym_set(&mut m, 0, 0, 0.5);
    sym_set(&mut m, 7, 7, 0.5);
    sym_set(&mut m, 0, 7, e6 / 2.0);
    m
}

fn ghz_depolarising(kt: f64) -> ComplexMatrix {
    let e8 = (-8.0 * kt).exp();
    let e12 = (-12.0 * kt).exp();
    let a_plus = 1.0 + 3.0 * e8;
    let a_minus = 1.0 - e8;
    let gamma = 4.0 * e12;
    let mut m = ComplexMatrix::zeros(8);
    sym_set(&mut m, 0, 0, a_plus / 8.0);
    sym_set(&mut m, 7, 7, a_plus / 8.0);
    sym_set(&mut m, 0, 7, gamma / 8.0);
    for i in 1..7 {
        m[(i, i)] = C64::new(a_minus / 8.0, 0.0);
    }
    m
}

/// The sigma_x and sigma_y channels act on the W state identically up to the
/// sign `s` of a family of coherences (`s = +1` for x, `-1` for y).
fn w_pauli_xy(kt: f64, s: f64) -> ComplexMatrix {
    let e2 = (-2.0 * kt).exp();
    let e4 = e2 * e2;
    let e6 = e4 * e2;
    let a1 = 1.0 + e2 + e4 + e6;
    let a2 = 1.0 + e2 - e4 - e6;
    let a3 = 1.0 - e2 - e4 + e6;
    let a4 = 1.0 - e2 + e4 - e6;
    let b_plus = 1.0 + e6;
    let b_minus = 1.0 - e6;
    let r2 = std::f64::consts::SQRT_2;
    let mut m = ComplexMatrix::zeros(8);
    let f = 1.0 / 16.0;
    sym_set(&mut m, 0, 0, 2.0 * a2 * f);
    sym_set(&mut m, 0, 3, s * r2 * a2 * f);
    sym_set(&mut m, 0, 5, s * r2 * a2 * f);
    sym_set(&mut m, 0, 6, s * a2 * f);
    sym_set(&mut m, 1, 1, 2.0 * a1 * f);
    sym_set(&mut m, 1, 2, r2 * a1 * f);
    sym_set(&mut m, 1, 4, r2 * a1 * f);
    sym_set(&mut m, 1, 7, s * a3 * f);
    sym_set(&mut m, 2, 2, 2.0 * b_plus * f);
    sym_set(&mut m, 2, 4, a1 * f);
    sym_set(&mut m, 2, 7, s * r2 * a3 * f);
    sym_set(&mut m, 3, 3, 2.0 * b_minus * f);
    sym_set(&mut m, 3, 5, a4 * f);
    sym_set(&mut m, 3, 6, r2 * a4 * f);
    sym_set(&mut m, 4, 4, 2.0 * b_plus * f);
    sym_set(&mut m, 4, 7, s * r2 * a3 * f);
    sym_set(&mut m, 5, 5, 2.0 * b_minus * f);
    sym_set(&mut m, 5, 6, r2 * a4 * f);
    sym_set(&mut m, 6, 6, 2.0 * a4 * f);
    sym_set(&mut m, 7, 7, 2.0 * a3 * f);
    m
}

fn w_pauli_z(kt: f64) -> ComplexMatrix {
    let x = (-4.0 * kt).exp();
    let r2 = std::f64::consts::SQRT_2;
    let mut m = ComplexMatrix::zeros(8);
    sym_set(&mut m, 1, 1, 0.5);
    sym_set(&mut m, 2, 2, 0.25);
    sym_set(&mut m, 4, 4, 0.25);
    sym_set(&mut m, 1, 2, r2 * x / 4.0);
    sym_set(&mut m, 1, 4, r2 * x / 4.0);
    sym_set(&mut m, 2, 4, x / 4.0);
    m
}

fn w_depolarising(kt: f64) -> ComplexMatrix {
    let e4 = (-4.0 * kt).exp();
    let e8 = e4 * e4;
    let e12 = e8 * e4;
    let a1 = 1.0 + e4 + e8 + e12;
    let a2 = 1.0 + e4 - e8 - e12;
    let a3 = 1.0 - e4 - e8 + e12;
    let a4 = 1.0 - e4 + e8 - e12;
    let b_plus = 1.0 + e12;
    let b_minus = 1.0 - e12;
    let g_plus = e8 + e12;
    let g_minus = e8 - e12;
    let r2 = std::f64::consts::SQRT_2;
    let mut m = ComplexMatrix::zeros(8);
    let f = 1.0 / 8.0;
    let diag = [a2, a1, b_plus, b_minus, b_plus, b_minus, a4, a3];
    for (i, d) in diag.iter().enumerate() {
        m[(i, i)] = C64::new(d * f, 0.0);
    }
    sym_set(&mut m, 1, 2, r2 * g_plus * f);
    sym_set(&mut m, 1, 4, r2 * g_plus * f);
    sym_set(&mut m, 2, 4, g_plus * f);
    sym_set(&mut m, 3, 5, g_minus * f);
    sym_set(&mut m, 3, 6, r2 * g_minus * f);
    sym_set(&mut m, 5, 6, r2 * g_minus * f);
    m
}

/// Closed-form evolved state of `state` under `channel` at scaled time `t`.
/// The result is a valid density matrix at any `kt >= 0` and equals
/// `initial_density(state)` at `kt = 0`.
pub fn evolve_analytic(state: InitialState, channel: &ChannelSpec, t: ScaledTime) -> DensityMatrix {
    let kt = t.value();
    let m = match (state, channel.kind()) {
        (InitialState::Ghz, ChannelKind::PauliX) => ghz_pauli_x(kt),
        (InitialState::Ghz, ChannelKind::PauliY) => ghz_pauli_y(kt),
        (InitialState::Ghz, ChannelKind::PauliZ) => ghz_pauli_z(kt),
        (InitialState::Ghz, ChannelKind::Depolarising) => ghz_depolarising(kt),
        (InitialState::W, ChannelKind::PauliX) => w_pauli_xy(kt, 1.0),
        (InitialState::W, ChannelKind::PauliY) => w_pauli_xy(kt, -1.0),
        (InitialState::W, ChannelKind::PauliZ) => w_pauli_z(kt),
        (InitialState::W, ChannelKind::Depolarising) => w_depolarising(kt),
    };
    DensityMatrix::new(m).expect("analytic evolution preserves density-matrix validity")
}

#[derive(Clone, Copy)]
enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    fn for_kind(kind: ChannelKind) -> &'static [Axis] {
        match kind {
            ChannelKind::PauliX => &[Axis::X],
            ChannelKind::PauliY => &[Axis::Y],
            ChannelKind::PauliZ => &[Axis::Z],
            ChannelKind::Depolarising => &[Axis::X, Axis::Y, Axis::Z],
        }
    }
}

/// Adds `sigma_axis^(pos) rho sigma_axis^(pos)` into `out`, where `pos` is the
/// bit position of the target qubit. Conjugating by a single-qubit Pauli only
/// permutes entries and flips signs: sigma_x moves rho[a^m, b^m] to (a, b);
/// sigma_z multiplies rho[a, b] by (-1)^(bit(a) xor bit(b)); sigma_y does both.
fn add_pauli_conjugation(out: &mut ComplexMatrix, rho: &ComplexMatrix, axis: Axis, pos: usize) {
    let m = 1usize << pos;
    let n = rho.dim();
    for a in 0..n {
        for b in 0..n {
            let (sa, sb, sign) = match axis {
                Axis::X => (a ^ m, b ^ m, 1.0),
                Axis::Y => (a ^ m, b ^ m, parity_sign(a, b, pos)),
                Axis::Z => (a, b, parity_sign(a, b, pos)),
            };
            out[(a, b)] += rho[(sa, sb)] * sign;
        }
    }
}

fn parity_sign(a: usize, b: usize, pos: usize) -> f64 {
    if ((a ^ b) >> pos) & 1 == 1 { -1.0 } else { 1.0 }
}

/// Master-equation right-hand side with `kappa` factored out, i.e. the
/// generator of evolution in the dimensionless time `kt`. Writes
/// `sum_i sigma_i rho sigma_i - c rho` into `out`.
pub(crate) fn scaled_lindblad_rhs_into(
    rho: &ComplexMatrix,
    kind: ChannelKind,
    out: &mut ComplexMatrix,
) {
    out.fill_zero();
    let axes = Axis::for_kind(kind);
    for &axis in axes {
        for pos in 0..3 {
            add_pauli_conjugation(out, rho, axis, pos);
        }
    }
    out.axpy(-3.0 * axes.len() as f64, rho);
}

/// Right-hand side of the master equation `d rho / dt` in physical time,
/// including the factor `kappa`. The result is traceless and Hermitian.
///
/// Panics if `rho` is not a three-qubit state; the Lindblad operators act on
/// three qubits.
pub fn lindblad_rhs(rho: &DensityMatrix, channel: &ChannelSpec) -> ComplexMatrix {
    assert_eq!(
        rho.qubit_count(),
        3,
        "the Lindblad generator is defined for three-qubit states"
    );
    let mut out = ComplexMatrix::zeros(8);
    scaled_lindblad_rhs_into(rho.matrix(), channel.kind(), &mut out);
    out.scale_assign(channel.kappa());
    out
}

/// Integrates the master equation from `rho0` for a scaled-time span `t`
/// with fixed-step classical RK4. The step is given in `kt` units; the actual
/// step is `t / ceil(t / step)` so the span divides evenly. Each step the
/// iterate is re-Hermitized and trace-renormalized to keep roundoff from
/// drifting the state off the physical manifold.
pub fn evolve_numeric_from(
    rho0: &DensityMatrix,
    channel: &ChannelSpec,
    t: ScaledTime,
    step: f64,
) -> Result<DensityMatrix, GqdError> {
    if rho0.qubit_count() != 3 {
        return Err(GqdError::InvalidDimension { dim: rho0.dim() });
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(GqdError::InvalidParameter {
            name: "step",
            value: step,
        });
    }
    let span = t.value();
    if span == 0.0 {
        return Ok(rho0.clone());
    }
    let kind = channel.kind();
    let steps = (span / step).ceil() as usize;
    let h = span / steps as f64;

    let mut rho = rho0.matrix().clone();
    let mut k1 = ComplexMatrix::zeros(8);
    let mut k2 = ComplexMatrix::zeros(8);
    let mut k3 = ComplexMatrix::zeros(8);
    let mut k4 = ComplexMatrix::zeros(8);
    let mut stage = ComplexMatrix::zeros(8);

    for idx in 0..steps {
        scaled_lindblad_rhs_into(&rho, kind, &mut k1);
        stage.copy_from(&rho);
        stage.axpy(0.5 * h, &k1);
        scaled_lindblad_rhs_into(&stage, kind, &mut k2);
        stage.copy_from(&rho);
        stage.axpy(0.5 * h, &k2);
        scaled_lindblad_rhs_into(&stage, kind, &mut k3);
        stage.copy_from(&rho);
        stage.axpy(h, &k3);
        scaled_lindblad_rhs_into(&stage, kind, &mut k4);

        rho.axpy(h / 6.0, &k1);
        rho.axpy(h / 3.0, &k2);
        rho.axpy(h / 3.0, &k3);
        rho.axpy(h / 6.0, &k4);

        rho.hermitize();
        let tr = rho.trace().re;
        if !tr.is_finite() || tr <= 0.0 {
            return Err(GqdError::NonFiniteIntegration { step: idx });
        }
        rho.scale_assign(1.0 / tr);
        if !rho.is_finite() {
            return Err(GqdError::NonFiniteIntegration { step: idx });
        }
    }
    DensityMatrix::new(rho)
}

/// Integrates the master equation from `initial_density(state)` to scaled
/// time `t`. Serves as the independent numerical oracle for
/// [`evolve_analytic`]; the two agree to better than 1e-7 at `step <= 1e-3`.
pub fn evolve_numeric(
    state: InitialState,
    channel: &ChannelSpec,
    t: ScaledTime,
    step: f64,
) -> Result<DensityMatrix, GqdError> {
    evolve_numeric_from(&initial_density(state), channel, t, step)
}
