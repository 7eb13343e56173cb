//! Cross-validation of the closed-form discord expressions against the
//! basis-search minimiser, including the regions where the closed forms stop
//! tracking the global minimum (they follow the sigma_z-measurement branch
//! of the objective, which other bases undercut at intermediate times).

use gqd::{
    closed_form_discord, depol_discord_variant, evolve_analytic, gqd_objective, minimize_gqd,
    ChannelKind, ChannelSpec, ClosedFormKind, DensityMatrix, InitialState, MeasurementBasis,
    ScaledTime,
};

const GRID_KT: [f64; 7] = [0.0, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0];

fn evolved(state: InitialState, kind: ChannelKind, t: f64) -> DensityMatrix {
    let channel = ChannelSpec::new(kind, 1.0).unwrap();
    evolve_analytic(state, &channel, ScaledTime::new(t).unwrap())
}

fn minimum(state: InitialState, kind: ChannelKind, t: f64) -> f64 {
    minimize_gqd(&evolved(state, kind, t)).unwrap().value
}

fn closed(kind: ClosedFormKind, t: f64) -> f64 {
    closed_form_discord(kind, ScaledTime::new(t).unwrap())
}

/// Closed forms exist exactly for the six pairs that admit one.
#[test]
fn closed_form_coverage() {
    use ChannelKind::*;
    use InitialState::*;
    let table = [
        (Ghz, PauliX, Some(ClosedFormKind::GhzX)),
        (Ghz, PauliY, Some(ClosedFormKind::GhzY)),
        (Ghz, PauliZ, Some(ClosedFormKind::GhzZ)),
        (Ghz, Depolarising, Some(ClosedFormKind::GhzDepol)),
        (W, PauliX, None),
        (W, PauliY, None),
        (W, PauliZ, Some(ClosedFormKind::WZ)),
        (W, Depolarising, Some(ClosedFormKind::WDepol)),
    ];
    for (state, kind, expected) in table {
        assert_eq!(ClosedFormKind::for_pair(state, kind), expected);
    }
}

/// The closed form can never undercut the true minimum: it evaluates the
/// objective at one particular family of bases.
#[test]
fn closed_form_upper_bounds_minimum() {
    let cases = [
        (InitialState::Ghz, ChannelKind::PauliY, ClosedFormKind::GhzY),
        (InitialState::Ghz, ChannelKind::PauliZ, ClosedFormKind::GhzZ),
        (
            InitialState::Ghz,
            ChannelKind::Depolarising,
            ClosedFormKind::GhzDepol,
        ),
        (InitialState::W, ChannelKind::PauliZ, ClosedFormKind::WZ),
        (
            InitialState::W,
            ChannelKind::Depolarising,
            ClosedFormKind::WDepol,
        ),
    ];
    for (state, channel, kind) in cases {
        for t in GRID_KT {
            let min = minimum(state, channel, t);
            let branch = closed(kind, t);
            assert!(
                min <= branch + 1e-9,
                "{kind:?} at kt={t}: minimum {min:.9} exceeds branch value {branch:.9}"
            );
        }
    }
}

/// For the phase-flip and depolarising GHZ evolutions and the phase-flip W
/// evolution, the sigma_z branch IS the global minimum at every grid time.
#[test]
fn z_branch_globally_optimal_for_three_kinds() {
    let cases = [
        (InitialState::Ghz, ChannelKind::PauliZ, ClosedFormKind::GhzZ),
        (
            InitialState::Ghz,
            ChannelKind::Depolarising,
            ClosedFormKind::GhzDepol,
        ),
        (InitialState::W, ChannelKind::PauliZ, ClosedFormKind::WZ),
    ];
    for (state, channel, kind) in cases {
        for t in GRID_KT {
            let min = minimum(state, channel, t);
            let branch = closed(kind, t);
            assert!(
                (min - branch).abs() <= 1e-6,
                "{kind:?} at kt={t}: |{min:.9} - {branch:.9}| > 1e-6"
            );
        }
    }
}

/// The bit-phase-flip GHZ closed form is the global minimum early on but is
/// undercut by other bases from kt ~ 0.16; both regimes are pinned so a
/// regression in either the closed form or the search gets caught.
#[test]
fn ghz_bit_phase_flip_branch_departure() {
    for t in [0.0, 0.05, 0.1, 0.15] {
        let min = minimum(InitialState::Ghz, ChannelKind::PauliY, t);
        let branch = closed(ClosedFormKind::GhzY, t);
        assert!(
            (min - branch).abs() <= 1e-6,
            "branch should be optimal at kt={t}: min {min:.9}, branch {branch:.9}"
        );
    }
    for (t, at_least) in [(0.25, 5e-2), (0.5, 5e-2), (1.0, 1e-5)] {
        let min = minimum(InitialState::Ghz, ChannelKind::PauliY, t);
        let branch = closed(ClosedFormKind::GhzY, t);
        assert!(
            branch - min >= at_least,
            "expected the search to undercut the branch by >= {at_least:.1e} at kt={t}, got {:.3e}",
            branch - min
        );
    }
}

/// The depolarised W closed form departs from the global minimum at
/// intermediate times and re-converges once everything has decayed.
#[test]
fn w_depolarising_branch_departure() {
    for t in [0.0, 2.0] {
        let min = minimum(InitialState::W, ChannelKind::Depolarising, t);
        let branch = closed(ClosedFormKind::WDepol, t);
        assert!((min - branch).abs() <= 1e-6);
    }
    let min = minimum(InitialState::W, ChannelKind::Depolarising, 0.5);
    let branch = closed(ClosedFormKind::WDepol, 0.5);
    let gap = branch - min;
    assert!(
        (1e-5..1e-3).contains(&gap),
        "expected a visible mid-time departure at kt=0.5, got {gap:.3e}"
    );
}

/// Under the bit-flip channel the GHZ objective at the sigma_z basis stays
/// exactly 1 forever (that branch is flat), while the global minimum drops
/// below it once the state has dephased enough in the x basis and heads to
/// zero: the long-time state is diagonal in a product basis, hence classical.
#[test]
fn ghz_bit_flip_flat_branch_vs_decaying_minimum() {
    let z_basis = MeasurementBasis::sigma_z();
    for t in [0.0, 0.1, 0.5, 1.0, 2.0] {
        let rho = evolved(InitialState::Ghz, ChannelKind::PauliX, t);
        let branch = gqd_objective(&rho, &z_basis);
        assert!(
            (branch - 1.0).abs() <= 1e-12,
            "z-branch objective should stay 1, got {branch:.15} at kt={t}"
        );
        assert_eq!(closed(ClosedFormKind::GhzX, t), 1.0);
    }

    assert!((minimum(InitialState::Ghz, ChannelKind::PauliX, 0.05) - 1.0).abs() <= 1e-6);
    let mid = minimum(InitialState::Ghz, ChannelKind::PauliX, 0.1);
    assert!(
        (0.7..0.9).contains(&mid),
        "expected the minimum to sit near 0.80 at kt=0.1, got {mid:.6}"
    );
    assert!(minimum(InitialState::Ghz, ChannelKind::PauliX, 5.0) <= 1e-6);
}

/// The bit-flip and bit-phase-flip W evolutions have no closed form; the
/// minimiser is the only route, the two channels give identical discord (they
/// differ by a local unitary), and the value decays to zero rather than to a
/// positive plateau.
#[test]
fn w_bit_flip_family_decays_to_zero() {
    for t in [0.5, 5.0] {
        let x = minimum(InitialState::W, ChannelKind::PauliX, t);
        let y = minimum(InitialState::W, ChannelKind::PauliY, t);
        assert!(
            (x - y).abs() <= 1e-6,
            "sigma_x/sigma_y discord should coincide at kt={t}: {x:.9} vs {y:.9}"
        );
    }
    let early = minimum(InitialState::W, ChannelKind::PauliX, 0.25);
    assert!((early - 0.3755396744).abs() <= 1e-7, "got {early:.10}");
    assert!(minimum(InitialState::W, ChannelKind::PauliX, 5.0) <= 1e-6);
}

/// Frozen spot values for the closed forms (independently derived spectra).
#[test]
fn closed_form_frozen_values() {
    // All six start at the pure-state values.
    for kind in [
        ClosedFormKind::GhzX,
        ClosedFormKind::GhzY,
        ClosedFormKind::GhzZ,
        ClosedFormKind::GhzDepol,
    ] {
        assert!((closed(kind, 0.0) - 1.0).abs() <= 1e-12);
    }
    for kind in [ClosedFormKind::WZ, ClosedFormKind::WDepol] {
        assert!((closed(kind, 0.0) - 1.5).abs() <= 1e-12);
    }
    // Phase-flip GHZ at kt = ln(2)/6: e^{-6 kt} = 1/2.
    let t = std::f64::consts::LN_2 / 6.0;
    assert!((closed(ClosedFormKind::GhzZ, t) - 0.18872187554086717).abs() <= 1e-15);
    // Everything decays to zero.
    for kind in [
        ClosedFormKind::GhzY,
        ClosedFormKind::GhzZ,
        ClosedFormKind::GhzDepol,
        ClosedFormKind::WZ,
        ClosedFormKind::WDepol,
    ] {
        assert!(closed(kind, 12.0) <= 1e-7, "{kind:?} has not decayed");
    }
}

/// Closed forms decay monotonically (no revivals for these channels).
#[test]
fn closed_forms_monotone_nonincreasing() {
    for kind in [
        ClosedFormKind::GhzY,
        ClosedFormKind::GhzZ,
        ClosedFormKind::GhzDepol,
        ClosedFormKind::WZ,
        ClosedFormKind::WDepol,
    ] {
        let mut prev = f64::INFINITY;
        for i in 0..=60 {
            let value = closed(kind, 0.05 * i as f64);
            assert!(
                value <= prev + 1e-12,
                "{kind:?} increased at step {i}: {prev:.12} -> {value:.12}"
            );
            prev = value;
        }
    }
}

/// The uncorrected printed groupings for the two depolarising expressions are
/// kept callable as diagnostics; this pins how far each sits from the
/// corrected form so the verification report stays meaningful.
#[test]
fn depolarising_variant_residuals() {
    assert!(depol_discord_variant(ClosedFormKind::GhzZ, ScaledTime::new(0.5).unwrap()).is_none());

    // The alternative GHZ grouping starts correct but then runs below the
    // corrected curve before both decay to zero.
    let t0 = ScaledTime::new(0.0).unwrap();
    let ghz_raw0 = depol_discord_variant(ClosedFormKind::GhzDepol, t0).unwrap();
    assert!((ghz_raw0 - 1.0).abs() <= 1e-12);
    let t = ScaledTime::new(0.1).unwrap();
    let ghz_raw = depol_discord_variant(ClosedFormKind::GhzDepol, t).unwrap();
    let ghz_corrected = closed_form_discord(ClosedFormKind::GhzDepol, t);
    assert!(
        ghz_corrected - ghz_raw >= 1e-2,
        "expected the raw grouping to undershoot, got residual {:.3e}",
        ghz_corrected - ghz_raw
    );
    for probe in [0.05, 0.25, 0.5] {
        let tp = ScaledTime::new(probe).unwrap();
        let raw = depol_discord_variant(ClosedFormKind::GhzDepol, tp).unwrap();
        assert!(raw <= closed_form_discord(ClosedFormKind::GhzDepol, tp));
    }

    // The alternative W grouping is off by a full unit already at t = 0.
    let w_raw0 = depol_discord_variant(ClosedFormKind::WDepol, t0).unwrap();
    assert!((w_raw0 - 2.5).abs() <= 1e-12);
}

/// Discord is the more robust quantity: wherever the entanglement bound is
/// still positive, the corresponding discord branch value is positive too —
/// and for the bit-phase-flip channel the discord stays positive even after
/// the entanglement bound has died.
#[test]
fn discord_outlives_entanglement_bound() {
    use gqd::{sudden_death_time, tau3, Tau3Kind};
    for i in 0..=80 {
        let t = 0.05 * i as f64;
        let st = ScaledTime::new(t).unwrap();
        if tau3(Tau3Kind::GhzX, st) > 0.0 {
            assert!(closed(ClosedFormKind::GhzX, t) > 0.0);
        }
        if tau3(Tau3Kind::GhzY, st) > 0.0 {
            assert!(closed(ClosedFormKind::GhzY, t) > 0.0);
        }
    }
    let death = sudden_death_time(Tau3Kind::GhzY).unwrap();
    let after = ScaledTime::new(death + 0.5).unwrap();
    assert_eq!(tau3(Tau3Kind::GhzY, after), 0.0);
    assert!(closed_form_discord(ClosedFormKind::GhzY, after) > 0.0);
}

/// Minimiser results carry coherent bookkeeping: canonical angles, a
/// non-negative refinement residual and a positive evaluation count.
#[test]
fn minimiser_bookkeeping() {
    let rho = evolved(InitialState::Ghz, ChannelKind::PauliZ, 0.5);
    let result = minimize_gqd(&rho).unwrap();
    assert!(result.value.is_finite() && result.value >= 0.0);
    assert!(result.residual >= 0.0 && result.residual.is_finite());
    assert!(result.evaluations > 100_000);
    for j in 0..3 {
        let theta = result.argmin.theta()[j];
        let phi = result.argmin.phi()[j];
        assert!((0.0..=std::f64::consts::PI).contains(&theta));
        assert!((0.0..std::f64::consts::TAU).contains(&phi));
    }

    // Re-evaluating the objective at the reported argmin reproduces the
    // reported value (the argmin is not an unrelated by-product).
    let replay = gqd_objective(&rho, &result.argmin);
    assert!((replay.max(0.0) - result.value).abs() <= 1e-9);
}
