//! The `verify` subcommand: a self-check suite over the whole pipeline.
//! Every gated check prints PASS/FAIL with its measured residual; the exit
//! status reflects the gated checks only. Two additional informational lines
//! quote how far the published branch-value claims for the bit-flip family
//! sit from the true minimised discord — those gaps are properties of the
//! claims, not defects of the build, so they are reported but not gated.

use crate::table::{SweepRow, SweepTable};
use gqd::{
    closed_form_discord, depol_discord_variant, evolve_analytic, evolve_numeric,
    evolve_numeric_from, gqd_objective, hermitian_eig, initial_density, maximally_mixed,
    minimize_gqd, pinch_global, projectors, relative_entropy, sudden_death_time, tau3,
    von_neumann_entropy, ChannelKind, ChannelSpec, ClosedFormKind, ComplexMatrix, DensityMatrix,
    InitialState, MeasurementBasis, ScaledTime, Tau3Kind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub info: Vec<String>,
    pub all_passed: bool,
}

impl VerifyReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            let _ = writeln!(
                out,
                "{} {}: {}",
                if check.passed { "PASS" } else { "FAIL" },
                check.name,
                check.detail
            );
        }
        for line in &self.info {
            let _ = writeln!(out, "info {line}");
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(
            out,
            "verify: {passed}/{} checks passed{}",
            self.checks.len(),
            if self.all_passed { "" } else { " — FAILURES ABOVE" }
        );
        out
    }
}

fn st(t: f64) -> ScaledTime {
    ScaledTime::new(t).unwrap()
}

fn evolved(state: InitialState, kind: ChannelKind, t: f64) -> DensityMatrix {
    let channel = ChannelSpec::new(kind, 1.0).unwrap();
    evolve_analytic(state, &channel, st(t))
}

fn minimum(state: InitialState, kind: ChannelKind, t: f64) -> f64 {
    minimize_gqd(&evolved(state, kind, t)).unwrap().value
}

fn all_pairs() -> Vec<(InitialState, ChannelKind)> {
    let mut pairs = Vec::new();
    for state in [InitialState::Ghz, InitialState::W] {
        for kind in ChannelKind::ALL {
            pairs.push((state, kind));
        }
    }
    pairs
}

fn residual_check(name: &'static str, residual: f64, tolerance: f64) -> Check {
    Check {
        name,
        passed: residual <= tolerance,
        detail: format!("residual {residual:.3e} (tolerance {tolerance:.1e})"),
    }
}

pub fn run_verify() -> VerifyReport {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x71d);
    let random_basis = |rng: &mut ChaCha8Rng| {
        MeasurementBasis::new(
            [0.0; 3].map(|_| rng.gen_range(0.0..std::f64::consts::PI)),
            [0.0; 3].map(|_| rng.gen_range(0.0..std::f64::consts::TAU)),
        )
    };

    // --- measurement layer ---------------------------------------------
    let mut completeness = 0.0f64;
    let mut orthogonality = 0.0f64;
    let identity2 = ComplexMatrix::identity(2);
    for _ in 0..100 {
        let basis = random_basis(&mut rng);
        for qubit in 1..=3 {
            let (p1, p2) = projectors(&basis, qubit);
            completeness = completeness.max(p1.add(&p2).max_abs_diff(&identity2));
            orthogonality = orthogonality.max(p1.mul(&p2).max_abs());
        }
    }
    checks.push(residual_check(
        "projector completeness (300 random bases)",
        completeness,
        1e-12,
    ));
    checks.push(residual_check(
        "projector orthogonality (300 random bases)",
        orthogonality,
        1e-12,
    ));

    let probe_state = evolved(InitialState::Ghz, ChannelKind::PauliY, 0.35);
    let mut idempotence = 0.0f64;
    let mut identity_gap = 0.0f64;
    let mut lowest_objective = f64::INFINITY;
    for _ in 0..100 {
        let basis = random_basis(&mut rng);
        let once = pinch_global(&probe_state, &basis);
        let twice = pinch_global(&once, &basis);
        idempotence = idempotence.max(once.matrix().max_abs_diff(twice.matrix()));
        let lhs = relative_entropy(&probe_state, &once).unwrap();
        let rhs = von_neumann_entropy(&once).unwrap()
            - von_neumann_entropy(&probe_state).unwrap();
        identity_gap = identity_gap.max((lhs - rhs).abs());
        lowest_objective = lowest_objective.min(gqd_objective(&probe_state, &basis));
    }
    checks.push(residual_check(
        "pinching idempotence (100 random bases)",
        idempotence,
        1e-12,
    ));
    checks.push(residual_check(
        "pinching entropy identity (100 random bases)",
        identity_gap,
        1e-9,
    ));
    checks.push(Check {
        name: "objective non-negativity (100 random bases)",
        passed: lowest_objective >= -1e-9,
        detail: format!("lowest objective {lowest_objective:.3e} (floor -1e-9)"),
    });

    // --- channel layer ----------------------------------------------------
    let mut at_zero = 0.0f64;
    let mut validity = 0.0f64;
    let mut min_eigenvalue = f64::INFINITY;
    for (state, kind) in all_pairs() {
        at_zero = at_zero.max(
            evolved(state, kind, 0.0)
                .matrix()
                .max_abs_diff(initial_density(state).matrix()),
        );
        for t in [0.25, 0.75, 1.5] {
            let rho = evolved(state, kind, t);
            validity = validity
                .max(rho.matrix().hermiticity_error())
                .max((rho.matrix().trace().re - 1.0).abs());
            let lowest = hermitian_eig(rho.matrix())
                .unwrap()
                .eigenvalues
                .iter()
                .cloned()
                .fold(f64::INFINITY, f64::min);
            min_eigenvalue = min_eigenvalue.min(lowest);
        }
    }
    checks.push(residual_check(
        "analytic evolution is the identity at kt=0 (8 pairs)",
        at_zero,
        1e-14,
    ));
    checks.push(residual_check(
        "evolved states Hermitian with unit trace (24 states)",
        validity,
        1e-12,
    ));
    checks.push(Check {
        name: "evolved states positive semidefinite (24 states)",
        passed: min_eigenvalue >= -1e-10,
        detail: format!("smallest eigenvalue {min_eigenvalue:.3e} (floor -1e-10)"),
    });

    let mut integrator = 0.0f64;
    for (state, kind) in all_pairs() {
        let channel = ChannelSpec::new(kind, 1.0).unwrap();
        let numeric = evolve_numeric(state, &channel, st(0.5), 1e-3).unwrap();
        let analytic = evolve_analytic(state, &channel, st(0.5));
        integrator = integrator.max(numeric.matrix().max_abs_diff(analytic.matrix()));
    }
    checks.push(residual_check(
        "integrator matches analytic solutions at kt=0.5 (8 pairs)",
        integrator,
        1e-7,
    ));

    let mut semigroup = 0.0f64;
    for (state, kind) in [
        (InitialState::Ghz, ChannelKind::PauliY),
        (InitialState::W, ChannelKind::Depolarising),
    ] {
        let channel = ChannelSpec::new(kind, 1.0).unwrap();
        let leg = evolve_numeric(state, &channel, st(0.3), 1e-3).unwrap();
        let two_leg = evolve_numeric_from(&leg, &channel, st(0.4), 1e-3).unwrap();
        let direct = evolve_numeric(state, &channel, st(0.7), 1e-3).unwrap();
        semigroup = semigroup.max(two_leg.matrix().max_abs_diff(direct.matrix()));
    }
    checks.push(residual_check(
        "semigroup composition (two pairs, 0.3 + 0.4 = 0.7)",
        semigroup,
        1e-9,
    ));

    let mixed = maximally_mixed(8).unwrap();
    let mut unital = 0.0f64;
    for kind in ChannelKind::ALL {
        let channel = ChannelSpec::new(kind, 1.0).unwrap();
        let out = evolve_numeric_from(&mixed, &channel, st(0.5), 1e-3).unwrap();
        unital = unital.max(out.matrix().max_abs_diff(mixed.matrix()));
    }
    checks.push(residual_check(
        "channels are unital (4 channels from the mixed state)",
        unital,
        1e-12,
    ));

    use std::f64::consts::FRAC_PI_2;
    let mut fixed_point = 0.0f64;
    for state in [InitialState::Ghz, InitialState::W] {
        for (kind, basis) in [
            (
                ChannelKind::PauliX,
                MeasurementBasis::new([FRAC_PI_2; 3], [0.0; 3]),
            ),
            (
                ChannelKind::PauliY,
                MeasurementBasis::new([FRAC_PI_2; 3], [FRAC_PI_2; 3]),
            ),
            (ChannelKind::PauliZ, MeasurementBasis::new([0.0; 3], [0.0; 3])),
        ] {
            let late = evolved(state, kind, 20.0);
            let pinched = pinch_global(&initial_density(state), &basis);
            fixed_point = fixed_point.max(late.matrix().max_abs_diff(pinched.matrix()));
        }
        let late = evolved(state, ChannelKind::Depolarising, 20.0);
        fixed_point = fixed_point.max(late.matrix().max_abs_diff(mixed.matrix()));
    }
    checks.push(residual_check(
        "long-time limits are the dephased inputs / mixed state (8 pairs)",
        fixed_point,
        1e-10,
    ));

    // --- closed forms vs minimiser -----------------------------------------
    let mut start_values = 0.0f64;
    for kind in [
        ClosedFormKind::GhzX,
        ClosedFormKind::GhzY,
        ClosedFormKind::GhzZ,
        ClosedFormKind::GhzDepol,
    ] {
        start_values = start_values.max((closed_form_discord(kind, st(0.0)) - 1.0).abs());
    }
    checks.push(residual_check(
        "ghz closed forms start at 1 bit",
        start_values,
        1e-12,
    ));
    let mut w_start = 0.0f64;
    for kind in [ClosedFormKind::WZ, ClosedFormKind::WDepol] {
        w_start = w_start.max((closed_form_discord(kind, st(0.0)) - 1.5).abs());
    }
    checks.push(residual_check(
        "w closed forms start at 1.5 bits",
        w_start,
        1e-12,
    ));

    let decaying = [
        ClosedFormKind::GhzY,
        ClosedFormKind::GhzZ,
        ClosedFormKind::GhzDepol,
        ClosedFormKind::WZ,
        ClosedFormKind::WDepol,
    ];
    let mut tail = 0.0f64;
    let mut monotone = 0.0f64;
    for kind in decaying {
        tail = tail.max(closed_form_discord(kind, st(12.0)));
        let mut prev = f64::INFINITY;
        for i in 0..=40 {
            let value = closed_form_discord(kind, st(0.05 * i as f64));
            monotone = monotone.max(value - prev);
            prev = value;
        }
    }
    checks.push(residual_check(
        "decaying closed forms reach zero by kt=12",
        tail,
        1e-7,
    ));
    checks.push(Check {
        name: "closed forms decay monotonically (5 kinds, 41-point grid)",
        passed: monotone <= 1e-12,
        detail: format!("largest increase {monotone:.3e} (tolerance 1e-12)"),
    });

    let pairs = [
        (
            "minimum matches phase-flip ghz closed form at kt=0.5",
            InitialState::Ghz,
            ChannelKind::PauliZ,
            ClosedFormKind::GhzZ,
            0.5,
        ),
        (
            "minimum matches depolarised ghz closed form at kt=0.3",
            InitialState::Ghz,
            ChannelKind::Depolarising,
            ClosedFormKind::GhzDepol,
            0.3,
        ),
        (
            "minimum matches phase-flip w closed form at kt=0.25",
            InitialState::W,
            ChannelKind::PauliZ,
            ClosedFormKind::WZ,
            0.25,
        ),
        (
            "minimum matches bit-phase-flip ghz closed form at kt=0.1",
            InitialState::Ghz,
            ChannelKind::PauliY,
            ClosedFormKind::GhzY,
            0.1,
        ),
    ];
    for (name, state, channel, kind, t) in pairs {
        let gap = (minimum(state, channel, t) - closed_form_discord(kind, st(t))).abs();
        checks.push(residual_check(name, gap, 1e-6));
    }

    let mut bound_violation = 0.0f64;
    for (state, channel, kind, t) in [
        (
            InitialState::Ghz,
            ChannelKind::PauliY,
            ClosedFormKind::GhzY,
            0.5,
        ),
        (
            InitialState::W,
            ChannelKind::Depolarising,
            ClosedFormKind::WDepol,
            0.5,
        ),
    ] {
        let excess = minimum(state, channel, t) - closed_form_discord(kind, st(t));
        bound_violation = bound_violation.max(excess);
    }
    checks.push(residual_check(
        "minimum never exceeds the branch value (2 departure points)",
        bound_violation.max(0.0),
        1e-9,
    ));

    let z_basis = MeasurementBasis::sigma_z();
    let mut flat = 0.0f64;
    for t in [0.5, 2.0] {
        let rho = evolved(InitialState::Ghz, ChannelKind::PauliX, t);
        flat = flat.max((gqd_objective(&rho, &z_basis) - 1.0).abs());
    }
    checks.push(residual_check(
        "bit-flip ghz z-branch objective stays exactly 1",
        flat,
        1e-12,
    ));

    let dx = minimum(InitialState::W, ChannelKind::PauliX, 5.0);
    let dy = minimum(InitialState::W, ChannelKind::PauliY, 5.0);
    checks.push(residual_check(
        "w bit-flip and bit-phase-flip discord coincide at kt=5",
        (dx - dy).abs(),
        1e-6,
    ));

    // --- entanglement bounds ------------------------------------------------
    checks.push(Check {
        name: "tau3 phase flip at kt=0.5 is e^-3 exactly",
        passed: tau3(Tau3Kind::GhzZ, st(0.5)) == (-3.0f64).exp(),
        detail: format!("value {:.17}", tau3(Tau3Kind::GhzZ, st(0.5))),
    });
    checks.push(Check {
        name: "tau3 bit flip at kt=0.5 is e^-2 exactly",
        passed: tau3(Tau3Kind::GhzX, st(0.5)) == (-2.0f64).exp(),
        detail: format!("value {:.17}", tau3(Tau3Kind::GhzX, st(0.5))),
    });

    let death = sudden_death_time(Tau3Kind::GhzY).unwrap();
    let clean = tau3(Tau3Kind::GhzY, st(death)) == 0.0
        && tau3(Tau3Kind::GhzY, st(death + 0.2)) == 0.0
        && tau3(Tau3Kind::GhzY, st(death - 1e-3)) > 0.0
        && (0.609..0.610).contains(&death);
    checks.push(Check {
        name: "bit-phase-flip bound dies suddenly",
        passed: clean,
        detail: format!("kt* = {death:.9}, zero at and after kt*, positive before"),
    });

    let after_death = closed_form_discord(ClosedFormKind::GhzY, st(death + 0.5));
    checks.push(Check {
        name: "discord outlives the entanglement bound",
        passed: after_death > 0.0,
        detail: format!("discord at kt*+0.5 = {after_death:.6}"),
    });

    // --- table layer -------------------------------------------------------
    let table = SweepTable::new(
        vec![("state".into(), "ghz".into())],
        vec![
            SweepRow {
                kt: 0.0,
                quantity: "discord_closed".into(),
                value: 1.0,
            },
            SweepRow {
                kt: 0.3,
                quantity: "discord_closed".into(),
                value: closed_form_discord(ClosedFormKind::GhzZ, st(0.3)),
            },
        ],
    )
    .unwrap();
    let round_trip = SweepTable::parse_csv(&table.to_csv())
        .map(|parsed| parsed == table && parsed.to_csv() == table.to_csv())
        .unwrap_or(false);
    checks.push(Check {
        name: "csv round-trip is exact",
        passed: round_trip,
        detail: "emit -> parse -> emit reproduces the table bit-for-bit".into(),
    });

    let config = crate::sweep::SweepConfig {
        state: InitialState::W,
        channel: ChannelKind::Depolarising,
        kt_start: 0.0,
        kt_end: 0.6,
        points: 4,
        method: crate::sweep::Method::Both,
        include_tau3: false,
        integrator_check: false,
    };
    let deterministic = match (crate::sweep::run_sweep(&config), crate::sweep::run_sweep(&config)) {
        (Ok(a), Ok(b)) => a.to_csv() == b.to_csv(),
        _ => false,
    };
    checks.push(Check {
        name: "sweeps are deterministic",
        passed: deterministic,
        detail: "two identical minimised sweeps emit byte-identical csv".into(),
    });

    // --- informational residual report --------------------------------------
    let mut info = Vec::new();
    let mut worst_flat_min = 0.0f64;
    for t in [0.0, 0.5, 1.0, 2.0] {
        worst_flat_min =
            worst_flat_min.max((minimum(InitialState::Ghz, ChannelKind::PauliX, t) - 1.0).abs());
    }
    info.push(format!(
        "GHZ σx discord constant: max |D−1| = {worst_flat_min:.3e}"
    ));
    info.push(format!(
        "W asymptote: |D(kt=5) − 0.813| = {:.3e}",
        (dx - 0.813).abs()
    ));
    info.push(
        "the two residuals above measure published branch-value claims against the \
         global minimum; the minimum leaves those branches (constant 1 and plateau \
         0.813 hold only for the σz/x-basis branch objectives), so large residuals \
         here are expected and not gated"
            .to_string(),
    );
    let raw_ghz = depol_discord_variant(ClosedFormKind::GhzDepol, st(0.1)).unwrap()
        - closed_form_discord(ClosedFormKind::GhzDepol, st(0.1));
    let raw_w = depol_discord_variant(ClosedFormKind::WDepol, st(0.0)).unwrap()
        - closed_form_discord(ClosedFormKind::WDepol, st(0.0));
    info.push(format!(
        "raw depolarising groupings vs corrected forms: ghz {raw_ghz:+.3e} at kt=0.1, \
         w {raw_w:+.3e} at kt=0"
    ));

    let all_passed = checks.iter().all(|c| c.passed);
    VerifyReport {
        checks,
        info,
        all_passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_build_passes_every_gated_check() {
        let report = run_verify();
        for check in &report.checks {
            assert!(check.passed, "{}: {}", check.name, check.detail);
        }
        assert!(report.all_passed);
        assert!(report.checks.len() >= 20, "only {}", report.checks.len());
    }

    #[test]
    fn report_contains_the_mandated_residual_lines() {
        let text = run_verify().render();
        assert!(text.contains("GHZ σx discord constant: max |D−1| = "));
        assert!(text.contains("W asymptote: |D(kt=5) − 0.813| = "));
    }
}
