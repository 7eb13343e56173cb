//! Sweep execution: evaluates the requested quantities on a uniform kt grid
//! and assembles a [`SweepTable`]. Minimised-discord points are evaluated
//! concurrently; everything is collected back in grid order so output is
//! deterministic.

use crate::table::{SweepRow, SweepTable};
use crate::CliError;
use gqd::{
    closed_form_discord, evolve_analytic, evolve_numeric_from, initial_density, minimize_gqd,
    tau3, ChannelKind, ChannelSpec, ClosedFormKind, InitialState, ScaledTime, Tau3Kind,
};
use rayon::prelude::*;

/// Step (in kt units) used by the `--check-integrator` column.
pub const INTEGRATOR_CHECK_STEP: f64 = 1e-4;

pub const MAX_POINTS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Minimized,
    Both,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed",
            Method::Minimized => "min",
            Method::Both => "both",
        }
    }

    fn wants_closed(self) -> bool {
        matches!(self, Method::ClosedForm | Method::Both)
    }

    fn wants_minimized(self) -> bool {
        matches!(self, Method::Minimized | Method::Both)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    pub state: InitialState,
    pub channel: ChannelKind,
    pub kt_start: f64,
    pub kt_end: f64,
    pub points: usize,
    pub method: Method,
    pub include_tau3: bool,
    pub integrator_check: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !self.kt_start.is_finite() || !self.kt_end.is_finite() || self.kt_start < 0.0 {
            return Err(CliError::InvalidConfig(format!(
                "the sweep range [{}, {}] must be finite and non-negative",
                self.kt_start, self.kt_end
            )));
        }
        if self.kt_start >= self.kt_end {
            return Err(CliError::InvalidConfig(format!(
                "--from ({}) must be strictly below --to ({})",
                self.kt_start, self.kt_end
            )));
        }
        if self.points < 2 || self.points > MAX_POINTS {
            return Err(CliError::InvalidConfig(format!(
                "--points ({}) must lie in 2..={MAX_POINTS}",
                self.points
            )));
        }
        Ok(())
    }

    fn grid(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                self.kt_start + (self.kt_end - self.kt_start) * i as f64 / (n - 1) as f64
            })
            .collect()
    }
}

/// The closed-form kind for a (state, channel) pair, or the error telling
/// the user which flag computes the quantity numerically instead.
fn closed_kind(state: InitialState, channel: ChannelKind) -> Result<ClosedFormKind, CliError> {
    ClosedFormKind::for_pair(state, channel).ok_or_else(|| {
        CliError::Unsupported(format!(
            "no closed-form discord exists for the {} state under the {} channel; \
             rerun with `--method min` to compute the minimized value numerically",
            state.label(),
            channel.label()
        ))
    })
}

fn tau3_kind(state: InitialState, channel: ChannelKind) -> Result<Tau3Kind, CliError> {
    if state != InitialState::Ghz {
        return Err(CliError::Unsupported(format!(
            "no entanglement bound is implemented for the {} state; \
             tau3 is available for the ghz state under the x, y and z channels",
            state.label()
        )));
    }
    Tau3Kind::for_channel(channel).ok_or_else(|| {
        CliError::Unsupported(format!(
            "no entanglement bound is implemented for the ghz state under the {} channel; \
             tau3 is available under the x, y and z channels",
            channel.label()
        ))
    })
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepTable, CliError> {
    config.validate()?;
    let grid = config.grid();
    let channel = ChannelSpec::new(config.channel, 1.0)?;

    // Resolve unsupported combinations before any numerics run.
    let closed = if config.method.wants_closed() {
        Some(closed_kind(config.state, config.channel)?)
    } else {
        None
    };
    let tau = if config.include_tau3 {
        Some(tau3_kind(config.state, config.channel)?)
    } else {
        None
    };

    let mut rows = Vec::new();

    let closed_values: Option<Vec<f64>> = closed.map(|kind| {
        grid.iter()
            .map(|&t| closed_form_discord(kind, ScaledTime::new(t).expect("validated grid")))
            .collect()
    });

    let minimized_values: Option<Vec<f64>> = if config.method.wants_minimized() {
        let values = grid
            .par_iter()
            .map(|&t| {
                let rho = evolve_analytic(config.state, &channel, ScaledTime::new(t)?);
                Ok(minimize_gqd(&rho)?.value)
            })
            .collect::<Result<Vec<f64>, gqd::GqdError>>()?;
        Some(values)
    } else {
        None
    };

    for (i, &t) in grid.iter().enumerate() {
        if let Some(values) = &closed_values {
            rows.push(SweepRow {
                kt: t,
                quantity: "discord_closed".into(),
                value: values[i],
            });
        }
        if let Some(values) = &minimized_values {
            rows.push(SweepRow {
                kt: t,
                quantity: "discord_min".into(),
                value: values[i],
            });
        }
        if let (Some(c), Some(m)) = (&closed_values, &minimized_values) {
            rows.push(SweepRow {
                kt: t,
                quantity: "discord_diff".into(),
                value: (c[i] - m[i]).abs(),
            });
        }
        if let Some(kind) = tau {
            rows.push(SweepRow {
                kt: t,
                quantity: "tau3".into(),
                value: tau3(kind, ScaledTime::new(t).expect("validated grid")),
            });
        }
    }

    if config.integrator_check {
        // One chained integration across the whole grid: each leg continues
        // from the previous numeric state, so the cost is proportional to the
        // total span rather than the number of points squared.
        let mut current = if config.kt_start == 0.0 {
            initial_density(config.state)
        } else {
            evolve_numeric_from(
                &initial_density(config.state),
                &channel,
                ScaledTime::new(config.kt_start)?,
                INTEGRATOR_CHECK_STEP,
            )?
        };
        for (i, &t) in grid.iter().enumerate() {
            if i > 0 {
                let span = t - grid[i - 1];
                current =
                    evolve_numeric_from(&current, &channel, ScaledTime::new(span)?, INTEGRATOR_CHECK_STEP)?;
            }
            let analytic = evolve_analytic(config.state, &channel, ScaledTime::new(t)?);
            rows.push(SweepRow {
                kt: t,
                quantity: "integrator_dev".into(),
                value: current.matrix().max_abs_diff(analytic.matrix()),
            });
        }
    }

    let metadata = vec![
        ("state".to_string(), config.state.label().to_string()),
        ("channel".to_string(), config.channel.label().to_string()),
        ("method".to_string(), config.method.label().to_string()),
        (
            "tool_version".to_string(),
            env!("CARGO_PKG_VERSION").to_string(),
        ),
    ];
    SweepTable::new(metadata, rows)
}
