//! `gqd` binary: flag parsing and exit-code mapping around the library in
//! `gqd_cli`. Exit codes: 0 success, 1 failed check/computation, 2 usage.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gqd::{ChannelKind, InitialState};
use gqd_cli::{figure_preset, run_sweep, run_verify, CliError, Method, SweepConfig};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gqd",
    version,
    about = "Discord and entanglement dynamics of dissipative three-qubit GHZ/W states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the scaled time kt and print a CSV table to stdout
    Sweep(SweepArgs),
    /// Run the self-check suite and print per-check results
    Verify,
}

#[derive(Args)]
struct SweepArgs {
    /// Initial state
    #[arg(long, value_enum, required_unless_present = "figure")]
    state: Option<StateArg>,

    /// Noise channel
    #[arg(long, value_enum, required_unless_present = "figure")]
    channel: Option<ChannelArg>,

    /// Start of the kt range
    #[arg(long, required_unless_present = "figure")]
    from: Option<f64>,

    /// End of the kt range
    #[arg(long, required_unless_present = "figure")]
    to: Option<f64>,

    /// Number of grid points (2..=1000000)
    #[arg(long, required_unless_present = "figure")]
    points: Option<usize>,

    /// How to evaluate the discord
    #[arg(long, value_enum, required_unless_present = "figure")]
    method: Option<MethodArg>,

    /// Also emit the tau3 entanglement lower bound
    #[arg(long)]
    tau3: bool,

    /// Also emit the integrator-vs-analytic deviation per point
    #[arg(long = "check-integrator")]
    check_integrator: bool,

    /// Emit a preset figure data set instead (1: GHZ discord, 2: GHZ
    /// entanglement, 3: W discord, 4: W entanglement)
    #[arg(
        long,
        value_parser = clap::value_parser!(u8).range(1..=4),
        conflicts_with_all = [
            "state", "channel", "from", "to", "points", "method", "tau3",
            "check_integrator",
        ]
    )]
    figure: Option<u8>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StateArg {
    Ghz,
    W,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    X,
    Y,
    Z,
    Depol,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Min,
    Both,
}

impl From<StateArg> for InitialState {
    fn from(value: StateArg) -> Self {
        match value {
            StateArg::Ghz => InitialState::Ghz,
            StateArg::W => InitialState::W,
        }
    }
}

impl From<ChannelArg> for ChannelKind {
    fn from(value: ChannelArg) -> Self {
        match value {
            ChannelArg::X => ChannelKind::PauliX,
            ChannelArg::Y => ChannelKind::PauliY,
            ChannelArg::Z => ChannelKind::PauliZ,
            ChannelArg::Depol => ChannelKind::Depolarising,
        }
    }
}

impl From<MethodArg> for Method {
    fn from(value: MethodArg) -> Self {
        match value {
            MethodArg::Closed => Method::ClosedForm,
            MethodArg::Min => Method::Minimized,
            MethodArg::Both => Method::Both,
        }
    }
}

fn sweep(args: SweepArgs) -> Result<(), CliError> {
    if let Some(figure) = args.figure {
        let preset = figure_preset(figure)?;
        for note in &preset.notes {
            eprintln!("note: {note}");
        }
        print!("{}", preset.table.to_csv());
        return Ok(());
    }
    // clap enforces presence of every flag below when --figure is absent.
    let config = SweepConfig {
        state: args.state.expect("required by clap").into(),
        channel: args.channel.expect("required by clap").into(),
        kt_start: args.from.expect("required by clap"),
        kt_end: args.to.expect("required by clap"),
        points: args.points.expect("required by clap"),
        method: args.method.expect("required by clap").into(),
        include_tau3: args.tau3,
        integrator_check: args.check_integrator,
    };
    let table = run_sweep(&config)?;
    print!("{}", table.to_csv());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let code = match error.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = error.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Sweep(args) => match sweep(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(error) => {
                eprintln!("error: {error}");
                ExitCode::from(error.exit_code())
            }
        },
        Command::Verify => {
            let report = run_verify();
            print!("{}", report.render());
            if report.all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
