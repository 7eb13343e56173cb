//! Library side of the `gqd` command-line tool: sweep configuration and
//! execution, CSV table emission/parsing, figure presets and the
//! self-verification suite. The binary in `main.rs` is a thin flag-parsing
//! shell over these modules so everything here is testable in-process.

pub mod figures;
pub mod sweep;
pub mod table;
pub mod verify;

pub use figures::{figure_preset, FigurePreset};
pub use sweep::{run_sweep, Method, SweepConfig};
pub use table::{SweepRow, SweepTable};
pub use verify::{run_verify, VerifyReport};

/// Errors surfaced to the terminal. `Unsupported` and `InvalidConfig` are
/// usage problems (exit code 2); `Compute` means a numeric routine failed
/// mid-run (exit code 1).
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed sweep table: {0}")]
    Parse(String),

    #[error(transparent)]
    Compute(#[from] gqd::GqdError),
}

impl CliError {
    /// The process exit code this error maps to (1 computation, 2 usage).
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Unsupported(_) | CliError::InvalidConfig(_) | CliError::Parse(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}
