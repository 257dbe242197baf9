//! `entanglia`: scans and reports over the toolkit's state families,
//! entanglement criteria, masking checks and dephasing evolution.
//!
//! Exit codes: 0 success (and, where applicable, verified/uniform), 1 usage
//! error, 2 numerical validation failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod grid;
mod run;

#[derive(Parser)]
#[command(
    name = "entanglia",
    version,
    about = "Qudit density-matrix toolkit: state families, criteria, masking, dephasing"
)]
struct Cli {
    /// Worker threads for sweeps; defaults to all available cores. Output
    /// is byte-identical regardless of this setting.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan the noisy-GHZ family over p and emit criteria columns as CSV.
    GhzNoise(GhzNoiseArgs),
    /// Scan the GHZ-plus-flips mixture over x: PPT and flip-block spectra.
    Dur(DurArgs),
    /// Sweep the dephasing evolution over (t, gamma1), or bisect a boundary.
    Dephase(DephaseArgs),
    /// Check message-independence of marginals for the Fourier masker.
    MaskVerify(MaskVerifyArgs),
    /// Run every applicable criterion on a saved state file.
    Analyze(AnalyzeArgs),
    /// Verify a channel file or builtin against its completeness policy.
    VerifyChannel(VerifyChannelArgs),
}

#[derive(Args)]
pub struct GhzNoiseArgs {
    /// Local dimension of each party.
    #[arg(long)]
    pub d: usize,
    /// Number of parties.
    #[arg(long)]
    pub n: usize,
    /// Mixing parameter grid, `start:end:step` or a single value.
    #[arg(long)]
    pub p: String,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct DurArgs {
    /// Number of parties.
    #[arg(long = "N")]
    pub n_parties: usize,
    /// Mixing parameter grid, `start:end:step` or a single value.
    #[arg(long)]
    pub x: String,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct DephaseArgs {
    /// Time grid, `start:end:step` or a single value.
    #[arg(long, default_value = "0:3:0.01")]
    pub t: String,
    /// Dephasing-rate grid.
    #[arg(long, default_value = "0:1:0.01")]
    pub gamma1: String,
    /// Bisect this metric's sign change instead of sweeping (ppt, realign
    /// or map); fix the other axis to a single value, the grid of the
    /// bisected axis supplies the bracket.
    #[arg(long, value_name = "METRIC")]
    pub find_crossing: Option<String>,
    /// Output path for the sweep CSV; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct MaskVerifyArgs {
    /// Local dimension of each party.
    #[arg(long)]
    pub d: usize,
    /// Number of parties.
    #[arg(long)]
    pub n: usize,
    /// Channel mixing parameter.
    #[arg(long)]
    pub p: f64,
    /// Marginal size to check.
    #[arg(long)]
    pub m: usize,
    /// Message set: `fourier` (the masker) or `product` (a control that
    /// must fail).
    #[arg(long, default_value = "fourier", value_parser = ["fourier", "product"])]
    pub control: String,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Path to a saved state file.
    #[arg(long)]
    pub state: PathBuf,
    /// Index of the subsystem split off in the one-vs-rest cut.
    #[arg(long, default_value_t = 0)]
    pub cut: usize,
}

#[derive(Args)]
pub struct VerifyChannelArgs {
    /// Builtin channel: canonical-pauli, dur-literal or example1.
    pub builtin: Option<String>,
    /// Path to a saved channel file, instead of a builtin.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// canonical-pauli: local dimension.
    #[arg(long)]
    pub d: Option<usize>,
    /// canonical-pauli: number of parties.
    #[arg(long)]
    pub n: Option<usize>,
    /// canonical-pauli and example1: mixing parameter.
    #[arg(long)]
    pub p: Option<f64>,
    /// dur-literal: number of parties.
    #[arg(long = "N")]
    pub n_parties: Option<usize>,
    /// dur-literal: mixing parameter.
    #[arg(long)]
    pub x: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version leave through here too; only real parse
            // failures take the usage exit code.
            let is_usage = e.use_stderr();
            let _ = e.print();
            return if is_usage {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let outcome = match &cli.command {
        Command::GhzNoise(args) => run::ghz_noise(args, cli.threads),
        Command::Dur(args) => run::dur(args, cli.threads),
        Command::Dephase(args) => run::dephase(args, cli.threads),
        Command::MaskVerify(args) => run::mask_verify(args),
        Command::Analyze(args) => run::analyze(args),
        Command::VerifyChannel(args) => run::verify_channel_cmd(args),
    };

    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(run::code_for(&err))
        }
    }
}
