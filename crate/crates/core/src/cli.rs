//! Command-line driver behind the `wqsc` binary.
//!
//! Every flag can also be supplied through a `WQSC_`-prefixed environment
//! variable (`--announce-rate` ↔ `WQSC_ANNOUNCE_RATE`).
//!
//! Exit codes: 0 success or secure channel, 1 usage error, 2 verification
//! failure or compromised channel, 3 inconclusive security check.

use crate::adversary::AttackConfig;
use crate::golden::{self, VERIFY_TOLERANCE};
use crate::protocol::{
    run_protocol, ProtocolConfig, ProtocolMode, SecurityVerdict, DEFAULT_ANNOUNCE_RATE,
    DEFAULT_EPSILON,
};
use crate::qcore::Party;
use crate::report::{write_run_report, write_sweep, OutputFormat};
use crate::states::AttackAngle;
use crate::sweep::{sweep_phi, SweepConfig};
use crate::Error;
use clap::{Args, Parser, Subcommand};
use std::f64::consts::FRAC_PI_2;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Decimal literals such as `1.5708` land this far outside [0, π/2].
const ANGLE_SNAP: f64 = 1e-4;

#[derive(Debug, Parser)]
#[command(name = "wqsc", version, about = "W-state QKD and secret-sharing simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one protocol and write its report.
    Run(RunArgs),
    /// Recompute every closed-form reference value.
    Verify,
    /// Sweep the attack strength and compare with the analytic detection rate.
    SweepPhi(SweepArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Number of trials (per grid point when sweeping).
    #[arg(long, env = "WQSC_TRIALS")]
    trials: u64,
    /// Root seed for all randomness.
    #[arg(long, env = "WQSC_SEED")]
    seed: u64,
    /// Party whose qubit Eve couples to.
    #[arg(long, env = "WQSC_TARGET", default_value = "C")]
    target: String,
    /// Significance of the security test.
    #[arg(long, env = "WQSC_EPSILON", default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// json or csv.
    #[arg(long, env = "WQSC_FORMAT", default_value = "json")]
    format: String,
    /// Report path; standard output when absent.
    #[arg(long, env = "WQSC_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// qkd, pqss or synth.
    #[arg(long, env = "WQSC_MODE")]
    mode: String,
    /// Per-trial probability of announcing outcomes for the security check.
    #[arg(long, env = "WQSC_ANNOUNCE_RATE", default_value_t = DEFAULT_ANNOUNCE_RATE)]
    announce_rate: f64,
    /// Attack strength in radians; no attack when absent.
    #[arg(long, env = "WQSC_PHI")]
    phi: Option<f64>,
    /// Secret holder for secret sharing.
    #[arg(long, env = "WQSC_DEALER", default_value = "A")]
    dealer: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Comma-separated attack strengths in radians.
    #[arg(long, env = "WQSC_PHI", value_delimiter = ',')]
    phi: Vec<f64>,
    #[arg(long, env = "WQSC_ANNOUNCE_RATE", default_value_t = 0.5)]
    announce_rate: f64,
    #[command(flatten)]
    common: Common,
}

fn parse_angle(phi: f64) -> Result<AttackAngle, Error> {
    let snapped = if (-ANGLE_SNAP..0.0).contains(&phi) {
        0.0
    } else if phi > FRAC_PI_2 && phi <= FRAC_PI_2 + ANGLE_SNAP {
        FRAC_PI_2
    } else {
        phi
    };
    AttackAngle::new(snapped)
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Format(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Format(e.to_string())),
    }
}

fn cmd_run(args: &RunArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let c = &args.common;
    let format: OutputFormat = c.format.parse()?;
    let mut config = ProtocolConfig::new(args.mode.parse::<ProtocolMode>()?, c.trials, c.seed)
        .with_announce_rate(args.announce_rate)
        .with_epsilon(c.epsilon)
        .with_dealer(args.dealer.parse()?);
    if let Some(phi) = args.phi {
        config = config.with_attack(AttackConfig::coupling(parse_angle(phi)?, c.target.parse()?)?);
    } else {
        c.target.parse::<Party>()?;
    }
    let report = run_protocol(&config)?;
    emit(out, &c.output, &write_run_report(&report, format)?)?;
    Ok(match report.verdict {
        SecurityVerdict::Secure => EXIT_OK,
        SecurityVerdict::Compromised => EXIT_FAILURE,
        SecurityVerdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn cmd_verify(out: &mut dyn Write) -> Result<i32, Error> {
    let items = golden::items()?;
    let mut failed = 0;
    let mut text = String::new();
    for item in &items {
        let ok = item.passes(VERIFY_TOLERANCE);
        failed += usize::from(!ok);
        text += &format!(
            "{} {:<48} expected {:>+.12} computed {:>+.12}\n",
            if ok { "PASS" } else { "FAIL" },
            item.name,
            item.expected,
            item.computed
        );
    }
    text += &format!("{} of {} items passed\n", items.len() - failed, items.len());
    emit(out, &None, &text)?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let c = &args.common;
    let format: OutputFormat = c.format.parse()?;
    let grid = args
        .phi
        .iter()
        .map(|&p| parse_angle(p).map(f64::from))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = sweep_phi(
        &grid,
        &SweepConfig {
            trials: c.trials,
            seed: c.seed,
            announce_rate: args.announce_rate,
            target: c.target.parse()?,
            epsilon: c.epsilon,
        },
    )?;
    emit(out, &c.output, &write_sweep(&rows, format)?)?;
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the command, writing reports
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run_with_io<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a, out),
        Command::Verify => cmd_verify(out),
        Command::SweepPhi(a) => cmd_sweep(a, out),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_USAGE
    })
}

pub fn main_exit_code() -> i32 {
    run_with_io(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
