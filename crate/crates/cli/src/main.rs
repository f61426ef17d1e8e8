//! Command-line surface: single congruence checks, primality verdicts with
//! witnesses, exact modular binomials, and sharded grid sweeps, all emitting
//! machine-readable report records.
//!
//! Exit status: 0 when every checked congruence holds (or a value was simply
//! computed), 3 when a checked congruence fails mathematically (composite
//! primality verdicts, witnesses, falsifier counterexamples, unexpected
//! sweep failures), 1 for usage and domain errors.

mod records;
mod report;
mod sweep;

use anyhow::{Context, Result};
use binomlab::Natural;
use clap::{Parser, Subcommand};
use records::{Caps, TheoremId};
use report::{ReportFormat, ReportRecord};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "binomlab",
    version,
    about = "Exact checks, witnesses, and sweeps for binomial-coefficient congruences"
)]
struct Cli {
    /// Report format; beats the config file and BINOMLAB_FORMAT.
    #[arg(long, global = true, value_enum)]
    format: Option<ReportFormat>,
    /// Write the report body to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Largest accepted modulus-like argument (p, m, d, q).
    #[arg(long, global = true, default_value_t = 1_000_000_000_000)]
    max_p: u64,
    /// Largest exact-product side computed for a binomial coefficient.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_n: u64,
    /// Tallest additive Pascal triangle built.
    #[arg(long, global = true, default_value_t = 5_000)]
    max_rows: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide primality: a prime verifies C(n,p) = floor(n/p) mod p over a
    /// whole range, a composite gets the witness n where it provably breaks.
    Isprime {
        p: Natural,
        /// Verification range for the prime branch (default 4p).
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Compute C(n,k) mod m exactly.
    BinomMod { n: Natural, k: Natural, m: Natural },
    /// Check one congruence instance by theorem id.
    Check {
        /// thm21 | lucas_corollary | bailey_np_rp | bailey_digits | apostol |
        /// mestrovic | power_explorer (hyphens accepted)
        theorem: String,
        #[arg(long)]
        n: Option<Natural>,
        #[arg(long)]
        m: Option<Natural>,
        #[arg(long)]
        p: Option<Natural>,
        #[arg(long)]
        r: Option<Natural>,
        #[arg(long)]
        high_n: Option<Natural>,
        #[arg(long)]
        high_r: Option<Natural>,
        #[arg(long)]
        alpha: Option<u32>,
        #[arg(long)]
        d: Option<Natural>,
        #[arg(long)]
        q: Option<Natural>,
        /// Scale exponent for power_explorer.
        #[arg(long)]
        k: Option<u32>,
        /// Search bound: mestrovic default 50, power_explorer default 8.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Construct the composite witness n = p + q and its residues.
    Witness { p: Natural },
    /// Sweep a parameter grid, one record per instance in canonical order.
    Sweep(sweep::SweepArgs),
    /// Find the largest p-power modulus the p^k-scaled congruence survives.
    ExplorePowers {
        p: Natural,
        k: u32,
        #[arg(long, default_value_t = 8)]
        bound: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn exit_for(record: &ReportRecord) -> u8 {
    match record.holds {
        Some(false) => 3,
        _ => 0,
    }
}

fn require<T>(value: Option<T>, theorem: &str, flag: &str) -> Result<T> {
    value.with_context(|| format!("check {theorem} requires {flag}"))
}

fn run(cli: Cli) -> Result<u8> {
    let caps = Caps { max_p: cli.max_p, max_n: cli.max_n, max_rows: cli.max_rows };
    let mut config_format = None;
    let mut config_output = None;
    let mut summary_line = None;

    let (records, exit) = match cli.command {
        Command::Isprime { p, n_max } => {
            let record = records::record_isprime(&p, n_max, &caps)?;
            let exit = exit_for(&record);
            (vec![record], exit)
        }
        Command::BinomMod { n, k, m } => {
            (vec![records::record_binom_mod(&n, &k, &m, &caps)?], 0)
        }
        Command::Witness { p } => {
            let record = records::record_witness(&p, &caps)?;
            let exit = exit_for(&record);
            (vec![record], exit)
        }
        Command::ExplorePowers { p, k, bound } => {
            (vec![records::record_power_explorer(&p, k, bound, &caps)?], 0)
        }
        Command::Check { theorem, n, m, p, r, high_n, high_r, alpha, d, q, k, bound } => {
            let id = TheoremId::parse(&theorem)?;
            let name = id.name();
            let record = match id {
                TheoremId::Thm21 => records::record_thm21(
                    &require(n, name, "--n")?,
                    &require(p, name, "--p")?,
                    &caps,
                )?,
                TheoremId::LucasCorollary => records::record_lucas_corollary(
                    &require(n, name, "--n")?,
                    &require(m, name, "--m")?,
                    &require(p, name, "--p")?,
                    &caps,
                )?,
                TheoremId::BaileyNpRp => records::record_bailey_np_rp(
                    &require(n, name, "--n")?,
                    &require(r, name, "--r")?,
                    &require(p, name, "--p")?,
                    &caps,
                )?,
                TheoremId::BaileyDigits => records::record_bailey_digits(
                    &require(high_n, name, "--high-n")?,
                    &require(high_r, name, "--high-r")?,
                    &require(n, name, "--n")?,
                    &require(r, name, "--r")?,
                    &require(p, name, "--p")?,
                    &caps,
                )?,
                TheoremId::Apostol => records::record_apostol(
                    &require(n, name, "--n")?,
                    &require(p, name, "--p")?,
                    require(alpha, name, "--alpha")?,
                    &caps,
                )?,
                TheoremId::Mestrovic => records::record_mestrovic(
                    &require(d, name, "--d")?,
                    &require(q, name, "--q")?,
                    bound.unwrap_or(50),
                    &caps,
                )?,
                TheoremId::PowerExplorer => records::record_power_explorer(
                    &require(p, name, "--p")?,
                    require(k, name, "--k")?,
                    bound.unwrap_or(8),
                    &caps,
                )?,
            };
            let exit = exit_for(&record);
            (vec![record], exit)
        }
        Command::Sweep(args) => {
            let plan = sweep::plan(&args, &caps)?;
            let outcome = sweep::execute(&plan, &caps)?;
            config_format = plan.config_format;
            config_output = plan.config_output;
            summary_line = Some(outcome.summary.line());
            (outcome.records, outcome.exit)
        }
    };

    let format = resolve_format(cli.format, config_format)?;
    let output = cli.output.or(config_output);
    let body = report::render(&records, format)?;
    report::write_body(&body, output.as_deref())?;
    if let Some(line) = summary_line {
        eprintln!("{line}");
    }
    Ok(exit)
}

/// Precedence: --format flag, then the sweep config file, then the
/// BINOMLAB_FORMAT environment variable, then json-lines.
fn resolve_format(flag: Option<ReportFormat>, config: Option<ReportFormat>) -> Result<ReportFormat> {
    if let Some(format) = flag.or(config) {
        return Ok(format);
    }
    match std::env::var("BINOMLAB_FORMAT") {
        Ok(value) => ReportFormat::parse_name(&value).context("invalid BINOMLAB_FORMAT"),
        Err(std::env::VarError::NotPresent) => Ok(ReportFormat::JsonLines),
        Err(err) => Err(err).context("cannot read BINOMLAB_FORMAT"),
    }
}
