//! `gpaley`: command-line front end for verification campaigns and the
//! individual census, counterexample and `K₄` checks.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use gpaley::campaign::{self, parse_checks, CampaignConfig, Limits, OutputFormat};
use gpaley::cliquezoo::{
    counterexample_family, k4_count, maximal_size_census, stability_check, CensusMode, CliqueZooError, K4Mode,
};
use gpaley::gpgraph::GpGraph;
use serde_json::json;

#[derive(Parser)]
#[command(name = "gpaley", version, about = "Generalised Paley graphs GP(q^2, m) with m | q+1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks over every (q, m) with q in a range.
    Run {
        #[arg(long)]
        q_min: u64,
        #[arg(long)]
        q_max: u64,
        /// Restrict to these m (repeatable); default is every divisor m >= 2 of q+1.
        #[arg(long = "m", num_args = 1..)]
        m: Vec<u32>,
        /// Comma-separated checks, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Report file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Seconds allowed for each enumeration.
        #[arg(long)]
        time_per_check: Option<f64>,
        #[arg(long)]
        force_enumeration: bool,
    },
    /// Size spectrum of the maximal cliques of GP(q^2, m).
    Census {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        /// Only cliques through the edge {0, 1}; same spectrum, much faster.
        #[arg(long)]
        rooted: bool,
        #[arg(long)]
        force: bool,
    },
    /// The family q = r^3, m = r^2 - r + 1.
    Counterexample {
        #[arg(long)]
        r: u32,
        /// Skip the maximal-clique census.
        #[arg(long)]
        no_census: bool,
        #[arg(long)]
        force: bool,
    },
    /// Number of K4 subgraphs of GP(q^2, (q+1)/3), by formula and brute force.
    K4 {
        #[arg(long)]
        q: u64,
    },
}

/// Bad input, as opposed to a failed check.
struct ConfigError(String);

impl<E: std::fmt::Display> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(ConfigError(message)) => {
            eprintln!("gpaley: {message}");
            ExitCode::from(2)
        }
    }
}

fn print_json(value: &serde_json::Value) -> Result<(), ConfigError> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Returns whether every theorem check passed.
fn dispatch(command: Command) -> Result<bool, ConfigError> {
    match command {
        Command::Run {
            q_min,
            q_max,
            m,
            checks,
            out,
            format,
            jobs,
            time_per_check,
            force_enumeration,
        } => {
            let format: OutputFormat = format.parse()?;
            let time_per_check = match time_per_check {
                Some(s) if !(s.is_finite() && s > 0.0) => {
                    return Err(ConfigError(format!("--time-per-check must be positive, got {s}")))
                }
                other => other.map(Duration::from_secs_f64),
            };
            let config = CampaignConfig {
                q_min,
                q_max,
                m_filter: (!m.is_empty()).then_some(m),
                checks: parse_checks(&checks)?,
                limits: Limits {
                    time_per_check,
                    force_enumeration,
                    jobs,
                },
                output: out.clone(),
                format,
            };
            let report = campaign::run(&config)?;
            if out.is_none() {
                report.write(format, io::stdout().lock())?;
            }
            let s = &report.summary;
            eprintln!(
                "{} records: {} pass, {} fail, {} hypothesis-failed, {} not applicable, {} skipped, {} truncated, {} errors",
                s.records, s.passed, s.failed, s.hypothesis_failed, s.not_applicable, s.skipped, s.truncated, s.errors
            );
            Ok(report.exit_code() == 0)
        }
        Command::Census { q, m, rooted, force } => {
            let g = GpGraph::for_q(q, m)?;
            let mode = if rooted { CensusMode::Rooted } else { CensusMode::Full };
            let census = maximal_size_census(&g, mode, force).map_err(|e| match e {
                CliqueZooError::EnumerationRefused { .. } => ConfigError(format!("{e}; pass --force to run anyway")),
                other => ConfigError(other.to_string()),
            })?;
            let stability = stability_check(&g, &census);
            print_json(&json!({
                "q": q,
                "m": m,
                "mode": census.mode,
                "sizes": census.sizes(),
                "counts": census.counts,
                "truncated": census.truncated,
                "stability": stability,
            }))?;
            Ok(stability.pass)
        }
        Command::Counterexample { r, no_census, force } => {
            let report = counterexample_family(r, !no_census, force)?;
            print_json(&serde_json::to_value(&report)?)?;
            Ok(report.pass)
        }
        Command::K4 { q } => {
            if q % 3 != 2 {
                return Err(ConfigError(format!(
                    "q = {q} is not 2 mod 3, so (q+1)/3 is not an integer divisor"
                )));
            }
            let g = GpGraph::for_q(q, ((q + 1) / 3) as u32)?;
            let formula = k4_count(&g, K4Mode::Formula)?;
            let brute = k4_count(&g, K4Mode::BruteForce).ok();
            print_json(&json!({ "q": q, "m": g.m(), "formula": formula, "brute_force": brute }))?;
            Ok(brute.map_or(true, |b| b == formula))
        }
    }
}
