//! `altspec`: run verification suites over finite nonassociative spectral
//! geometries and emit deterministic reports.
//!
//! Exit codes: 0 all checks passed, 1 some check failed, 2 configuration
//! or usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use altspec::{emit, Format, GeometryConfig, Suite, SuiteReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Text => Format::Text,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "altspec",
    about = "Exact verification of finite nonassociative spectral geometries",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite against a geometry config.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Master seed for randomized checks (ALTSPEC_SEED overrides).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run the suite's checks on separate threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Solve the first-order derivation constraint system for n factors.
    SolveDerivations {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Classify split-bimodule homomorphisms for n factors.
    ClassifyHoms {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Build and verify a fluctuation of the configured Dirac operator.
    Fluctuate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compute the KO sign table for the configured geometry.
    Signs {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

/// ALTSPEC_SEED, when set and parseable, overrides any `--seed` flag.
fn effective_seed(flag: u64) -> Result<u64, String> {
    match std::env::var("ALTSPEC_SEED") {
        Ok(v) => v
            .parse::<u64>()
            .map_err(|_| format!("ALTSPEC_SEED is not an unsigned integer: {v:?}")),
        Err(_) => Ok(flag),
    }
}

fn finish(report: SuiteReport, format: OutputFormat) -> ExitCode {
    print!("{}", emit(&report, format.into()));
    eprintln!("wall time: {} ms", report.wall_ms);
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn config_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            suite,
            config,
            format,
            seed,
            parallel,
        } => {
            let cfg = match GeometryConfig::from_path(&config) {
                Ok(c) => c,
                Err(e) => return config_error(e),
            };
            let seed = match effective_seed(seed) {
                Ok(s) => s,
                Err(e) => return config_error(e),
            };
            match altspec::run_suite(&cfg, suite, seed, parallel) {
                Ok(report) => finish(report, format),
                Err(e) => config_error(e),
            }
        }
        Command::SolveDerivations { n, format } => {
            if n == 0 || n > 3 {
                return config_error("--n must be between 1 and 3");
            }
            let start = std::time::Instant::now();
            let mut report = altspec::solve_derivations_report(n);
            report.wall_ms = start.elapsed().as_millis();
            finish(report, format)
        }
        Command::ClassifyHoms { n, format } => {
            if n == 0 || n > 3 {
                return config_error("--n must be between 1 and 3");
            }
            let start = std::time::Instant::now();
            let mut report = altspec::classify_homs_report(n);
            report.wall_ms = start.elapsed().as_millis();
            finish(report, format)
        }
        Command::Fluctuate {
            config,
            format,
            seed,
        } => {
            let cfg = match GeometryConfig::from_path(&config) {
                Ok(c) => c,
                Err(e) => return config_error(e),
            };
            let seed = match effective_seed(seed) {
                Ok(s) => s,
                Err(e) => return config_error(e),
            };
            match altspec::fluctuate_report(&cfg, seed) {
                Ok(report) => finish(report, format),
                Err(e) => config_error(e),
            }
        }
        Command::Signs { config, format } => {
            let cfg = match GeometryConfig::from_path(&config) {
                Ok(c) => c,
                Err(e) => return config_error(e),
            };
            match altspec::signs_report(&cfg) {
                Ok(report) => finish(report, format),
                Err(e) => config_error(e),
            }
        }
    }
}
