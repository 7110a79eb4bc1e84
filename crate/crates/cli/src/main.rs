use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hstab::analyzer::Strategy;
use hstab::commands::{
    analyze, render_rows, sweep, tube_table, verify_paper, AnalyzeConfig, Format, GridOverride, SweepConfig,
    SweepSpec, VerifyConfig,
};
use hstab::Error;

/// Hamiltonian second variation and H-stability of Lagrangian submanifolds.
#[derive(Parser, Debug)]
#[command(name = "hstab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recompute every published value and verdict; exit 1 if any check fails.
    VerifyPaper {
        #[command(flatten)]
        common: Common,
    },
    /// Classify one catalog entry.
    Analyze {
        #[arg(long)]
        catalog_id: String,
        /// Overrides the entry's default strategy.
        #[arg(long, value_parser = parse_strategy)]
        strategy: Option<Strategy>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a one-parameter family: ratio=<a>:<b>:<n>, k=<a>:<b> or kappa=<a>:<b>:<n>.
    Sweep {
        #[arg(long)]
        catalog_id: String,
        #[arg(long, value_parser = parse_sweep)]
        sweep: SweepSpec,
        #[command(flatten)]
        common: Common,
    },
    /// Recompute the (G, G′) verdicts of every geodesic-tube row; exit 1 on a mismatch.
    TubeTable {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Quadrature nodes per axis (at least 8).
    #[arg(long)]
    grid: Option<usize>,
    /// Fixed half-width of line-axis integration boxes.
    #[arg(long = "box")]
    line_box: Option<f64>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized probes.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Common {
    fn grid(&self) -> GridOverride {
        GridOverride {
            nodes: self.grid,
            line_box: self.line_box,
        }
    }
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_sweep(s: &str) -> Result<SweepSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownCatalogId(_)
            | Error::MalformedCatalogId { .. }
            | Error::MalformedSweep { .. }
            | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Runtime(e.to_string())),
    }
}

/// Returns whether every check passed.
fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::VerifyPaper { common } => {
            let report = verify_paper(&VerifyConfig {
                grid: common.grid(),
                seed: common.seed,
            })?;
            emit(&report.render(common.format)?, common.out.as_ref())?;
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("FAIL {}: {} (expected {}, got {})", c.id, c.description, c.expected, c.actual);
            }
            eprintln!("{} of {} checks passed", report.passed, report.checks.len());
            Ok(report.all_passed())
        }
        Command::Analyze {
            catalog_id,
            strategy,
            common,
        } => {
            let report = analyze(&AnalyzeConfig {
                catalog_id,
                grid: common.grid(),
                strategy,
                seed: common.seed,
            })?;
            if let Some(w) = &report.warning {
                eprintln!("warning: {w}");
            }
            emit(&report.render(common.format)?, common.out.as_ref())?;
            Ok(true)
        }
        Command::Sweep {
            catalog_id,
            sweep: spec,
            common,
        } => {
            let rows = sweep(&SweepConfig {
                catalog_id,
                spec: Some(spec),
                grid: common.grid(),
            })?;
            emit(&render_rows(&rows, common.format)?, common.out.as_ref())?;
            Ok(true)
        }
        Command::TubeTable { common } => {
            let table = tube_table(&common.grid(), common.seed)?;
            emit(&table.render(common.format)?, common.out.as_ref())?;
            if table.mismatches > 0 {
                eprintln!("{} verdicts differ from the published table", table.mismatches);
            }
            Ok(table.mismatches == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
