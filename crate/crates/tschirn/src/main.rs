//! Command-line entry point.
//!
//! Exit codes: 0 when every check passes (explanatory skips allowed),
//! 1 when a check fails or a certificate does not re-validate, 2 on
//! input or validation errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use tschirn::ledger_run::run_ledger_file;
use tschirn::recheck::recheck_report;
use tschirn::report::Report;
use tschirn::scenario::Scenario;
use tschirn::tasks::run_scenario;
use tschirn_core::cover::classify_parameters;
use tschirn_core::qpoly::{parse_rat, GroebnerConfig};

#[derive(Parser)]
#[command(
    name = "tschirn",
    version,
    about = "Certified reports for a family of triple covers of abelian surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a scenario file and print the report.
    Run {
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Re-validate every certificate in the report before printing.
        #[arg(long)]
        recheck: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a single ledger script as a one-entry report.
    Ledger {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        recheck: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a rational parameter pair.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Print the tool version.
    Version,
}

/// The Groebner step budget, overridable through TSCHIRN_BUDGET.
fn groebner_config() -> Result<GroebnerConfig> {
    match std::env::var("TSCHIRN_BUDGET") {
        Ok(text) => {
            let steps: u64 = text
                .trim()
                .parse()
                .with_context(|| format!("TSCHIRN_BUDGET `{text}` is not a positive integer"))?;
            if steps == 0 {
                bail!("TSCHIRN_BUDGET must be positive");
            }
            Ok(GroebnerConfig {
                step_budget: steps,
                ..GroebnerConfig::default()
            })
        }
        Err(std::env::VarError::NotPresent) => Ok(GroebnerConfig::default()),
        Err(e) => Err(e).context("TSCHIRN_BUDGET is not valid unicode"),
    }
}

fn emit(report: &Report, format: Format, recheck: bool, out: Option<&PathBuf>) -> Result<u8> {
    let mut code = report.exit_code();
    if recheck {
        let problems = recheck_report(report);
        if !problems.is_empty() {
            for p in &problems {
                eprintln!("recheck: {p}");
            }
            code = 1;
        }
    }
    let rendered = match format {
        Format::Json => report.render_json(),
        Format::Md => report.render_markdown(),
    };
    match out {
        Some(path) => std::fs::write(path, rendered)
            .with_context(|| format!("cannot write report to {}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(code)
}

fn run() -> Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            scenario,
            format,
            recheck,
            out,
        } => {
            let scenario = Scenario::load(&scenario)?;
            let config = groebner_config()?;
            let report = run_scenario(&scenario, &config)?;
            emit(&report, format, recheck, out.as_ref())
        }
        Command::Ledger {
            file,
            format,
            recheck,
            out,
        } => {
            let report = run_ledger_file(&file)?;
            emit(&report, format, recheck, out.as_ref())
        }
        Command::Classify { s, t } => {
            let s = parse_rat(&s).with_context(|| format!("invalid s `{s}`"))?;
            let t = parse_rat(&t).with_context(|| format!("invalid t `{t}`"))?;
            let class = classify_parameters(&s, &t)?;
            println!("{class}");
            Ok(0)
        }
        Command::Version => {
            println!("tschirn {}", env!("CARGO_PKG_VERSION"));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
