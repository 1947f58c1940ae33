//! The `verify` and `export` commands.
//!
//! Exit codes: 0 when every selected check passes (or is not applicable),
//! 1 when a check fails, 2 for usage errors, refused sizes and I/O problems.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::construction::export::{base_graph_export, cover_export, render, Format};
use crate::construction::{cycles, extension, theorem};
use crate::field::{Field, FieldSpec};
use crate::report::{CheckConfig, Mode, Report};
use crate::voltage::DEFAULT_LIFT_CAP;
use crate::{with_field, Error, Result};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "h3cover",
    version,
    about = "Voltage cover of H3(F) over GF(2^k) and its verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite and write its JSON report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Write a graph file or a full report.
    Export {
        #[arg(value_enum)]
        what: ExportTarget,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Reductive,
    Triangles,
    Quadrangles,
    Pentagons,
    Cycles,
    Equivariance,
    MainTheorem,
    Cocycle,
    Nonsplit,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Reductive,
        Suite::Triangles,
        Suite::Quadrangles,
        Suite::Pentagons,
        Suite::Cycles,
        Suite::Equivariance,
        Suite::MainTheorem,
        Suite::Cocycle,
        Suite::Nonsplit,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportTarget {
    BaseGraph,
    Cover,
    Report,
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    /// Field order: 2, 4, 8 or 16.
    #[arg(long, default_value_t = 2)]
    pub field: u32,
    #[arg(long, value_enum, default_value_t = Mode::Sample)]
    pub mode: Mode,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Largest graph or lifted component to build.
    #[arg(long, default_value_t = DEFAULT_LIFT_CAP)]
    pub cap: usize,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Validated run settings.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub check: CheckConfig,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl TryFrom<&RunArgs> for RunConfig {
    type Error = Error;

    fn try_from(a: &RunArgs) -> Result<Self> {
        Ok(RunConfig {
            field: FieldSpec::from_order(a.field)?,
            check: CheckConfig {
                mode: a.mode,
                samples: a.samples,
                seed: a.seed,
                cap: a.cap,
            },
            out: a.out.clone(),
            format: a.format,
        })
    }
}

fn suite_report<F: Field>(suite: Suite, cfg: &CheckConfig) -> Result<Report> {
    match suite {
        Suite::Reductive => cycles::verify_reductive::<F>(cfg),
        Suite::Triangles => cycles::verify_triangles::<F>(cfg),
        Suite::Quadrangles => cycles::verify_quadrangles::<F>(cfg),
        Suite::Pentagons => cycles::verify_pentagons::<F>(cfg),
        Suite::Cycles => {
            let mut r = theorem::verify_cycle_span::<F>(cfg)?;
            r.absorb(cycles::verify_w2_generators::<F>()?);
            Ok(r)
        }
        Suite::Equivariance => cycles::verify_equivariance::<F>(cfg),
        Suite::MainTheorem => theorem::verify_main_theorem::<F>(cfg),
        Suite::Cocycle => extension::verify_cocycle::<F>(cfg),
        Suite::Nonsplit => extension::verify_nonsplit::<F>(cfg),
        Suite::All => {
            let mut r = Report::new("all", F::SPEC, cfg.mode);
            for s in Suite::EACH {
                r.absorb(suite_report::<F>(s, cfg)?);
            }
            Ok(r)
        }
    }
}

/// Runs one suite over the configured field.
pub fn cmd_verify(suite: Suite, cfg: &RunConfig) -> Result<Report> {
    with_field!(cfg.field, F => suite_report::<F>(suite, &cfg.check))
}

/// Renders the requested export.
pub fn cmd_export(what: ExportTarget, cfg: &RunConfig) -> Result<String> {
    match what {
        ExportTarget::BaseGraph => {
            with_field!(cfg.field, F => render(&base_graph_export::<F>(&cfg.check)?, cfg.format))
        }
        ExportTarget::Cover => {
            with_field!(cfg.field, F => render(&cover_export::<F>(&cfg.check)?, cfg.format))
        }
        ExportTarget::Report => {
            require_json(cfg)?;
            report_json(&cmd_verify(Suite::All, cfg)?)
        }
    }
}

fn require_json(cfg: &RunConfig) -> Result<()> {
    match cfg.format {
        Format::Json => Ok(()),
        Format::Edgelist => Err(Error::Usage("reports are only written as JSON".into())),
    }
}

/// The report as pretty JSON with witnesses in canonical order.
pub fn report_json(report: &Report) -> Result<String> {
    let mut r = report.clone();
    r.witnesses.sort();
    Ok(serde_json::to_string_pretty(&r)? + "\n")
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Verify { suite, run } => {
            let cfg = RunConfig::try_from(run)?;
            require_json(&cfg)?;
            let report = cmd_verify(*suite, &cfg)?;
            emit(&report_json(&report)?, &cfg.out)?;
            eprintln!("{}", report.one_line());
            Ok(if report.passed() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            })
        }
        Command::Export { what, run } => {
            let cfg = RunConfig::try_from(run)?;
            let text = cmd_export(*what, &cfg)?;
            emit(&text, &cfg.out)?;
            if *what == ExportTarget::Report {
                let report: Report = serde_json::from_str(&text)?;
                return Ok(if report.passed() {
                    EXIT_PASS
                } else {
                    EXIT_FAIL
                });
            }
            Ok(EXIT_PASS)
        }
    }
}

/// Parses `args` (program name first) and runs the command; returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("h3cover: {e}");
            EXIT_USAGE
        }
    }
}
