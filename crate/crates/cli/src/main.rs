//! `hydrobound`: bounds, regime tables, verification and sweeps from a JSON
//! composite description.

mod config;
mod report;

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hydrobound::{
    characteristic_constants, regime_table, verify_composite, BoundTarget, Composite, Error, Loading,
    NormalizedSpec, Phase,
};
use rayon::prelude::*;

use config::{parse_exponent, RunConfig};
use report::{write_rows, BoundRow, Format, TableRow, VerifyRow};

const DEFAULT_GRID_N: usize = 4096;

#[derive(Debug)]
pub enum CliError {
    /// Bad config, flag or output path: exit 2.
    Input(String),
    /// Failed verification or internal inconsistency: exit 1.
    Failure(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        CliError::Failure(msg.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SingularInterfaceSystem
            | Error::ConsistencyFailure { .. }
            | Error::SingularSystem
            | Error::NonConvergent(_) => CliError::Failure(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "hydrobound", version, about = "Optimal lower bounds on hydrostatic stress moments in two-phase thermoelastic composites")]
struct Cli {
    /// Output format; overrides the config's options.format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower bound for one phase moment or the maximum hydrostatic field.
    Bounds {
        config: PathBuf,
        /// 1, 2 or max.
        #[arg(long, allow_hyphen_values = true)]
        phase: Option<String>,
        /// Moment exponent, 1 < p <= inf. The bound does not depend on it.
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
    },
    /// Piecewise closed form of a bound over the applied stress axis.
    Table {
        config: PathBuf,
        /// phase1, phase2 or max.
        #[arg(long)]
        target: Option<String>,
    },
    /// Closed-form, attainment and numerical checks for both coated-sphere orientations.
    Verify {
        config: PathBuf,
        /// Nodes of the radial grid used by the numerical solve.
        #[arg(long)]
        grid_n: Option<usize>,
    },
    /// Bounds over a grid of applied stress and temperature change.
    Sweep {
        config: PathBuf,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// 1, 2 or max.
        #[arg(long, allow_hyphen_values = true)]
        phase: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
    },
}

/// Target selection in the caller's labels.
fn parse_target(text: &str) -> Result<CallerTarget, CliError> {
    match text.trim().to_ascii_lowercase().as_str() {
        "1" | "phase1" => Ok(CallerTarget::Phase(Phase::One)),
        "2" | "phase2" => Ok(CallerTarget::Phase(Phase::Two)),
        "max" => Ok(CallerTarget::Max),
        other => Err(CliError::input(format!("unknown target {other:?}, expected 1, 2 or max"))),
    }
}

#[derive(Clone, Copy)]
enum CallerTarget {
    Phase(Phase),
    Max,
}

impl CallerTarget {
    fn internal(self, labels: &NormalizedSpec) -> BoundTarget {
        match self {
            CallerTarget::Phase(p) => BoundTarget::for_phase(labels.to_internal(p)),
            CallerTarget::Max => BoundTarget::MaxField,
        }
    }
}

struct Setup {
    cfg: RunConfig,
    composite: Composite,
    labels: NormalizedSpec,
    format: Format,
}

fn setup(path: &Path, format: Option<Format>) -> Result<Setup, CliError> {
    let cfg = RunConfig::load(path)?;
    let (composite, labels) = cfg.composite()?;
    let format = match (format, &cfg.options.format) {
        (Some(f), _) => f,
        (None, Some(s)) => Format::parse(s)?,
        (None, None) => Format::Csv,
    };
    Ok(Setup {
        cfg,
        composite,
        labels,
        format,
    })
}

fn target_or_default(flag: Option<String>, option: Option<&String>, default: &str) -> Result<CallerTarget, CliError> {
    parse_target(flag.as_deref().or(option.map(String::as_str)).unwrap_or(default))
}

fn exponent_or_default(flag: Option<String>, cfg: &RunConfig) -> Result<String, CliError> {
    let text = flag
        .or_else(|| cfg.options.p.as_ref().map(|p| p.to_string()))
        .unwrap_or_else(|| "inf".into());
    Ok(parse_exponent(&text)?.to_string())
}

fn bound_row(s: &Setup, target: BoundTarget, p: &str, loading: Loading) -> Result<BoundRow, CliError> {
    loading.validate()?;
    let constants = characteristic_constants(&s.composite, loading.delta_t);
    let result = target.evaluate(&s.composite, &constants, loading.sigma0);
    Ok(BoundRow::new(
        loading.sigma0,
        loading.delta_t,
        target,
        p,
        &result,
        &s.composite.ordering().to_string(),
        &s.labels,
    ))
}

fn stdout_rows<T: serde::Serialize>(rows: &[T], format: Format) -> Result<(), CliError> {
    write_rows(io::stdout().lock(), rows, format)
}

fn cmd_bounds(s: Setup, phase: Option<String>, p: Option<String>) -> Result<(), CliError> {
    let target = target_or_default(phase, s.cfg.options.phase.as_ref(), "max")?.internal(&s.labels);
    let p = exponent_or_default(p, &s.cfg)?;
    let row = bound_row(&s, target, &p, s.cfg.scalar_loading()?)?;
    stdout_rows(&[row], s.format)
}

fn cmd_table(s: Setup, target: Option<String>) -> Result<(), CliError> {
    let target = target_or_default(target, s.cfg.options.target.as_ref(), "max")?.internal(&s.labels);
    let delta_t = s.cfg.scalar_delta_t()?;
    Loading::new(0.0, delta_t).validate()?;
    let table = regime_table(&s.composite, delta_t, target);
    stdout_rows(&TableRow::from_table(&table, delta_t, &s.labels), s.format)
}

fn cmd_verify(s: Setup, grid_n: Option<usize>) -> Result<(), CliError> {
    let grid_n = grid_n.or(s.cfg.options.grid_n).unwrap_or(DEFAULT_GRID_N);
    let loading = s.cfg.scalar_loading()?;
    loading.validate()?;
    let report = verify_composite(&s.composite, &loading, grid_n)?;
    let rows: Vec<VerifyRow> = report
        .checks
        .iter()
        .map(|c| VerifyRow::new(c, report.grid_n, &s.labels))
        .collect();
    stdout_rows(&rows, s.format)?;
    match report.first_failure() {
        None => Ok(()),
        Some(c) => {
            let core = c
                .core_phase
                .map(|p| format!(" (core phase {})", s.labels.to_caller(p)))
                .unwrap_or_default();
            let note = c.note.as_deref().map(|n| format!("; {n}")).unwrap_or_default();
            Err(CliError::Failure(format!(
                "verification failed; first failed check: {}{core}: residual {:e} exceeds tolerance {:e}{note}",
                c.name, c.residual, c.tolerance
            )))
        }
    }
}

fn cmd_sweep(s: Setup, out: Option<PathBuf>, phase: Option<String>, p: Option<String>) -> Result<(), CliError> {
    let load = &s.cfg.loading;
    if !(load.sigma0.is_range() || load.delta_t.is_range()) {
        return Err(CliError::input("sweep needs a {start, stop, count} range for sigma0 and/or delta_t"));
    }
    let target = target_or_default(phase, s.cfg.options.phase.as_ref(), "max")?.internal(&s.labels);
    let p = exponent_or_default(p, &s.cfg)?;
    // open the destination before computing so a bad path fails fast
    let sink: Box<dyn Write> = match &out {
        Some(path) => Box::new(
            File::create(path).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?,
        ),
        None => Box::new(io::stdout().lock()),
    };
    let dts = load.delta_t.values();
    let grid: Vec<Loading> = load
        .sigma0
        .values()
        .into_iter()
        .flat_map(|s0| dts.iter().map(move |&dt| Loading::new(s0, dt)))
        .collect();
    let rows = grid
        .par_iter()
        .map(|&l| bound_row(&s, target, &p, l))
        .collect::<Result<Vec<_>, _>>()?;
    write_rows(sink, &rows, s.format)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bounds { config, phase, p } => cmd_bounds(setup(&config, cli.format)?, phase, p),
        Command::Table { config, target } => cmd_table(setup(&config, cli.format)?, target),
        Command::Verify { config, grid_n } => cmd_verify(setup(&config, cli.format)?, grid_n),
        Command::Sweep { config, out, phase, p } => cmd_sweep(setup(&config, cli.format)?, out, phase, p),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (CliError::Input(msg) | CliError::Failure(msg)) = &e;
            eprintln!("error: {msg}");
            ExitCode::from(e.exit_code())
        }
    }
}
