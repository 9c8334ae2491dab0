//! Argument parsing and dispatch for the `kway` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kway_core::{make_state, DensityOperator, Family, FamilyPoint, OptimizationOptions, RotationMode};

use crate::columns::Column;
use crate::commands;
use crate::error::{CliError, CliResult};
use crate::format::sig9;
use crate::grid::SweepGrid;
use crate::statefile::{self, StateFile};
use crate::sweep::{self, Preset, SweepConfig, SUBSYSTEMS};

#[derive(Debug, Parser)]
#[command(name = "kway", version, about = "K-way negativity analysis of multi-qubit states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a state is a valid density operator.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Global, K-way and partial K-way negativities of one state.
    Report {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate columns over a parameter grid.
    Sweep(SweepArgs),
    /// Minimize total K-way negativity over local rotations.
    Minimize {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        opt: OptimizerArgs,
        /// Write the minimized state here as a state file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entry counts of each coherence-weight block.
    Decompose {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
pub struct Source {
    /// One of ghz, w, psi1, psi2, boson, noisy, psi1-canonical.
    #[arg(long, conflicts_with = "state_file")]
    pub family: Option<String>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    /// JSON state file.
    #[arg(long)]
    pub state_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Output file; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Real,
    Euler,
}

#[derive(Debug, Args)]
pub struct OptimizerArgs {
    /// Coherence weight whose total negativity is minimized.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// One-based qubits to rotate, comma separated, or "all".
    #[arg(long)]
    pub qubits: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_preset)]
    pub preset: Option<Preset>,
    #[arg(long)]
    pub family: Option<String>,
    /// Axes such as "q=0:1:0.01,a=0:1:0.01".
    #[arg(long)]
    pub grid: Option<String>,
    /// Comma-separated column names; defaults to the preset's.
    #[arg(long)]
    pub columns: Option<String>,
    /// Fixed q when the grid does not vary it.
    #[arg(long)]
    pub q: Option<f64>,
    /// Fixed a when the grid does not vary it.
    #[arg(long)]
    pub a: Option<f64>,
    #[command(flatten)]
    pub opt: OptimizerArgs,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse().map_err(|e: CliError| e.message)
}

fn parse_family(s: &str) -> CliResult<Family> {
    s.parse().map_err(CliError::from)
}

/// A loaded state and, when it came from a family, its parameters.
struct Loaded {
    rho: DensityOperator,
    point: Option<FamilyPoint>,
}

fn load(source: &Source) -> CliResult<Loaded> {
    match (&source.family, &source.state_file) {
        (Some(f), None) => {
            let point = FamilyPoint::new(parse_family(f)?, source.q, source.a)?;
            Ok(Loaded {
                rho: make_state(&point)?,
                point: Some(point),
            })
        }
        (None, Some(path)) => {
            if source.q.is_some() || source.a.is_some() {
                return Err(CliError::usage("--q/--a only apply with --family"));
            }
            Ok(Loaded {
                rho: statefile::load(path)?,
                point: None,
            })
        }
        _ => Err(CliError::usage("give exactly one of --family or --state-file")),
    }
}

fn parse_qubits(spec: &str, n: usize) -> CliResult<Option<Vec<usize>>> {
    if spec.trim() == "all" {
        return Ok(None);
    }
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let q: usize = part
            .parse()
            .map_err(|_| CliError::usage(format!("bad qubit '{part}' in --qubits")))?;
        if q == 0 || q > n {
            return Err(CliError::usage(format!("qubit {q} out of range 1..={n}")));
        }
        out.push(q - 1);
    }
    if out.is_empty() {
        return Err(CliError::usage("--qubits is empty"));
    }
    Ok(Some(out))
}

fn options(
    args: &OptimizerArgs,
    n: usize,
    default_qubits: Option<Vec<usize>>,
) -> CliResult<OptimizationOptions> {
    Ok(OptimizationOptions {
        target_weight: args.k,
        mode: match args.mode.unwrap_or(Mode::Real) {
            Mode::Real => RotationMode::RealAngle,
            Mode::Euler => RotationMode::Euler,
        },
        qubits: match &args.qubits {
            Some(spec) => parse_qubits(spec, n)?,
            None => default_qubits,
        },
        restarts: args.restarts,
        seed: args.seed,
        ..Default::default()
    })
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::usage(format!("cannot write output: {e}"))),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("documents serialize") + "\n"
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Validate { source } => {
            let loaded = load(&source)?;
            emit(&None, &pretty(&commands::validate_document(&loaded.rho)?), stdout)
        }
        Command::Report { source, output } => {
            let loaded = load(&source)?;
            let doc = commands::report_document(&loaded.rho)?;
            let text = match output.format {
                Format::Json => pretty(&doc),
                Format::Csv => commands::flat_csv(&doc),
            };
            emit(&output.out, &text, stdout)
        }
        Command::Decompose { source, output } => {
            let loaded = load(&source)?;
            let text = match output.format {
                Format::Json => pretty(&commands::decompose_document(&loaded.rho)),
                Format::Csv => commands::decompose_csv(&loaded.rho),
            };
            emit(&output.out, &text, stdout)
        }
        Command::Minimize { source, opt, out } => {
            let loaded = load(&source)?;
            let opts = options(&opt, loaded.rho.dims().len(), None)?;
            let outcome = commands::minimize(&loaded.rho, loaded.point.as_ref(), &opts)?;
            if let Some(path) = &out {
                statefile::save(path, &StateFile::from_density(&outcome.result.state))?;
            }
            emit(&None, &pretty(&commands::minimize_document(&outcome, &opts)), stdout)
        }
        Command::Sweep(args) => sweep_command(args, stdout, stderr),
    }
}

fn sweep_command(args: SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    let family = match (&args.family, args.preset) {
        (Some(f), Some(p)) => {
            let f = parse_family(f)?;
            if f != p.family() {
                return Err(CliError::usage(format!(
                    "preset {:?} sweeps family {}, not {f}",
                    p,
                    p.family()
                )));
            }
            f
        }
        (Some(f), None) => parse_family(f)?,
        (None, Some(p)) => p.family(),
        (None, None) => return Err(CliError::usage("sweep needs --preset or --family")),
    };
    let grid_spec = match (&args.grid, args.preset) {
        (Some(g), _) => g.clone(),
        (None, Some(p)) => p.default_grid().to_string(),
        (None, None) => return Err(CliError::usage("sweep needs --grid without a preset")),
    };
    let grid = SweepGrid::parse(&grid_spec)?;
    let columns = match (&args.columns, args.preset) {
        (Some(list), _) => Column::parse_list(list, SUBSYSTEMS)?,
        (None, Some(p)) => sweep::columns_with_params(&grid, p.columns())?,
        (None, None) => return Err(CliError::usage("sweep needs --columns without a preset")),
    };
    let default_qubits = args.preset.and_then(Preset::default_qubits);
    let config = SweepConfig {
        family,
        grid,
        columns,
        fixed_q: args.q,
        fixed_a: args.a,
        minimize: options(&args.opt, SUBSYSTEMS, default_qubits)?,
        threads: args.threads,
    };
    let table = sweep::run(&config)?;
    if args.preset == Some(Preset::Fig4) {
        for name in ["E3_2", "E2_2"] {
            if let (Some(row), Some(c)) = (table.argmax(name), table.column(name)) {
                let at: Vec<String> = config
                    .grid
                    .axes
                    .iter()
                    .filter_map(|a| table.column(a.param.name()).map(|i| format!("{}={}", a.param.name(), sig9(row[i]))))
                    .collect();
                let _ = writeln!(stderr, "max {name} = {} at {}", sig9(row[c]), at.join(", "));
            }
        }
    }
    let text = match args.format {
        Format::Csv => table.to_csv(),
        Format::Json => pretty(&table.to_json()),
    };
    emit(&args.out, &text, stdout)
}
