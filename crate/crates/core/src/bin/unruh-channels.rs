use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use unruh_channels::states::{density_to_bloch, validate_density};
use unruh_channels::sweep::config::{resolve_family, FamilyArgs, OutputFormat, RangeArgs, SweepArgs};
use unruh_channels::sweep::{csv, discrepancy_report, plot, run_sweep, ReportConfig};
use unruh_channels::{channel, make_state, AccelerationPair, Error, MeasureReport, RegionSelector};

#[derive(Debug, Parser)]
#[command(name = "unruh-channels", version, about = "Entangled two-qubit channels between accelerated observers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a family member, its travelled states and their measures.
    State(StateArgs),
    /// Evaluate measures over an acceleration (and family-parameter) grid.
    Sweep(SweepArgs),
    /// Compare the closed-form expressions with the computed channel.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct StateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Alice's acceleration parameter, in [0, π/4].
    #[arg(long, default_value_t = 0.0)]
    ra: f64,
    /// Rob's acceleration parameter, in [0, π/4].
    #[arg(long, default_value_t = 0.0)]
    rb: f64,
    /// Region pair, repeatable; defaults to all four.
    #[arg(long = "region")]
    regions: Vec<String>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long, default_value_t = ReportConfig::default().grid)]
    grid: usize,
    #[arg(long, default_value_t = ReportConfig::default().samples)]
    samples: usize,
    #[arg(long, default_value_t = ReportConfig::default().seed)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exit_code(err: &Error) -> u8 {
    match err.root() {
        Error::Config(_) | Error::InvalidArgument(_) | Error::DimensionMismatch { .. } => 2,
        Error::NumericInvariant(_) => 3,
        _ => 1,
    }
}

fn run_state(args: StateArgs) -> unruh_channels::Result<()> {
    let (family, _) = resolve_family(&args.family, &RangeArgs::default())?;
    let rho = make_state(&family)?;
    let acc = AccelerationPair::new(args.ra, args.rb)?;
    let regions = if args.regions.is_empty() {
        RegionSelector::ALL.to_vec()
    } else {
        args.regions.iter().map(|r| r.parse()).collect::<unruh_channels::Result<_>>()?
    };

    let mut out = io::stdout().lock();
    writeln!(out, "{} {:?}", family.name(), family.param_values())?;
    writeln!(out, "{rho}")?;
    writeln!(out, "{}", validate_density(&rho))?;
    writeln!(out, "r_a = {}, r_b = {}", acc.r_a(), acc.r_b())?;
    for sel in regions {
        let travelled = channel(&rho, acc, sel)?;
        let b = density_to_bloch(&travelled)?;
        writeln!(out, "\nregion {sel}")?;
        writeln!(out, "{travelled}")?;
        writeln!(out, "s = {:?}\nt = {:?}", b.s.as_slice(), b.t.as_slice())?;
        writeln!(out, "C = {:?}", b.c.transpose().as_slice())?;
        writeln!(out, "{}", MeasureReport::compute(&travelled, &rho)?)?;
    }
    Ok(())
}

fn run_sweep_command(args: SweepArgs) -> unruh_channels::Result<()> {
    let cfg = args.into_config()?;
    info!("sweep: {cfg}");
    let table = run_sweep(&cfg)?;
    let fmt = cfg.output.format;
    if matches!(fmt, OutputFormat::Csv | OutputFormat::Both) {
        match &cfg.output.path {
            Some(path) => csv::emit_csv(&table, path)?,
            None => csv::write_csv(&table, io::stdout().lock())?,
        }
    }
    if matches!(fmt, OutputFormat::Plot | OutputFormat::Both) {
        let path = cfg.output.path.as_ref().expect("validated: plots need --out");
        let stem = path.with_extension("");
        for written in plot::write_figures(&table, &stem)? {
            info!("wrote {}", written.display());
        }
    }
    Ok(())
}

fn run_report(args: ReportArgs) -> unruh_channels::Result<()> {
    let report = discrepancy_report(ReportConfig { grid: args.grid, samples: args.samples, seed: args.seed })?;
    let text = format!("{report}\n");
    match args.out {
        Some(path) => std::fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::State(args) => run_state(args),
        Command::Sweep(args) => run_sweep_command(args),
        Command::Report(args) => run_report(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
