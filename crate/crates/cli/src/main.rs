use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use nonlocal_core::sim::{self, SchemeChoice, SimConfig};
use nonlocal_core::{classify_regime, Error, RegimeLabel};

/// Simulate non-local aggregation-diffusion models on periodic domains.
#[derive(Parser)]
#[command(name = "nonlocal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation, writing snapshots and diagnostics.csv.
    Run(Common),
    /// Run several 1D schemes from the same initial condition and write
    /// comparison.csv with pairwise distances at each snapshot time.
    Compare {
        #[command(flatten)]
        common: Common,
        /// Schemes to compare; the first is the reference for relative distances.
        #[arg(long, value_delimiter = ',', default_value = "fd,fv,fem")]
        schemes: Vec<SchemeChoice>,
    },
}

#[derive(Args)]
struct Common {
    /// Configuration file (`key = value` lines).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `output` in the config. Default: ./output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// PRNG seed; overrides `seed` in the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Print nothing on success.
    #[arg(long)]
    quiet: bool,
}

impl Common {
    fn load(&self) -> Result<(SimConfig, PathBuf), Error> {
        let mut config = SimConfig::from_file(&self.config)?;
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        let dir = self
            .output
            .clone()
            .or_else(|| config.output.clone())
            .unwrap_or_else(|| PathBuf::from("output"));
        Ok((config, dir))
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Config { .. }) => 2,
        Some(e) if e.is_solver_failure() => 3,
        _ => 1,
    }
}

fn run(common: &Common) -> anyhow::Result<()> {
    let (config, dir) = common.load()?;
    let summary = sim::run(&config, &dir)?;
    if !common.quiet {
        let last = &summary.last;
        println!(
            "{} steps to t = {}; {} snapshots and diagnostics in {}",
            summary.steps,
            last.time,
            summary.snapshots.len(),
            dir.display()
        );
        for (s, name) in ["u", "v"].iter().enumerate().take(last.mass.len()) {
            println!(
                "{name}: mass {:.12e}, min {:.6e}, max {:.6e}{}",
                last.mass[s],
                last.min[s],
                last.max[s],
                if last.oscillatory[s] { ", oscillatory" } else { "" }
            );
        }
        if last.mass.len() == 2 {
            report_regime(&config, &summary.snapshots)?;
        }
    }
    Ok(())
}

/// Prints the predicted and observed sorting regime of a two-population run.
fn report_regime(config: &SimConfig, snapshots: &[PathBuf]) -> anyhow::Result<()> {
    let Some(last) = snapshots.last() else {
        return Ok(());
    };
    let (u, v) = read_two_columns(last, config.dim)?;
    let observed = classify_regime(&u, &v)?;
    let predicted = RegimeLabel::predicted(config.su, config.sv, config.c)
        .map_or("none".to_string(), |l| l.to_string());
    println!(
        "regime at t = {}: {observed} (predicted {predicted}; similarity {:.4}, segregation {:.4}, asymmetry {:.4})",
        config.snapshot_times.last().copied().unwrap_or(0.0),
        observed.stats.similarity,
        observed.stats.segregation,
        observed.stats.asymmetry()
    );
    Ok(())
}

fn read_two_columns(path: &Path, dim: usize) -> anyhow::Result<(Vec<f64>, Vec<f64>)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (mut u, mut v) = (Vec::new(), Vec::new());
    for line in text.lines().skip(1) {
        let cols: Vec<f64> = line
            .split(',')
            .map(str::parse)
            .collect::<Result<_, _>>()
            .with_context(|| format!("parsing {}", path.display()))?;
        u.push(cols[dim]);
        v.push(cols[dim + 1]);
    }
    Ok((u, v))
}

fn compare(common: &Common, schemes: &[SchemeChoice]) -> anyhow::Result<()> {
    let (config, dir) = common.load()?;
    let report = sim::compare_schemes(&config, schemes)?;
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("comparison.csv");
    let mut w = BufWriter::new(File::create(&path)?);
    report.write_csv(&mut w)?;
    w.flush()?;
    if !common.quiet {
        for r in &report.rows {
            println!(
                "t = {:<8} {:>12} vs {:<12} rel L2 {:.3e}  rel Linf {:.3e}{}{}",
                r.time,
                r.first.name(),
                r.second.name(),
                r.rel_l2,
                r.rel_linf,
                if r.first_oscillatory { format!("  [{} oscillatory]", r.first.name()) } else { String::new() },
                if r.second_oscillatory { format!("  [{} oscillatory]", r.second.name()) } else { String::new() },
            );
        }
        println!("report written to {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(common) => run(common),
        Command::Compare { common, schemes } => compare(common, schemes),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
