//! Command-line front end for the `horocycle` library.
//!
//! Every subcommand validates its arguments, runs one computation and prints
//! a table as CSV (with `#` metadata lines) or as a JSON object.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

mod commands;
pub mod output;

use output::{Format, Table};

#[derive(Debug, Parser)]
#[command(name = "horocycle", version, about = "Farey statistics, periodic orbits, cusp excursions and slope gaps from the BCZ map")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for parallel grid evaluation.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub threads: Option<u64>,
    /// Seed for random bases.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Statistics of the Farey sequence F(Q) restricted to an interval.
    Farey(commands::FareyArgs),
    /// Hall's distribution of normalized Farey gaps on a grid.
    HallCdf(commands::HallArgs),
    /// A BCZ orbit from an exact or float starting point.
    Orbit(commands::OrbitArgs),
    /// Running averages of cusp excursions.
    Excursions(commands::ExcursionArgs),
    /// Slopes and slope gaps of a lattice in a vertical strip.
    Slopes(commands::SlopeArgs),
    /// Periods and cocycles of rational-slope points.
    Periodic(commands::PeriodicArgs),
    /// Integrals over the Farey triangle, closed form against quadrature.
    Measure(commands::MeasureArgs),
}

/// Failure of a run, split by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// Numerical or internal failure: exit code 1.
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Internal(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "invalid input: {m}"),
            Failure::Internal(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<horocycle::Error> for Failure {
    fn from(e: horocycle::Error) -> Self {
        use horocycle::Error::*;
        match e {
            Drift { .. } | IterationCap { .. } | Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

fn compute(cli: &Cli) -> Outcome<Table> {
    let seed = cli.global.seed;
    match &cli.command {
        Command::Farey(a) => commands::farey(a),
        Command::HallCdf(a) => commands::hall_cdf_cmd(a),
        Command::Orbit(a) => commands::orbit(a),
        Command::Excursions(a) => commands::excursions(a),
        Command::Slopes(a) => commands::slopes(a, seed),
        Command::Periodic(a) => commands::periodic(a),
        Command::Measure(a) => commands::measure(a),
    }
}

/// Runs a parsed command line and writes its table.
pub fn run(cli: &Cli) -> Outcome<()> {
    let table = match cli.global.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k as usize)
            .build()
            .map_err(|e| Failure::Internal(e.to_string()))?
            .install(|| compute(cli))?,
        None => compute(cli)?,
    };
    let mut out: Box<dyn Write> = match &cli.global.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    table.write(cli.global.format, &mut out)?;
    out.flush()?;
    Ok(())
}
