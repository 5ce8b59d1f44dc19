//! Command-line front end: simulation samples, density tables and the
//! verification suites.

pub mod table;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use cyclic_motion::analytic::{
    ac_mass, analytic_singular_masses, conditional_density_u, density_u, mean_u, moment_u,
};
use cyclic_motion::sim::{simulate_ensemble, Conditioning};
use cyclic_motion::verify::{run_suite, Suite, VerifyConfig};
use cyclic_motion::ModelParams;

use crate::table::Table;

pub const GIT_DESCRIBE: &str = env!("CYCLIC_MOTION_GIT_DESCRIBE");

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Io(String),
    Verification(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Verification(names) => write!(f, "verification failed: {}", names.join(", ")),
        }
    }
}

impl From<cyclic_motion::Error> for CliError {
    fn from(e: cyclic_motion::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cyclic-motion",
    version,
    about = "Cyclic random motions with finite speed"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate final positions, one row per replication.
    Simulate(SimulateArgs),
    /// Tabulate the density of U = |X_1| + ... + |X_d| on a grid.
    Density(DensityArgs),
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub c: f64,
    #[arg(long)]
    pub t: f64,
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams, CliError> {
        if !(self.t.is_finite() && self.t > 0.0) {
            return Err(CliError::Usage(format!(
                "time t must be finite and > 0, got {}",
                self.t
            )));
        }
        Ok(ModelParams::new(self.c, self.lambda, self.dim)?)
    }

    fn describe(&self, table: &mut Table) {
        table.meta("dim", self.dim);
        table.meta("lambda", self.lambda);
        table.meta("c", self.c);
        table.meta("t", self.t);
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub count: usize,
    #[arg(long)]
    pub seed: u64,
    /// Condition on exactly this many switches.
    #[arg(long)]
    pub condition_n: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Number of grid points on [0, ct], both ends included.
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    /// Add a conditional density column for each switch count.
    #[arg(long, value_delimiter = ',')]
    pub condition_n: Vec<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    pub suite: Suite,
    #[arg(long)]
    pub seed: u64,
    /// Largest dimension for the conjecture pairs.
    #[arg(long, default_value_t = 5)]
    pub max_dim: usize,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub heat_samples: usize,
    /// Multiply the analytic density used by goodness-of-fit and
    /// normalization checks. Values other than 1 deliberately break the
    /// law, to check that the suite notices.
    #[arg(long, default_value_t = 1.0)]
    pub density_scale: f64,
    /// Keep only checks whose name contains this string.
    #[arg(long)]
    pub filter: Option<String>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: cyclic_motion::Error| e.to_string())
}

fn header(command: &str) -> Table {
    let mut t = Table::default();
    t.meta("command", command);
    t.meta("version", env!("CARGO_PKG_VERSION"));
    t.meta("build", GIT_DESCRIBE);
    t
}

pub fn simulate(args: &SimulateArgs) -> Result<Table, CliError> {
    let params = args.model.params()?;
    let conditioning = args
        .condition_n
        .map_or(Conditioning::Unconditional, Conditioning::Events);
    let set = simulate_ensemble(&params, args.model.t, args.count, args.seed, conditioning)?;
    let mut table = header("simulate");
    args.model.describe(&mut table);
    table.meta("count", args.count);
    table.meta("seed", args.seed);
    table.meta("conditioning", conditioning);
    table.columns = ["replication", "n_events", "u", "stratum"]
        .map(String::from)
        .to_vec();
    table
        .columns
        .extend((1..=params.dim()).map(|i| format!("x{i}")));
    table.columns.push("final_direction".into());
    table.rows = set
        .outcomes
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let mut row = vec![
                i.to_string(),
                o.n_events.to_string(),
                o.u.to_string(),
                o.stratum.to_string(),
            ];
            row.extend(o.position.iter().map(f64::to_string));
            row.push(o.final_direction.index().to_string());
            row
        })
        .collect();
    Ok(table)
}

pub fn density(args: &DensityArgs) -> Result<Table, CliError> {
    let params = args.model.params()?;
    if params.dim() > 3 {
        return Err(CliError::Usage(format!(
            "simulation-only dimension: no analytic law for dim {}",
            params.dim()
        )));
    }
    if args.points < 2 {
        return Err(CliError::Usage("the grid needs at least 2 points".into()));
    }
    let t = args.model.t;
    let reach = params.reach(t);
    let mut table = header("density");
    args.model.describe(&mut table);
    table.meta("points", args.points);
    for m in analytic_singular_masses(&params, t)? {
        table.meta(format!("singular_mass.{}", m.stratum), m.mass);
        table.meta(format!("singular_cells.{}", m.stratum), m.cells);
    }
    table.meta("interior_mass", ac_mass(&params, t)?);
    if params.dim() == 2 {
        table.meta("mean_u", mean_u(&params, t)?);
        for m in 2..=4 {
            table.meta(format!("moment_u.{m}"), moment_u(&params, m, t)?);
        }
    }
    table.columns = vec!["u".into(), "p_unconditional".into()];
    table
        .columns
        .extend(args.condition_n.iter().map(|n| format!("p_cond_n{n}")));
    for i in 0..args.points {
        let u = reach * i as f64 / (args.points - 1) as f64;
        let mut row = vec![u.to_string(), density_u(&params, t, u)?.to_string()];
        for &n in &args.condition_n {
            row.push(conditional_density_u(&params, n, t, u)?.to_string());
        }
        table.rows.push(row);
    }
    Ok(table)
}

pub fn verify(args: &VerifyArgs) -> Result<cyclic_motion::verify::VerifyReport, CliError> {
    let cfg = VerifyConfig {
        seed: args.seed,
        max_dim: args.max_dim,
        samples: args.samples,
        heat_samples: args.heat_samples,
        density_scale: args.density_scale,
        filter: args.filter.clone(),
    };
    Ok(run_suite(args.suite, &cfg))
}

fn write_report(path: &Path, report: &cyclic_motion::verify::VerifyReport) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report).map_err(|e| CliError::Io(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Runs a parsed command; progress goes to stdout.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Simulate(args) => {
            let table = simulate(args)?;
            table.write(&args.out)?;
            println!("wrote {} rows to {}", table.rows.len(), args.out.display());
        }
        Command::Density(args) => {
            let table = density(args)?;
            table.write(&args.out)?;
            println!("wrote {} rows to {}", table.rows.len(), args.out.display());
        }
        Command::Verify(args) => {
            let report = verify(args)?;
            for r in &report.reports {
                println!("{r}");
            }
            if let Some(path) = &args.report {
                write_report(path, &report)?;
            }
            let failed: Vec<String> = report.failures().map(|r| r.name.clone()).collect();
            if !failed.is_empty() {
                return Err(CliError::Verification(failed));
            }
            println!(
                "all {} blocking checks passed",
                report.reports.iter().filter(|r| r.blocking).count()
            );
        }
    }
    Ok(())
}
