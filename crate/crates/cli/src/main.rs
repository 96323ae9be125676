//! `latflow` command-line front-end.
//!
//! Every leaf command resolves its options from flags and an optional JSON
//! config file (keys mirror the long flag names; flags win), validates them,
//! and then either prints the resolved plan (`--dry-run`) or runs.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use commands::{
    DiophApprox, DiophExponent, DiophExt, DiophProbe, DirichletArgs, KempfArgs, RootsBuild, RootsCheck, SimExample,
    SimTranslate,
};

#[derive(Parser, Debug)]
#[command(name = "latflow", version, about = "Diagonal-flow experiments on the space of unimodular lattices")]
struct Cli {
    /// JSON file whose keys mirror the long flags of the subcommand.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Validate and print the resolved plan without computing.
    #[arg(long, global = true)]
    dry_run: bool,
    /// Output file, written atomically; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Best approximations, exponents, A^ext and membership probes.
    #[command(subcommand)]
    Dioph(Dioph),
    /// Solvability of the Dirichlet systems over a grid of T.
    Dirichlet(DirichletArgs),
    /// Translates of curves and the quadratic-field examples.
    #[command(subcommand)]
    Sim(Sim),
    /// Torus instability optimum of a vector.
    Kempf(KempfArgs),
    /// Root systems and the reflection-number check.
    #[command(subcommand)]
    Roots(Roots),
}

#[derive(Subcommand, Debug)]
enum Dioph {
    /// Sequence of best approximations up to a height bound.
    Approx(DiophApprox),
    /// Estimate of the uniform exponent from best approximations.
    Exponent(DiophExponent),
    /// The matrix A^ext of a 2 x (n-2) matrix A.
    Ext(DiophExt),
    /// Evidence for membership in W_r or W'_r.
    Probe(DiophProbe),
}

#[derive(Subcommand, Debug)]
enum Sim {
    /// Sample a curve, push it by the flow and record first minima and Siegel counts.
    Translate(SimTranslate),
    /// Emit a curve inside a rational subspace over a real quadratic field.
    Example(SimExample),
}

#[derive(Subcommand, Debug)]
enum Roots {
    /// Dump a root system as JSON.
    Build(RootsBuild),
    /// Run the reflection-number check.
    Check(RootsCheck),
}

/// Failure categories with their exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Budget(m) => write!(f, "resource limit: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<latflow::Error> for CliError {
    fn from(e: latflow::Error) -> Self {
        match e {
            latflow::Error::Budget { .. } | latflow::Error::Overflow(_) => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = cli.config.as_deref().map(config::load).transpose()?;
    let mut settings = config::Settings { out: cli.out, format: cli.format };
    let file = file.map(|f| config::split_common(f, &mut settings)).transpose()?;
    let file = file.as_ref();
    let job = match cli.command {
        Command::Dioph(Dioph::Approx(a)) => commands::prepare("dioph approx", a, file, commands::dioph_approx),
        Command::Dioph(Dioph::Exponent(a)) => commands::prepare("dioph exponent", a, file, commands::dioph_exponent),
        Command::Dioph(Dioph::Ext(a)) => commands::prepare("dioph ext", a, file, commands::dioph_ext),
        Command::Dioph(Dioph::Probe(a)) => commands::prepare("dioph probe", a, file, commands::dioph_probe),
        Command::Dirichlet(a) => commands::prepare("dirichlet", a, file, commands::dirichlet),
        Command::Sim(Sim::Translate(a)) => commands::prepare("sim translate", a, file, commands::sim_translate),
        Command::Sim(Sim::Example(a)) => commands::prepare("sim example", a, file, commands::sim_example),
        Command::Kempf(a) => commands::prepare("kempf", a, file, commands::kempf),
        Command::Roots(Roots::Build(a)) => commands::prepare("roots build", a, file, commands::roots_build),
        Command::Roots(Roots::Check(a)) => commands::prepare("roots check", a, file, commands::roots_check),
    }?;
    let format = settings.format.unwrap_or(job.default_format);
    if !job.formats.contains(&format) {
        return Err(CliError::Usage(format!("{} does not support --format {format:?}", job.name)));
    }
    if cli.dry_run {
        let plan = serde_json::json!({
            "command": job.name,
            "options": job.resolved,
            "format": format,
            "output": settings.out.as_ref().map_or("stdout".to_string(), |p| p.display().to_string()),
        });
        println!("{}", serde_json::to_string_pretty(&plan).expect("plan serializes"));
        return Ok(());
    }
    let text = (job.run)(format)?;
    output::emit(settings.out.as_deref(), &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("latflow: {e}");
            ExitCode::from(e.code())
        }
    }
}
