use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use enb_cli::run::{self, OutputFormat, RunConfig, SweepConfig};
use enb_cli::CliError;
use enb_core::enb::SearchBudget;

/// Elliptic normal bases: construction, multiplication, complexity bounds.
#[derive(Parser)]
#[command(name = "enb", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Base field size (a prime power)
    #[arg(long)]
    q: u64,
    /// Extension degree
    #[arg(long)]
    n: u64,
    /// Path to a JSON overrides file (a parameter document or a subset)
    #[arg(long)]
    overrides: Option<PathBuf>,
    /// Output format: json or table
    #[arg(long, default_value = "json")]
    format: String,
    /// Curve search budget
    #[arg(long, default_value_t = 1_000_000)]
    budget_curves: u64,
    /// Generator-point search budget per curve
    #[arg(long, default_value_t = 10_000)]
    budget_points: u64,
    /// Seed for randomized inputs
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write output here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the full parameter bundle
    Params(CommonOpts),
    /// Special vectors and the complexity bounds
    Bounds(CommonOpts),
    /// Full report: rows, weights and the exact complexity
    Exact(CommonOpts),
    /// Multiply two coordinate vectors through the tensor (random if omitted)
    Multiply {
        #[command(flatten)]
        common: CommonOpts,
        /// Left factor as a JSON array of coefficients
        #[arg(long)]
        x: Option<String>,
        /// Right factor as a JSON array of coefficients
        #[arg(long)]
        y: Option<String>,
    },
    /// CSV of every feasible parameter set over the given fields
    Sweep {
        /// Base field sizes, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        /// Cap on the extension degree (defaults to the largest group order)
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 1_000_000)]
        budget_curves: u64,
        #[arg(long, default_value_t = 10_000)]
        budget_points: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn to_run_config(opts: &CommonOpts) -> Result<RunConfig, CliError> {
    Ok(RunConfig {
        q: opts.q,
        n: opts.n,
        overrides_path: opts.overrides.as_ref().map(|p| p.display().to_string()),
        format: opts.format.parse::<OutputFormat>()?,
        budget: SearchBudget { curves: opts.budget_curves, points: opts.budget_points },
        seed: opts.seed,
    })
}

fn execute(cli: Cli) -> Result<(String, Option<PathBuf>), CliError> {
    match cli.command {
        Command::Params(opts) => {
            let out = opts.out.clone();
            Ok((run::cmd_params(&to_run_config(&opts)?)?, out))
        }
        Command::Bounds(opts) => {
            let out = opts.out.clone();
            Ok((run::cmd_bounds(&to_run_config(&opts)?)?, out))
        }
        Command::Exact(opts) => {
            let out = opts.out.clone();
            Ok((run::cmd_exact(&to_run_config(&opts)?)?, out))
        }
        Command::Multiply { common, x, y } => {
            let out = common.out.clone();
            let config = to_run_config(&common)?;
            Ok((run::cmd_multiply(&config, x.as_deref(), y.as_deref())?, out))
        }
        Command::Sweep { q, n, budget_curves, budget_points, seed: _, out } => {
            let config = SweepConfig {
                qs: q,
                n_max: n,
                budget: SearchBudget { curves: budget_curves, points: budget_points },
            };
            Ok((run::cmd_sweep(&config)?, out))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are not usage errors
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match execute(cli) {
        Ok((output, None)) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Ok((output, Some(path))) => match std::fs::File::create(&path)
            .and_then(|mut f| f.write_all(output.as_bytes()))
        {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("cannot write {}: {e}", path.display());
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(u8::try_from(e.code).unwrap_or(1))
        }
    }
}
