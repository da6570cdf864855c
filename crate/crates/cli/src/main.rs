use std::path::PathBuf;
use std::process::ExitCode;

use cjones_cli::{BatchJob, CheckKind, CliError, BUNDLED_TABLE, DEFAULT_N_MAX};
use clap::{Parser, Subcommand};

/// Colored Jones polynomials, degree models and slope checks for knot diagrams.
#[derive(Parser)]
#[command(name = "cjones", version)]
struct Cli {
    /// JSON file used as a colored Jones cache (read if present, then rewritten).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Emit the JSON document instead of the text rendering.
    #[arg(long, global = true)]
    json: bool,
    /// Largest color n for sequence commands.
    #[arg(long, global = true, default_value_t = DEFAULT_N_MAX)]
    max_n: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// J_K(n) for one color.
    Compute {
        /// PD code or bundled knot name
        knot: String,
        #[arg(long)]
        n: u32,
    },
    /// Extreme degrees for n = 1..max-n.
    Degrees { knot: String },
    /// Quasi-polynomial fit of the degrees and the Jones slope data.
    Fit { knot: String },
    /// Adequacy flags, state circle counts and uniform state surfaces.
    Adequacy { knot: String },
    /// Data of one state surface.
    Surface {
        knot: String,
        /// One letter per crossing, e.g. ABBA
        #[arg(long)]
        state: String,
    },
    /// Full report with every check.
    Check { knot: String },
    /// Standard pretzel diagram P(r,s,t) against its closed-form model.
    Pretzel {
        #[arg(allow_hyphen_values = true)]
        r: i64,
        #[arg(allow_hyphen_values = true)]
        s: i64,
        #[arg(allow_hyphen_values = true)]
        t: i64,
    },
    /// Reports for every row of a `name,pd` CSV (`-` for the bundled table).
    Batch {
        csv: String,
        /// Comma-separated subset of eq1,eq2,howie,gordon,match
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
    },
}

fn execute(cli: &Cli) -> Result<serde_json::Value, CliError> {
    let cache = cli.cache.as_deref();
    match &cli.command {
        Command::Compute { knot, n } => cjones_cli::compute(knot, *n, cache),
        Command::Degrees { knot } => cjones_cli::degrees(knot, cli.max_n, cache),
        Command::Fit { knot } => cjones_cli::fit(knot, cli.max_n, cache),
        Command::Adequacy { knot } => cjones_cli::adequacy_report(knot),
        Command::Surface { knot, state } => cjones_cli::surface(knot, state),
        Command::Check { knot } => cjones_cli::check(knot, cli.max_n, cache),
        Command::Pretzel { r, s, t } => cjones_cli::pretzel(*r, *s, *t, cli.max_n, cache),
        Command::Batch { csv, checks } => {
            let text = if csv == "-" {
                BUNDLED_TABLE.to_owned()
            } else {
                std::fs::read_to_string(csv).map_err(|e| CliError::Other(format!("{csv}: {e}")))?
            };
            let mut job = BatchJob::new(cjones_cli::read_csv(&text)?, cli.max_n);
            if let Some(list) = checks {
                job.checks = list
                    .iter()
                    .map(|c| c.parse::<CheckKind>())
                    .collect::<Result<_, _>>()?;
            }
            job.cache_path = cli.cache.clone();
            cjones_cli::run(&job)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(doc) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("documents serialize")
                );
            } else {
                print!("{}", cjones_cli::render(&doc));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("cjones: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
