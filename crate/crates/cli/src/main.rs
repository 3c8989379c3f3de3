use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use ratile_cli::commands::{self, CloudKind, Format, VerifyOptions};
use ratile_cli::problem::Problem;
use ratile_cli::{configure_threads, CliError};

#[derive(Parser)]
#[command(name = "ratile", version, about = "Rational self-affine tiles and their intersective slices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    F,
    G,
    Srs,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a problem and report digit flags, lattices and primitivity as JSON.
    Analyze { path: PathBuf },
    /// Approximate tiles and write CSV or SVG.
    Tile {
        path: PathBuf,
        #[arg(long, value_enum, ignore_case = true)]
        kind: KindArg,
        /// Laurent polynomial in `a` (F, G) or comma-separated integers (srs); repeatable.
        #[arg(long = "translate", allow_hyphen_values = true)]
        translates: Vec<String>,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search a tiling certificate and estimate multiplicity and volume balance.
    Verify {
        path: PathBuf,
        /// Seconds for the certificate search.
        #[arg(long, default_value_t = 60.0)]
        budget: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Depth of the multiplicity estimate.
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Depth of the volume-balance estimate.
        #[arg(long, default_value_t = 40)]
        volume_depth: usize,
    },
    /// Reproduce the figures of a worked example (ex1, ex2, ex3 or all) as SVG.
    Figure {
        example: String,
        #[arg(long, default_value = "figures")]
        out: PathBuf,
        /// Override every figure's default depth.
        #[arg(long)]
        depth: Option<usize>,
    },
}

fn json<T: serde::Serialize>(v: &T) -> Result<Vec<u8>, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Analyze { path } => {
            let report = commands::analyze(&Problem::load(&path)?)?;
            commands::emit(None, &json(&report)?)?;
            Ok(0)
        }
        Command::Tile { path, kind, translates, depth, format, out } => {
            let problem = Problem::load(&path)?;
            let ctx = problem.context()?;
            let kind = match kind {
                KindArg::F => CloudKind::F,
                KindArg::G => CloudKind::G,
                KindArg::Srs => CloudKind::Srs,
            };
            let translates = if translates.is_empty() {
                vec![if kind == CloudKind::Srs { vec!["0"; ctx.spec.degree].join(",") } else { "0".to_string() }]
            } else {
                translates
            };
            let clouds = commands::tile_clouds(&problem, &ctx, kind, &translates, depth)?;
            let format = match format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Svg => Format::Svg,
            };
            let bytes = commands::render_clouds(&clouds, ctx.spec.degree, format, &path.display().to_string())?;
            commands::emit(out.as_ref(), &bytes)?;
            Ok(0)
        }
        Command::Verify { path, budget, samples, seed, depth, volume_depth } => {
            let problem = Problem::load(&path)?;
            if !(budget.is_finite() && budget >= 0.0) {
                return Err(CliError::invalid("budget", "must be a nonnegative number of seconds"));
            }
            let opts = VerifyOptions { budget: Duration::from_secs_f64(budget), samples, seed, depth, volume_depth };
            let (report, code) = commands::verify(&problem, &opts)?;
            commands::emit(None, &json(&report)?)?;
            Ok(code)
        }
        Command::Figure { example, out, depth } => {
            let entries = commands::figures(&example, &out, depth)?;
            commands::emit(None, &json(&entries)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
