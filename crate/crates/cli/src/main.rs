use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use dtto_cli::commands::{cmd_build, cmd_kernel, cmd_spectrum, Outcome};
use dtto_cli::config::{ProblemConfig, ResolvedConfig, WINDOW_ENV};
use dtto_cli::error::{CliError, CliResult};
use dtto_cli::report::{write_json, Timings};
use dtto_cli::verify::cmd_verify;

/// Dual truncated Toeplitz operators: matrices, kernels, spectra and
/// numerical checks of the structural results.
#[derive(Parser)]
#[command(name = "dtto", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the matrix of the configured operator (JSON and CSV).
    Build(Args),
    /// Numerical kernel of the configured dual operator.
    Kernel(Args),
    /// Scan a grid of lambda values for point spectrum.
    Spectrum(Args),
    /// Run the theorem-verification suite.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Run a single tag.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(clap::Args)]
struct Args {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

fn resolve(path: Option<&Path>) -> CliResult<ResolvedConfig> {
    let cfg = match path {
        Some(p) => ProblemConfig::load(p)?,
        None => ProblemConfig::default(),
    };
    cfg.resolve(std::env::var(WINDOW_ENV).ok().as_deref())
}

fn run(cli: Cli) -> (&'static str, PathBuf, CliResult<Outcome>, Timings) {
    let start = Instant::now();
    let mut sections = Default::default();
    let (name, out, result) = match cli.command {
        Command::Build(a) => ("build", a.out.clone(), resolve(Some(&a.config)).and_then(|c| cmd_build(c, &a.out))),
        Command::Kernel(a) => ("kernel", a.out.clone(), resolve(Some(&a.config)).and_then(|c| cmd_kernel(c, &a.out))),
        Command::Spectrum(a) => (
            "spectrum",
            a.out.clone(),
            resolve(Some(&a.config)).and_then(|c| cmd_spectrum(c, &a.out)),
        ),
        Command::Verify { config, out, only } => {
            let r = resolve(config.as_deref()).and_then(|c| cmd_verify(c, &out, only.as_deref(), &mut sections));
            let r = match r {
                Ok((outcome, verdict)) => {
                    println!("{}", outcome.stdout);
                    verdict.map(|()| Outcome { stdout: String::new() })
                }
                Err(e) => Err(e),
            };
            ("verify", out, r)
        }
    };
    let mut timings = Timings::new(name, start.elapsed());
    timings.sections = sections;
    (name, out, result, timings)
}

fn main() -> ExitCode {
    let (_, out, result, timings) = run(Cli::parse());
    let written = match &result {
        Err(CliError::Config(_)) => Ok(()),
        _ => write_json(&out, "timings.json", &timings),
    };
    match result.and_then(|o| written.map(|()| o)) {
        Ok(o) => {
            if !o.stdout.is_empty() {
                println!("{}", o.stdout);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("dtto: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
