use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ghz_cloning::report::{self, Command, RunConfig};
use ghz_cloning::verify::Verifier;

#[derive(Parser)]
#[command(
    version,
    about = "Entanglement of three-qubit states under quantum cloning"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sweep cos(alpha) over [0, 1] and write input/local/non-local measures as CSV.
    Sweep {
        #[arg(long, default_value_t = report::DEFAULT_POINTS)]
        points: usize,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Iterate non-local cloning and print the E3/E2 decay table.
    Iterate {
        #[arg(long, default_value_t = report::DEFAULT_ALPHA, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = report::DEFAULT_STEPS)]
        steps: usize,
        /// Full-precision CSV destination; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run every reproduction check; exit status 1 if any fails.
    Verify {
        #[arg(long, default_value_t = report::DEFAULT_SEED)]
        seed: u64,
    },
}

fn config(cmd: Cmd) -> RunConfig {
    match cmd {
        Cmd::Sweep { points, output } => RunConfig {
            points,
            output_path: output,
            ..RunConfig::new(Command::Sweep)
        },
        Cmd::Iterate {
            alpha,
            steps,
            output,
        } => RunConfig {
            alpha,
            steps,
            output_path: output,
            ..RunConfig::new(Command::Iterate)
        },
        Cmd::Verify { seed } => RunConfig {
            seed,
            ..RunConfig::new(Command::Verify)
        },
    }
}

fn run(cfg: &RunConfig) -> ghz_cloning::Result<bool> {
    match cfg.command {
        Command::Sweep => report::run_sweep(cfg).map(|_| true),
        Command::Iterate => report::run_iterate(cfg).map(|_| true),
        Command::Verify => {
            let checks = Verifier::new(cfg.seed).run()?;
            for check in &checks {
                print!("{check}");
            }
            let failed = checks.iter().filter(|c| !c.passed()).count();
            println!(
                "{} of {} criteria passed",
                checks.len() - failed,
                checks.len()
            );
            Ok(failed == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = config(cli.command);
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
