use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use theta_forms::harness::{
    cmd_show, cmd_verify_background, cmd_verify_identities, cmd_verify_theta_hex,
    cmd_verify_theta_z, exit_code, render, OutputFormat, SweepConfig, VerificationReport,
    EXAMPLE_IDS,
};
use theta_forms::parallel::Execution;
use theta_forms::{Error, Result};

#[derive(Parser)]
#[command(name = "theta-forms", version, about = "Verify congruences and zero sets of theta-form polynomials over prime ranges")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification sweep over a prime range.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        opts: SweepArgs,
    },
    /// Print a worked example.
    Show {
        /// One of: k52, p107, w0-4-mod103.
        id: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    ThetaZ,
    ThetaHex,
    Background,
    Identities,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 5)]
    p_min: u64,
    #[arg(long, default_value_t = 199)]
    p_max: u64,
    /// Order of the q-series identities.
    #[arg(long, default_value_t = 40)]
    order: usize,
    /// Worker threads (default: THETA_FORMS_JOBS, else all cores).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Zero all timings so reruns are byte-identical.
    #[arg(long)]
    canonical: bool,
    /// Permit p-max above 1000.
    #[arg(long)]
    allow_large: bool,
    /// Process primes one at a time.
    #[arg(long)]
    sequential: bool,
}

impl SweepArgs {
    fn config(self) -> SweepConfig {
        SweepConfig {
            p_min: self.p_min,
            p_max: self.p_max,
            order: self.order,
            jobs: self.jobs,
            execution: if self.sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            },
            format: self.format,
            out: self.out,
            canonical: self.canonical,
            allow_large: self.allow_large,
            ..SweepConfig::default()
        }
    }
}

fn run_verify(suite: Suite, cfg: &SweepConfig) -> Result<Vec<VerificationReport>> {
    match suite {
        Suite::ThetaZ => cmd_verify_theta_z(cfg),
        Suite::ThetaHex => cmd_verify_theta_hex(cfg),
        Suite::Background => cmd_verify_background(cfg),
        Suite::Identities => cmd_verify_identities(cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Show { id } => match cmd_show(&id) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(e @ Error::UnknownExample(_)) => {
                eprintln!("error: {e}; known ids: {}", EXAMPLE_IDS.join(", "));
                ExitCode::from(2)
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Command::Verify { suite, opts } => {
            let cfg = opts.config();
            let reports = match run_verify(suite, &cfg) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let text = render(&reports, cfg.format);
            match &cfg.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(exit_code(&reports) as u8)
        }
    }
}
