use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gleason_cli::commands::{self, GreechieAction, Outcome};
use gleason_cli::demo;
use gleason_cli::report::Format;
use gleason_cli::CliError;

/// Frame functions, density operators and Greechie diagrams over the reals.
#[derive(Parser)]
#[command(name = "gleason", version)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Tolerance for positivity and rank decisions.
    #[arg(long, global = true, default_value_t = gleason_core::DEFAULT_TOL)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the frame function of a density matrix.
    DensityToFrame { path: PathBuf },
    /// Recover the density operator of a frame function given as a form or a probe table.
    FrameToDensity { path: PathBuf },
    /// Same as frame-to-density.
    Reconstruct { path: PathBuf },
    /// Sylvester signature and classification of a quadratic form.
    Signature { path: PathBuf },
    /// Checks on Greechie diagrams and their probability assignments.
    Greechie {
        #[arg(value_enum)]
        action: GreechieAction,
        path: PathBuf,
    },
    /// Replay the worked examples against the bundled fixtures.
    DemoPaper {
        /// List the cases without running them.
        #[arg(long)]
        list: bool,
        /// Read fixtures from this directory instead.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Run a single case.
        case: Option<String>,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::DensityToFrame { path } => commands::density_to_frame(&path, cli.tol),
        Command::FrameToDensity { path } => commands::reconstruct(&path, cli.tol, "frame-to-density"),
        Command::Reconstruct { path } => commands::reconstruct(&path, cli.tol, "reconstruct"),
        Command::Signature { path } => commands::signature_cmd(&path, cli.tol),
        Command::Greechie { action, path } => commands::greechie(action, &path),
        Command::DemoPaper { .. } => unreachable!("handled in main"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::DemoPaper { list, fixtures, case } = &cli.command {
        if *list {
            for c in demo::cases() {
                println!("{:<26}{}", c.name, c.summary);
            }
            return ExitCode::SUCCESS;
        }
        let dir = fixtures.clone().unwrap_or_else(demo::default_fixtures);
        return match demo::run(&dir, case.as_deref()) {
            Ok(0) => ExitCode::SUCCESS,
            Ok(_) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            print!("{}", out.report.render(format));
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
