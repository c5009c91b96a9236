use std::path::PathBuf;
use std::process::ExitCode;

use ab_holonomy::cli::{run, Command, Options};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "abh", version, about = "Holonomy checks and Aharonov-Bohm interferometry runs")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Holonomy phase of a potential along a closed contour.
    Holonomy(Flags),
    /// Contour holonomy against the flux through a bounded surface.
    Stokes(Flags),
    /// Holonomy before and after a gauge transformation.
    GaugeCheck(Flags),
    /// One magnetic double-slit or electric two-channel run.
    Simulate(Flags),
    /// Fringe shift against eΦ over a list of fluxes.
    FluxScan(Flags),
}

#[derive(Args)]
struct Flags {
    /// TOML run file.
    #[arg(long)]
    config: PathBuf,
    /// Directory for data files, the report and the manifest.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Acceptance tolerance of the command.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let (command, flags) = match Cli::parse().verb {
        Verb::Holonomy(f) => (Command::Holonomy, f),
        Verb::Stokes(f) => (Command::Stokes, f),
        Verb::GaugeCheck(f) => (Command::GaugeCheck, f),
        Verb::Simulate(f) => (Command::Simulate, f),
        Verb::FluxScan(f) => (Command::FluxScan, f),
    };
    let outcome = run(
        command,
        &Options {
            config: flags.config,
            out: flags.out,
            tolerance: flags.tolerance,
            jobs: flags.jobs,
        },
    );
    println!("{}", serde_json::to_string_pretty(&outcome.report).expect("report serializes"));
    ExitCode::from(outcome.exit_code as u8)
}
