use buildings::harness::{self, Options};
use buildings::instance::InstanceSpec;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exhaustive checks on truncated buildings: axioms, transversal buildings
/// of boundary directions, and geodesic ray bundles.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Word problem, building axioms, gate property, retraction.
    Check(Common),
    /// Class counts, transversal graph and sector checks.
    Transversal {
        #[command(flatten)]
        common: Common,
        /// Only this direction.
        #[arg(long)]
        direction: Option<String>,
    },
    /// Bundle decomposition, apartment checks and symmetric differences.
    Bundles {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        direction: Option<String>,
    },
    /// Moussong's hyperbolicity test for the Coxeter system.
    Hyperbolic(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    radius: Option<usize>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    horizon: Option<usize>,
    /// Directory for CSV output.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Report failures as observations.
    #[arg(long)]
    observe: bool,
}

impl Common {
    fn options(&self) -> Options {
        Options {
            radius: self.radius,
            window: self.window,
            horizon: self.horizon,
            csv: self.csv.clone(),
            observe: self.observe,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Check(c) | Command::Hyperbolic(c) => c,
        Command::Transversal { common, .. } | Command::Bundles { common, .. } => common,
    };
    let run = InstanceSpec::read(&common.instance).and_then(|spec| {
        let opts = common.options();
        match &cli.command {
            Command::Check(_) => harness::cmd_check(&spec, &opts),
            Command::Transversal { direction, .. } => harness::cmd_transversal(&spec, direction.as_deref(), &opts),
            Command::Bundles { direction, .. } => harness::cmd_bundles(&spec, direction.as_deref(), &opts),
            Command::Hyperbolic(_) => harness::cmd_hyperbolic(&spec),
        }
    });
    match run {
        Ok(report) => {
            print!("{report}");
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(harness::error_exit_code(&e) as u8)
        }
    }
}
