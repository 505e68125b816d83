use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pmbisect::{DerivativeMode, ExtensionKind, NormKind};
use pmbisect_cli::{run_check_box, run_eval_box, run_solve, CliError, Overrides, EXIT_CONFIG};

#[derive(Parser)]
#[command(
    name = "pmbisect",
    version,
    about = "Verified bisection for nonlinear systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the bisection solver.
    Solve {
        config: PathBuf,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        subdivisions: Option<usize>,
        #[arg(long, value_parser = parse_norm)]
        norm: Option<NormKind>,
        /// CSV file receiving one row per iteration.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// JSON lines file receiving one box per iteration.
        #[arg(long)]
        boxes: Option<PathBuf>,
        #[arg(long, value_parser = parse_mode)]
        derivative_mode: Option<DerivativeMode>,
        /// Print nothing; report through the exit code only.
        #[arg(long)]
        quiet: bool,
    },
    /// Check the sign condition on the configured box.
    CheckBox { config: PathBuf },
    /// Print an enclosure of one component over the configured box.
    EvalBox {
        config: PathBuf,
        /// One-based component index.
        #[arg(long)]
        component: usize,
        #[arg(long, value_enum)]
        extension: Extension,
        /// Cells per coordinate.
        #[arg(short = 'N', default_value_t = 1)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Extension {
    Natural,
    Mean,
    Affine,
}

impl From<Extension> for ExtensionKind {
    fn from(e: Extension) -> Self {
        match e {
            Extension::Natural => ExtensionKind::Natural,
            Extension::Mean => ExtensionKind::MeanValue,
            Extension::Affine => ExtensionKind::Affine,
        }
    }
}

fn parse_norm(s: &str) -> Result<NormKind, String> {
    s.parse()
}

fn parse_mode(s: &str) -> Result<DerivativeMode, String> {
    s.parse()
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Solve {
            config,
            delta,
            subdivisions,
            norm,
            trace,
            boxes,
            derivative_mode,
            quiet,
        } => {
            let overrides = Overrides {
                delta,
                subdivisions,
                norm,
                derivative_mode,
                trace,
                boxes,
            };
            let cfg = pmbisect_cli::load(&config, &overrides)?;
            run_solve(&cfg, quiet, &mut stdout)
        }
        Command::CheckBox { config } => {
            let cfg = pmbisect_cli::load(&config, &Overrides::default())?;
            run_check_box(&cfg, &mut stdout)
                .map_err(|e| CliError::Other(format!("cannot write output: {e}")))
        }
        Command::EvalBox {
            config,
            component,
            extension,
            n,
        } => {
            let cfg = pmbisect_cli::load(&config, &Overrides::default())?;
            run_eval_box(&cfg, component, extension.into(), n, &mut stdout)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    let quiet = matches!(cli.command, Command::Solve { quiet: true, .. });
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(if quiet {
        "off"
    } else {
        "warn"
    }))
    .init();

    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
