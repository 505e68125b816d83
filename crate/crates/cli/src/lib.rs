//! Implementation of the `pmbisect` command line tool.

pub mod config;
pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use pmbisect::{pm_check, refinement, solve, ExtensionKind, PreconditionedSystem, Status};

pub use config::{ConfigError, Overrides, RunConfig};
use output::{fmt_sig, HUMAN_DIGITS};

pub const EXIT_CONFIG: u8 = 1;

pub fn exit_code(status: Status) -> u8 {
    match status {
        Status::Converged => 0,
        Status::BadInitialBox => 2,
        Status::Stalled => 3,
        Status::IterationCap => 4,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{field}: cannot write {path}: {source}")]
    Write {
        field: &'static str,
        path: String,
        source: io::Error,
    },
    #[error("{0}")]
    Other(String),
}

fn write_file(
    field: &'static str,
    path: &Path,
    body: impl FnOnce(BufWriter<File>) -> io::Result<()>,
) -> Result<(), CliError> {
    let err = |source| CliError::Write {
        field,
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(err)?;
    body(BufWriter::new(file)).map_err(err)
}

fn human(x: f64) -> String {
    fmt_sig(x, HUMAN_DIGITS)
}

/// Solve the configured system and report on `out`; returns the exit code.
pub fn run_solve(cfg: &RunConfig, quiet: bool, out: &mut impl Write) -> Result<u8, CliError> {
    let result =
        solve(&cfg.system, &cfg.k0, &cfg.solver).map_err(|e| CliError::Other(e.to_string()))?;
    let names = cfg.system.names();

    if let Some(path) = &cfg.trace {
        write_file("trace", path, |w| output::write_trace(w, names, &result))?;
    }
    if let Some(path) = &cfg.boxes {
        write_file("boxes", path, |w| output::write_boxes(w, &result))?;
    }

    if !quiet {
        let io = |e| CliError::Other(format!("cannot write output: {e}"));
        writeln!(out, "status: {}", result.status).map_err(io)?;
        writeln!(out, "root:").map_err(io)?;
        for (name, x) in names.iter().zip(&result.root) {
            writeln!(out, "  {name} = {}", human(*x)).map_err(io)?;
        }
        writeln!(out, "residual: {}", human(result.residual)).map_err(io)?;
        writeln!(out, "iterations: {}", result.iterations).map_err(io)?;
        writeln!(out, "preconditionings: {}", result.preconditionings).map_err(io)?;
        if result.status == Status::BadInitialBox {
            writeln!(out, "initial signs: {}", result.initial_check).map_err(io)?;
        }
    }
    Ok(exit_code(result.status))
}

/// Print the face sign grid of `K0`; exit code 0 when the sign condition holds.
pub fn run_check_box(cfg: &RunConfig, out: &mut impl Write) -> io::Result<u8> {
    let sys = PreconditionedSystem::identity(cfg.system.clone());
    let check = pm_check(
        &sys,
        &cfg.k0,
        cfg.solver.subdivisions,
        cfg.solver.derivative_mode,
    );
    let names = cfg.system.names();
    writeln!(out, "component  faces  low  high  opposite")?;
    for (i, s) in check.signs.iter().enumerate() {
        writeln!(
            out,
            "{:<9}  {:<5}  {:<3}  {:<4}  {}",
            format!("f{}", i + 1),
            names[i],
            s.low.to_string(),
            s.high.to_string(),
            if s.opposite() { "yes" } else { "no" }
        )?;
    }
    let holds = check.holds();
    writeln!(
        out,
        "sign condition {}",
        if holds { "holds" } else { "fails" }
    )?;
    Ok(if holds { 0 } else { 2 })
}

/// Print the chosen enclosure of component `component` (one-based) over `K0`.
pub fn run_eval_box(
    cfg: &RunConfig,
    component: usize,
    kind: ExtensionKind,
    n: usize,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let dim = cfg.system.dim();
    if component == 0 || component > dim {
        return Err(CliError::Other(format!(
            "component: expected 1..={dim}, got {component}"
        )));
    }
    if n == 0 {
        return Err(CliError::Other("N: must be at least 1".into()));
    }
    let e = cfg.system.func(component - 1);
    let y = refinement(kind, e, &cfg.k0, n, cfg.solver.derivative_mode)
        .map_err(|err| CliError::Other(format!("f{component}: {err}")))?;
    writeln!(out, "[{}, {}]", human(y.lo()), human(y.hi()))
        .map_err(|e| CliError::Other(format!("cannot write output: {e}")))
}

pub fn load(path: &Path, overrides: &Overrides) -> Result<RunConfig, CliError> {
    Ok(RunConfig::load(path, overrides)?)
}
