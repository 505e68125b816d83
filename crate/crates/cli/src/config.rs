//! Loading and validating run configurations.

use std::path::{Path, PathBuf};

use pmbisect::{
    DerivativeMode, IntervalBox, NormKind, SolveError, SolverConfig, SystemDef, SystemError,
};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Toml(#[from] toml::de::Error),
    #[error("{field}: {reason}")]
    Field { field: String, reason: String },
}

impl ConfigError {
    fn field(field: impl Into<String>, reason: impl ToString) -> Self {
        ConfigError::Field {
            field: field.into(),
            reason: reason.to_string(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    variables: Vec<String>,
    functions: Vec<String>,
    jacobian: Option<Vec<Vec<String>>>,
    #[serde(rename = "box")]
    bounds: Vec<Vec<f64>>,
    delta: Option<f64>,
    subdivisions: Option<usize>,
    norm: Option<String>,
    max_consecutive_failures: Option<usize>,
    max_iterations: Option<usize>,
    derivative_mode: Option<String>,
    trace: Option<PathBuf>,
    boxes: Option<PathBuf>,
}

/// Command line settings that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub delta: Option<f64>,
    pub subdivisions: Option<usize>,
    pub norm: Option<NormKind>,
    pub derivative_mode: Option<DerivativeMode>,
    pub trace: Option<PathBuf>,
    pub boxes: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub system: SystemDef,
    pub k0: IntervalBox,
    pub solver: SolverConfig,
    pub trace: Option<PathBuf>,
    pub boxes: Option<PathBuf>,
}

fn system_error(err: SystemError) -> ConfigError {
    let field = match err {
        SystemError::Parse { field, source } => return ConfigError::field(field, source),
        SystemError::VariableOutOfRange { ref field, .. } => field.clone(),
        SystemError::JacobianShape { .. } => "jacobian".into(),
        SystemError::Empty
        | SystemError::ReservedName(_)
        | SystemError::DuplicateName(_)
        | SystemError::InvalidName(_) => "variables".into(),
        _ => "functions".into(),
    };
    ConfigError::field(field, err)
}

impl RunConfig {
    pub fn load(path: &Path, overrides: &Overrides) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text, overrides)
    }

    pub fn from_toml(text: &str, overrides: &Overrides) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text)?;

        let n = raw.variables.len();
        if raw.bounds.len() != n {
            return Err(ConfigError::field(
                "box",
                format!("{} rows for {n} variables", raw.bounds.len()),
            ));
        }
        let mut bounds = Vec::with_capacity(n);
        for (i, row) in raw.bounds.iter().enumerate() {
            match *row.as_slice() {
                [lo, hi] if lo.is_finite() && hi.is_finite() && lo <= hi => bounds.push((lo, hi)),
                [lo, hi] => {
                    return Err(ConfigError::field(
                        format!("box[{i}]"),
                        format!("[{lo}, {hi}] is not a finite interval with lo <= hi"),
                    ))
                }
                _ => return Err(ConfigError::field(format!("box[{i}]"), "expected [lo, hi]")),
            }
        }
        let k0 = IntervalBox::from_bounds(&bounds).map_err(|e| ConfigError::field("box", e))?;

        let system = SystemDef::parse(&raw.variables, &raw.functions, raw.jacobian.as_deref())
            .map_err(system_error)?;

        let defaults = SolverConfig::default();
        let norm = match (overrides.norm, &raw.norm) {
            (Some(n), _) => n,
            (None, Some(s)) => s.parse().map_err(|e| ConfigError::field("norm", e))?,
            (None, None) => defaults.norm,
        };
        let derivative_mode = match (overrides.derivative_mode, &raw.derivative_mode) {
            (Some(m), _) => m,
            (None, Some(s)) => s
                .parse()
                .map_err(|e| ConfigError::field("derivative_mode", e))?,
            (None, None) => defaults.derivative_mode,
        };
        let solver = SolverConfig {
            delta: overrides.delta.or(raw.delta).unwrap_or(defaults.delta),
            subdivisions: overrides
                .subdivisions
                .or(raw.subdivisions)
                .unwrap_or(defaults.subdivisions),
            norm,
            max_consecutive_failures: raw
                .max_consecutive_failures
                .unwrap_or(defaults.max_consecutive_failures),
            max_iterations: raw.max_iterations.unwrap_or(defaults.max_iterations),
            derivative_mode,
        };
        solver.validate().map_err(|e| match e {
            SolveError::Config { field, reason } => ConfigError::field(field, reason),
            other => ConfigError::field("solver", other),
        })?;

        Ok(RunConfig {
            system,
            k0,
            solver,
            trace: overrides.trace.clone().or(raw.trace),
            boxes: overrides.boxes.clone().or(raw.boxes),
        })
    }
}
