//! Bisection on boxes certified by the Poincaré–Miranda sign condition.
//!
//! Each iteration evaluates `F` at the center of the current box, stops when
//! the residual is below `delta`, and otherwise moves to the first of the
//! `2ⁿ` half-width subcubes on which the sign condition can be certified.
//! When none qualifies the system is preconditioned by the inverse Jacobian
//! at the center and the scan is repeated.

mod precondition;
mod sign;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::boxes::IntervalBox;
use crate::expr::DerivativeMode;
use crate::interval::Interval;
use crate::system::{SystemDef, SystemError};

pub use precondition::{PreconditionError, PreconditionedSystem};
pub use sign::{pm_check, posneg, Face, FaceSigns, PmCheck, SignResult};

/// Vector norm used for residuals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormKind {
    Inf,
    One,
    #[default]
    Two,
}

impl NormKind {
    pub fn apply(&self, v: &[f64]) -> f64 {
        match self {
            NormKind::Inf => v.iter().fold(0.0, |m, x| m.max(x.abs())),
            NormKind::One => v.iter().map(|x| x.abs()).sum(),
            NormKind::Two => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NormKind::Inf => "inf",
            NormKind::One => "one",
            NormKind::Two => "two",
        }
    }
}

impl FromStr for NormKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" => Ok(NormKind::Inf),
            "one" => Ok(NormKind::One),
            "two" => Ok(NormKind::Two),
            _ => Err(format!("unknown norm `{s}` (expected inf, one or two)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub delta: f64,
    /// Cells per free face coordinate in the refined enclosures.
    pub subdivisions: usize,
    pub norm: NormKind,
    pub max_consecutive_failures: usize,
    pub max_iterations: usize,
    pub derivative_mode: DerivativeMode,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            delta: 1.0e-15,
            subdivisions: 3,
            norm: NormKind::Two,
            max_consecutive_failures: 3,
            max_iterations: 500,
            derivative_mode: DerivativeMode::Ad,
        }
    }
}

impl SolverConfig {
    pub fn with_delta(delta: f64) -> Self {
        SolverConfig {
            delta,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        let bad =
            |field: &'static str, reason: &'static str| Err(SolveError::Config { field, reason });
        if !(self.delta.is_finite() && self.delta > 0.0) {
            return bad("delta", "must be a positive finite number");
        }
        if self.subdivisions == 0 {
            return bad("subdivisions", "must be at least 1");
        }
        if self.max_consecutive_failures == 0 {
            return bad("max_consecutive_failures", "must be at least 1");
        }
        if self.max_iterations == 0 {
            return bad("max_iterations", "must be at least 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Converged,
    BadInitialBox,
    Stalled,
    IterationCap,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::BadInitialBox => "bad_initial_box",
            Status::Stalled => "stalled",
            Status::IterationCap => "iteration_cap",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("invalid solver setting `{field}`: {reason}")]
    Config {
        field: &'static str,
        reason: &'static str,
    },
    #[error("box has {got} coordinates but the system has {expected} variables")]
    Dimension { expected: usize, got: usize },
    #[error("system could not be evaluated at the center {center:?}: {source}")]
    Center {
        center: Vec<f64>,
        #[source]
        source: SystemError,
    },
}

/// One scan over the subcubes of the current box.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanPass {
    /// True when this pass runs right after a preconditioning.
    pub after_preconditioning: bool,
    /// Sign grids of the subcubes examined, in scan order; the scan stops
    /// at the first subcube that passes.
    pub subcubes: Vec<PmCheck>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    /// One-based iteration index; `center` is `c_k`.
    pub k: usize,
    pub bbox: IntervalBox,
    pub center: Vec<f64>,
    pub residual: f64,
    /// Index in [`refine_2n`] order of the subcube accepted, if any.
    pub chosen_subcube: Option<usize>,
    /// Number of preconditionings performed during this iteration.
    pub preconditionings: usize,
    pub passes: Vec<ScanPass>,
}

impl IterationRecord {
    pub fn preconditioned(&self) -> bool {
        self.preconditionings > 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreconditionEvent {
    pub k: usize,
    /// The system active from this event on.
    pub system: PreconditionedSystem,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolveTrace {
    pub records: Vec<IterationRecord>,
    pub events: Vec<PreconditionEvent>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub status: Status,
    /// Last center evaluated (center of `K0` for a bad initial box).
    pub root: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    pub preconditionings: usize,
    pub final_box: IntervalBox,
    pub initial_check: PmCheck,
    pub trace: SolveTrace,
}

/// The `2ⁿ` subcubes obtained by halving every coordinate.
///
/// Subcube `b` takes the upper half of coordinate `j` iff bit `j` of `b` is
/// set, so index 0 is the all-low corner.
pub fn refine_2n(b: &IntervalBox) -> Vec<IntervalBox> {
    let halves: Vec<(Interval, Interval)> = b
        .dims()
        .iter()
        .map(|d| {
            let m = d.mid();
            let lo = Interval::new(d.lo(), m).expect("midpoint inside");
            let hi = Interval::new(m, d.hi()).expect("midpoint inside");
            (lo, hi)
        })
        .collect();
    (0..1usize << b.dim())
        .map(|idx| {
            let dims = halves
                .iter()
                .enumerate()
                .map(|(j, (lo, hi))| if idx >> j & 1 == 0 { *lo } else { *hi })
                .collect();
            IntervalBox::new(dims).expect("non-empty")
        })
        .collect()
}

/// `Σ_j w_j(K0) / 2ᵏ`.
pub fn error_bound(k0: &IntervalBox, k: u32) -> f64 {
    k0.total_width() / 2f64.powi(k as i32)
}

/// `⌈log₂(Σ_j w_j(K0) / δ)⌉`, at least 0.
pub fn required_iterations(k0: &IntervalBox, delta: f64) -> u32 {
    let r = (k0.total_width() / delta).log2().ceil();
    if r > 0.0 {
        r as u32
    } else {
        0
    }
}

pub fn solve(
    sys: &SystemDef,
    k0: &IntervalBox,
    cfg: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    cfg.validate()?;
    if k0.dim() != sys.dim() {
        return Err(SolveError::Dimension {
            expected: sys.dim(),
            got: k0.dim(),
        });
    }
    let n = cfg.subdivisions;
    let mode = cfg.derivative_mode;
    let residual_at = |c: &[f64]| {
        sys.eval(c)
            .map(|v| cfg.norm.apply(&v))
            .map_err(|source| SolveError::Center {
                center: c.to_vec(),
                source,
            })
    };

    let mut g = PreconditionedSystem::identity(sys.clone());
    let initial_check = pm_check(&g, k0, n, mode);
    let mut trace = SolveTrace::default();
    if !initial_check.holds() {
        let root = k0.center();
        let residual = residual_at(&root).unwrap_or(f64::INFINITY);
        return Ok(SolveResult {
            status: Status::BadInitialBox,
            root,
            residual,
            iterations: 0,
            preconditionings: 0,
            final_box: k0.clone(),
            initial_check,
            trace,
        });
    }

    let mut current = k0.clone();
    let mut failures = 0;
    let mut k = 0;
    let status = loop {
        k += 1;
        let center = current.center();
        let residual = residual_at(&center)?;
        let mut record = IterationRecord {
            k,
            bbox: current.clone(),
            center: center.clone(),
            residual,
            chosen_subcube: None,
            preconditionings: 0,
            passes: Vec::new(),
        };
        if residual <= cfg.delta {
            trace.records.push(record);
            break Status::Converged;
        }
        if k >= cfg.max_iterations {
            trace.records.push(record);
            break Status::IterationCap;
        }

        let subcubes = refine_2n(&current);
        let mut after_preconditioning = false;
        let outcome = loop {
            let mut pass = ScanPass {
                after_preconditioning,
                subcubes: Vec::new(),
            };
            let mut accepted = None;
            for (idx, q) in subcubes.iter().enumerate() {
                let check = pm_check(&g, q, n, mode);
                let holds = check.holds();
                pass.subcubes.push(check);
                if holds {
                    accepted = Some(idx);
                    break;
                }
            }
            record.passes.push(pass);
            if let Some(idx) = accepted {
                failures = 0;
                break Some(idx);
            }
            failures += 1;
            if failures >= cfg.max_consecutive_failures {
                break None;
            }
            match g.precondition(&center) {
                Ok(next) => {
                    log::debug!("iteration {k}: preconditioned at {center:?}");
                    g = next;
                    record.preconditionings += 1;
                    trace.events.push(PreconditionEvent {
                        k,
                        system: g.clone(),
                    });
                    after_preconditioning = true;
                }
                Err(err) => {
                    log::info!("iteration {k}: cannot precondition: {err}");
                    break None;
                }
            }
        };
        record.chosen_subcube = outcome;
        trace.records.push(record);
        match outcome {
            Some(idx) => current = subcubes[idx].clone(),
            None => break Status::Stalled,
        }
    };

    let last = trace.records.last().expect("at least one iteration");
    Ok(SolveResult {
        status,
        root: last.center.clone(),
        residual: last.residual,
        iterations: last.k,
        preconditionings: trace.events.len(),
        final_box: last.bbox.clone(),
        initial_check,
        trace,
    })
}
