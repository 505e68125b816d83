//! Verified bisection for square nonlinear systems.
//!
//! A box is kept only while every component of the (possibly
//! preconditioned) system has certified opposite signs on the matching pair
//! of opposite faces, which by the Poincaré–Miranda theorem guarantees a root
//! inside. Signs are certified with interval, mean value and affine
//! enclosures computed with outward rounding.
//!
//! ```
//! use pmbisect::{problems, solve, SolverConfig, Status};
//!
//! let p = problems::EXAMPLE1;
//! let r = solve(&p.system(), &p.initial_box(), &SolverConfig::with_delta(1e-2)).unwrap();
//! assert_eq!(r.status, Status::Converged);
//! assert_eq!(r.root, vec![0.0078125, 0.9921875]);
//! ```

pub mod affine;
pub mod boxes;
pub mod expr;
pub mod extension;
pub mod interval;
pub mod matrix;
pub mod problems;
mod round;
pub mod solver;
pub mod system;

pub use affine::{AffineForm, SymbolAllocator, SymbolId};
pub use boxes::{IntervalBox, Side};
pub use expr::{parse, DerivativeMode, EvalError, Expr, ParseError};
pub use extension::{
    affine_refinement, mean_value, mean_value_refinement, natural_refinement, refinement,
    ExtensionKind,
};
pub use interval::{Interval, IntervalError};
pub use matrix::{Matrix, MatrixError};
pub use solver::{
    error_bound, pm_check, posneg, refine_2n, required_iterations, solve, IterationRecord,
    NormKind, PmCheck, PreconditionedSystem, SignResult, SolveError, SolveResult, SolveTrace,
    SolverConfig, Status,
};
pub use system::{SystemDef, SystemError};
