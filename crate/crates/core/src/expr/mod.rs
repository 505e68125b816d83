//! Expression trees for system components.
//!
//! An [`Expr`] is evaluated generically through the [`Value`] trait, so the
//! same tree yields scalar values, natural interval extensions, affine
//! enclosures and forward-mode derivative enclosures.

mod parse;
mod value;

use std::fmt;

use thiserror::Error;

use crate::affine::{AffineForm, SymbolAllocator};
use crate::boxes::IntervalBox;
use crate::interval::{Interval, IntervalError};

pub use parse::{parse, ParseError};
pub use value::{AffineRange, Dual, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
    Abs,
}

impl UnaryOp {
    pub fn name(&self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Exp => "exp",
            UnaryOp::Log => "log",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Abs => "abs",
        }
    }

    pub(crate) fn from_name(name: &str) -> Option<UnaryOp> {
        Some(match name {
            "exp" => UnaryOp::Exp,
            "log" => UnaryOp::Log,
            "sqrt" => UnaryOp::Sqrt,
            "sin" => UnaryOp::Sin,
            "cos" => UnaryOp::Cos,
            "abs" => UnaryOp::Abs,
            _ => return None,
        })
    }
}

/// Names reserved for functions and constants.
pub const RESERVED_NAMES: [&str; 8] = ["exp", "log", "sqrt", "sin", "cos", "abs", "pi", "e"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(usize),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    /// Power with a constant exponent.
    Pow(Box<Expr>, f64),
}

/// How derivative enclosures are obtained for the mean value form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeMode {
    /// Forward-mode differentiation in interval arithmetic.
    #[default]
    Ad,
    /// Central difference of the natural extension with step `1e-4`.
    PaperFd,
}

impl DerivativeMode {
    pub fn name(&self) -> &'static str {
        match self {
            DerivativeMode::Ad => "ad",
            DerivativeMode::PaperFd => "paper_fd",
        }
    }
}

impl std::str::FromStr for DerivativeMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ad" => Ok(DerivativeMode::Ad),
            "paper_fd" => Ok(DerivativeMode::PaperFd),
            _ => Err(format!(
                "unknown derivative mode `{s}` (expected ad or paper_fd)"
            )),
        }
    }
}

/// Step of the interval central difference.
pub const FD_STEP: f64 = 1.0e-4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("{func} is undefined at {value}")]
    Domain { func: &'static str, value: f64 },
    #[error("expected {expected} variables, got {got}")]
    Dimension { expected: usize, got: usize },
}

impl Expr {
    pub fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    pub fn binary(op: BinaryOp, a: Expr, b: Expr) -> Expr {
        Expr::Binary(op, Box::new(a), Box::new(b))
    }

    pub fn unary(op: UnaryOp, a: Expr) -> Expr {
        Expr::Unary(op, Box::new(a))
    }

    /// Largest variable index referenced, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Const(_) => None,
            Expr::Var(i) => Some(*i),
            Expr::Unary(_, a) | Expr::Pow(a, _) => a.max_var(),
            Expr::Binary(_, a, b) => match (a.max_var(), b.max_var()) {
                (Some(x), Some(y)) => Some(x.max(y)),
                (x, y) => x.or(y),
            },
        }
    }

    pub fn uses_var(&self, i: usize) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(j) => *j == i,
            Expr::Unary(_, a) | Expr::Pow(a, _) => a.uses_var(i),
            Expr::Binary(_, a, b) => a.uses_var(i) || b.uses_var(i),
        }
    }

    /// Evaluate over any [`Value`] domain.
    pub fn eval<V: Value>(&self, vars: &[V]) -> Result<V, EvalError> {
        match self {
            Expr::Const(c) => V::constant(*c),
            Expr::Var(i) => vars.get(*i).cloned().ok_or(EvalError::Dimension {
                expected: i + 1,
                got: vars.len(),
            }),
            Expr::Unary(op, a) => a.eval(vars)?.unary(*op),
            Expr::Binary(op, a, b) => {
                let x = a.eval(vars)?;
                let y = b.eval(vars)?;
                match op {
                    BinaryOp::Add => x.add(&y),
                    BinaryOp::Sub => x.sub(&y),
                    BinaryOp::Mul => x.mul(&y),
                    BinaryOp::Div => x.div(&y),
                }
            }
            Expr::Pow(a, p) => a.eval(vars)?.pow(*p),
        }
    }

    pub fn eval_scalar(&self, point: &[f64]) -> Result<f64, EvalError> {
        self.eval(point)
    }

    /// Natural interval extension.
    pub fn eval_interval(&self, b: &IntervalBox) -> Result<Interval, EvalError> {
        self.eval(b.dims())
    }

    /// Affine enclosure: one fresh noise symbol per box coordinate.
    pub fn eval_affine(&self, b: &IntervalBox) -> Result<Interval, EvalError> {
        let mut symbols = SymbolAllocator::new();
        let vars: Vec<AffineRange> = b
            .dims()
            .iter()
            .map(|d| AffineRange::new(AffineForm::from_interval(d, symbols.fresh()), *d))
            .collect();
        Ok(self.eval(&vars)?.range())
    }

    /// Enclosure of `∂e/∂x_wrt` over the box.
    pub fn eval_derivative(
        &self,
        b: &IntervalBox,
        wrt: usize,
        mode: DerivativeMode,
    ) -> Result<Interval, EvalError> {
        if wrt >= b.dim() {
            return Err(EvalError::Dimension {
                expected: wrt + 1,
                got: b.dim(),
            });
        }
        match mode {
            DerivativeMode::Ad => {
                let vars: Vec<Dual> = b
                    .dims()
                    .iter()
                    .enumerate()
                    .map(|(i, d)| {
                        if i == wrt {
                            Dual::variable(*d)
                        } else {
                            Dual::constant_of(*d)
                        }
                    })
                    .collect();
                Ok(self.eval(&vars)?.derivative())
            }
            DerivativeMode::PaperFd => {
                let h = Interval::point(FD_STEP)?;
                let x = b.get(wrt);
                let plus = self.eval_interval(&b.with_dim(wrt, x.add(&h)?))?;
                let minus = self.eval_interval(&b.with_dim(wrt, x.sub(&h)?))?;
                Ok(plus.sub(&minus)?.div(&Interval::point(2.0 * FD_STEP)?)?)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Var(i) => write!(f, "x{i}"),
            Expr::Unary(UnaryOp::Neg, a) => write!(f, "(-{a})"),
            Expr::Unary(op, a) => write!(f, "{}({a})", op.name()),
            Expr::Binary(op, a, b) => {
                let sym = match op {
                    BinaryOp::Add => "+",
                    BinaryOp::Sub => "-",
                    BinaryOp::Mul => "*",
                    BinaryOp::Div => "/",
                };
                write!(f, "({a} {sym} {b})")
            }
            Expr::Pow(a, p) => write!(f, "({a}^{p:?})"),
        }
    }
}
