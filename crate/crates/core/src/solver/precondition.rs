//! Systems of the form `G = M · F`.

use thiserror::Error;

use crate::expr::{BinaryOp, Expr};
use crate::matrix::{Matrix, MatrixError};
use crate::system::{SystemDef, SystemError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PreconditionError {
    #[error("jacobian at the center could not be evaluated: {0}")]
    Jacobian(#[from] SystemError),
    #[error("jacobian at the center is not invertible: {0}")]
    Singular(#[from] MatrixError),
}

/// The base system together with the multiplier currently applied to it.
#[derive(Debug, Clone, PartialEq)]
pub struct PreconditionedSystem {
    base: SystemDef,
    m: Matrix,
    center_used: Option<Vec<f64>>,
    components: Vec<Expr>,
}

fn combine(row: &[f64], funcs: &[Expr]) -> Expr {
    let mut terms = row
        .iter()
        .zip(funcs)
        .filter(|(m, _)| **m != 0.0)
        .map(|(&m, f)| {
            if m == 1.0 {
                f.clone()
            } else {
                Expr::binary(BinaryOp::Mul, Expr::Const(m), f.clone())
            }
        });
    let first = terms.next().unwrap_or(Expr::Const(0.0));
    terms.fold(first, |acc, t| Expr::binary(BinaryOp::Add, acc, t))
}

impl PreconditionedSystem {
    pub fn identity(base: SystemDef) -> Self {
        let m = Matrix::identity(base.dim());
        let components = base.funcs().to_vec();
        PreconditionedSystem {
            base,
            m,
            center_used: None,
            components,
        }
    }

    /// `G = M · F_base` for an explicit multiplier.
    pub fn with_matrix(base: SystemDef, m: Matrix, center_used: Option<Vec<f64>>) -> Self {
        let components = (0..m.n())
            .map(|i| combine(m.row(i), base.funcs()))
            .collect();
        PreconditionedSystem {
            base,
            m,
            center_used,
            components,
        }
    }

    /// Replace the multiplier by `DF_base(c)⁻¹`.
    pub fn precondition(&self, c: &[f64]) -> Result<Self, PreconditionError> {
        let inv = self.base.jacobian_at(c)?.inverse()?;
        Ok(Self::with_matrix(self.base.clone(), inv, Some(c.to_vec())))
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &SystemDef {
        &self.base
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn center_used(&self) -> Option<&[f64]> {
        self.center_used.as_deref()
    }

    pub fn component(&self, i: usize) -> &Expr {
        &self.components[i]
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    /// `G(point)` evaluated through the component expressions.
    pub fn eval(&self, point: &[f64]) -> Result<Vec<f64>, SystemError> {
        self.base.eval(point)?;
        Ok(self
            .components
            .iter()
            .map(|g| g.eval_scalar(point))
            .collect::<Result<_, _>>()?)
    }
}
