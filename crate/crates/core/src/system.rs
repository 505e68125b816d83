//! Square nonlinear systems `F = (f_1, …, f_n)` over named variables.

use thiserror::Error;

use crate::expr::{parse, EvalError, Expr, ParseError, RESERVED_NAMES};
use crate::matrix::{Matrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SystemError {
    #[error("{field}: {source}")]
    Parse {
        field: String,
        #[source]
        source: ParseError,
    },
    #[error("system must have at least one variable")]
    Empty,
    #[error("{functions} functions for {variables} variables")]
    NotSquare { variables: usize, functions: usize },
    #[error("jacobian must be {n}x{n}")]
    JacobianShape { n: usize },
    #[error("variable name `{0}` is reserved")]
    ReservedName(String),
    #[error("variable name `{0}` is declared twice")]
    DuplicateName(String),
    #[error("`{0}` is not a valid variable name")]
    InvalidName(String),
    #[error("{field} references variable index {index} of {n}")]
    VariableOutOfRange {
        field: String,
        index: usize,
        n: usize,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemDef {
    names: Vec<String>,
    funcs: Vec<Expr>,
    jac: Option<Vec<Vec<Expr>>>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_names(names: &[String]) -> Result<(), SystemError> {
    if names.is_empty() {
        return Err(SystemError::Empty);
    }
    for (i, name) in names.iter().enumerate() {
        if !valid_name(name) {
            return Err(SystemError::InvalidName(name.clone()));
        }
        if RESERVED_NAMES.contains(&name.as_str()) {
            return Err(SystemError::ReservedName(name.clone()));
        }
        if names[..i].contains(name) {
            return Err(SystemError::DuplicateName(name.clone()));
        }
    }
    Ok(())
}

impl SystemDef {
    pub fn new(
        names: Vec<String>,
        funcs: Vec<Expr>,
        jac: Option<Vec<Vec<Expr>>>,
    ) -> Result<Self, SystemError> {
        let n = names.len();
        check_names(&names)?;
        if funcs.len() != n {
            return Err(SystemError::NotSquare {
                variables: n,
                functions: funcs.len(),
            });
        }
        let check = |field: String, e: &Expr| match e.max_var() {
            Some(index) if index >= n => Err(SystemError::VariableOutOfRange { field, index, n }),
            _ => Ok(()),
        };
        for (i, f) in funcs.iter().enumerate() {
            check(format!("functions[{i}]"), f)?;
        }
        if let Some(jac) = &jac {
            if jac.len() != n || jac.iter().any(|row| row.len() != n) {
                return Err(SystemError::JacobianShape { n });
            }
            for (i, row) in jac.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    check(format!("jacobian[{i}][{j}]"), e)?;
                }
            }
        }
        Ok(SystemDef { names, funcs, jac })
    }

    /// Parse component (and optional Jacobian) sources over `names`.
    pub fn parse<S: AsRef<str>>(
        names: &[S],
        funcs: &[S],
        jac: Option<&[Vec<S>]>,
    ) -> Result<Self, SystemError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        check_names(&names)?;
        let parse_field = |field: String, src: &str| {
            parse(src, &names).map_err(|source| SystemError::Parse { field, source })
        };
        let funcs = funcs
            .iter()
            .enumerate()
            .map(|(i, s)| parse_field(format!("functions[{i}]"), s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let jac = match jac {
            None => None,
            Some(rows) => Some(
                rows.iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, s)| parse_field(format!("jacobian[{i}][{j}]"), s.as_ref()))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        SystemDef::new(names, funcs, jac)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn funcs(&self) -> &[Expr] {
        &self.funcs
    }

    pub fn func(&self, i: usize) -> &Expr {
        &self.funcs[i]
    }

    pub fn jac(&self) -> Option<&[Vec<Expr>]> {
        self.jac.as_deref()
    }

    /// Same system with the explicit Jacobian dropped.
    pub fn without_jacobian(&self) -> SystemDef {
        SystemDef {
            jac: None,
            ..self.clone()
        }
    }

    /// `F(point)` in floating point.
    pub fn eval(&self, point: &[f64]) -> Result<Vec<f64>, SystemError> {
        self.check_point(point)?;
        Ok(self
            .funcs
            .iter()
            .map(|f| f.eval_scalar(point))
            .collect::<Result<_, _>>()?)
    }

    /// `DF(point)`, from the explicit Jacobian when present and otherwise by
    /// central differences with step `1e-6 · max(1, |x_j|)`.
    pub fn jacobian_at(&self, point: &[f64]) -> Result<Matrix, SystemError> {
        self.check_point(point)?;
        let n = self.dim();
        let rows = match &self.jac {
            Some(jac) => jac
                .iter()
                .map(|row| row.iter().map(|e| e.eval_scalar(point)).collect())
                .collect::<Result<Vec<Vec<f64>>, _>>()?,
            None => {
                let mut rows = vec![vec![0.0; n]; n];
                let mut x = point.to_vec();
                for j in 0..n {
                    let h = 1.0e-6 * point[j].abs().max(1.0);
                    x[j] = point[j] + h;
                    let plus = self.eval(&x)?;
                    x[j] = point[j] - h;
                    let minus = self.eval(&x)?;
                    x[j] = point[j];
                    let step = 2.0 * h;
                    for i in 0..n {
                        rows[i][j] = (plus[i] - minus[i]) / step;
                    }
                }
                rows
            }
        };
        Ok(Matrix::from_rows(&rows)?)
    }

    fn check_point(&self, point: &[f64]) -> Result<(), SystemError> {
        if point.len() != self.dim() {
            return Err(EvalError::Dimension {
                expected: self.dim(),
                got: point.len(),
            }
            .into());
        }
        Ok(())
    }
}
