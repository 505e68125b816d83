use crate::affine::AffineForm;
use crate::interval::{Elementary, Interval, IntervalError};

use super::{EvalError, UnaryOp};

type Result<T> = std::result::Result<T, EvalError>;

/// A number-like domain an [`Expr`](super::Expr) can be evaluated in.
pub trait Value: Clone + Sized {
    fn constant(c: f64) -> Result<Self>;
    fn add(&self, rhs: &Self) -> Result<Self>;
    fn sub(&self, rhs: &Self) -> Result<Self>;
    fn mul(&self, rhs: &Self) -> Result<Self>;
    fn div(&self, rhs: &Self) -> Result<Self>;
    fn unary(&self, op: UnaryOp) -> Result<Self>;
    fn pow(&self, p: f64) -> Result<Self>;
}

fn elementary_of(op: UnaryOp) -> Option<Elementary> {
    Some(match op {
        UnaryOp::Neg => return None,
        UnaryOp::Exp => Elementary::Exp,
        UnaryOp::Log => Elementary::Log,
        UnaryOp::Sqrt => Elementary::Sqrt,
        UnaryOp::Sin => Elementary::Sin,
        UnaryOp::Cos => Elementary::Cos,
        UnaryOp::Abs => Elementary::Abs,
    })
}

fn power_kind(p: f64) -> Elementary {
    if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
        Elementary::PowInt(p as i32)
    } else {
        Elementary::PowReal(p)
    }
}

fn scalar(v: f64, func: &'static str, arg: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::Domain { func, value: arg })
    }
}

impl Value for f64 {
    fn constant(c: f64) -> Result<Self> {
        Ok(c)
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        scalar(self + rhs, "add", *self)
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        scalar(self - rhs, "sub", *self)
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        scalar(self * rhs, "mul", *self)
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        if *rhs == 0.0 {
            return Err(EvalError::Domain {
                func: "div",
                value: *rhs,
            });
        }
        scalar(self / rhs, "div", *rhs)
    }

    fn unary(&self, op: UnaryOp) -> Result<Self> {
        let x = *self;
        match op {
            UnaryOp::Neg => Ok(-x),
            UnaryOp::Exp => scalar(x.exp(), "exp", x),
            UnaryOp::Log if x <= 0.0 => Err(EvalError::Domain {
                func: "log",
                value: x,
            }),
            UnaryOp::Log => Ok(x.ln()),
            UnaryOp::Sqrt if x < 0.0 => Err(EvalError::Domain {
                func: "sqrt",
                value: x,
            }),
            UnaryOp::Sqrt => Ok(x.sqrt()),
            UnaryOp::Sin => scalar(x.sin(), "sin", x),
            UnaryOp::Cos => scalar(x.cos(), "cos", x),
            UnaryOp::Abs => Ok(x.abs()),
        }
    }

    fn pow(&self, p: f64) -> Result<Self> {
        let x = *self;
        match power_kind(p) {
            Elementary::PowInt(n) => {
                if n < 0 && x == 0.0 {
                    return Err(EvalError::Domain {
                        func: "pow",
                        value: x,
                    });
                }
                scalar(x.powi(n), "pow", x)
            }
            _ => {
                if x < 0.0 {
                    return Err(EvalError::Domain {
                        func: "pow",
                        value: x,
                    });
                }
                scalar(x.powf(p), "pow", x)
            }
        }
    }
}

impl Value for Interval {
    fn constant(c: f64) -> Result<Self> {
        Ok(Interval::point(c)?)
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(Interval::add(self, rhs)?)
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Interval::sub(self, rhs)?)
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        Ok(Interval::mul(self, rhs)?)
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(Interval::div(self, rhs)?)
    }

    fn unary(&self, op: UnaryOp) -> Result<Self> {
        match elementary_of(op) {
            None => Ok(self.neg()),
            Some(f) => Ok(crate::interval::elementary(self, f)?),
        }
    }

    fn pow(&self, p: f64) -> Result<Self> {
        Ok(crate::interval::elementary(self, power_kind(p))?)
    }
}

/// An affine form paired with a natural-interval range of the same quantity.
///
/// Both enclose the true value, so the range kept is their intersection and
/// nonlinear steps are linearized over that tighter range.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineRange {
    form: AffineForm,
    range: Interval,
}

impl AffineRange {
    pub fn new(form: AffineForm, range: Interval) -> Self {
        AffineRange { form, range }
    }

    fn tightened(form: AffineForm, natural: Interval) -> Result<Self> {
        let enclosure = form.to_interval()?;
        let range = natural.intersect(&enclosure).unwrap_or(natural);
        Ok(AffineRange { form, range })
    }

    pub fn form(&self) -> &AffineForm {
        &self.form
    }

    pub fn range(&self) -> Interval {
        self.range
    }
}

impl Value for AffineRange {
    fn constant(c: f64) -> Result<Self> {
        Ok(AffineRange {
            form: AffineForm::constant(c),
            range: Interval::point(c)?,
        })
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        Self::tightened(self.form.add(&rhs.form)?, self.range.add(&rhs.range)?)
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        Self::tightened(self.form.sub(&rhs.form)?, self.range.sub(&rhs.range)?)
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        Self::tightened(self.form.mul(&rhs.form)?, self.range.mul(&rhs.range)?)
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        let natural = self.range.div(&rhs.range)?;
        let recip = rhs.form.reciprocal_over(&rhs.range)?;
        Self::tightened(self.form.mul(&recip)?, natural)
    }

    fn unary(&self, op: UnaryOp) -> Result<Self> {
        match elementary_of(op) {
            None => Ok(AffineRange {
                form: self.form.neg(),
                range: self.range.neg(),
            }),
            Some(f) => {
                let natural = crate::interval::elementary(&self.range, f)?;
                Self::tightened(self.form.elementary_over(f, &self.range)?, natural)
            }
        }
    }

    fn pow(&self, p: f64) -> Result<Self> {
        let f = power_kind(p);
        let natural = crate::interval::elementary(&self.range, f)?;
        Self::tightened(self.form.elementary_over(f, &self.range)?, natural)
    }
}

/// Interval value with an interval enclosure of one directional derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    value: Interval,
    deriv: Interval,
}

impl Dual {
    /// The differentiation variable itself.
    pub fn variable(x: Interval) -> Self {
        Dual {
            value: x,
            deriv: Interval::ONE,
        }
    }

    /// A quantity independent of the differentiation variable.
    pub fn constant_of(x: Interval) -> Self {
        Dual {
            value: x,
            deriv: Interval::ZERO,
        }
    }

    pub fn value(&self) -> Interval {
        self.value
    }

    pub fn derivative(&self) -> Interval {
        self.deriv
    }

    fn chain(&self, value: Interval, outer: impl FnOnce() -> Result<Interval>) -> Result<Self> {
        let deriv = if self.deriv == Interval::ZERO {
            Interval::ZERO
        } else {
            self.deriv.mul(&outer()?)?
        };
        Ok(Dual { value, deriv })
    }
}

impl Value for Dual {
    fn constant(c: f64) -> Result<Self> {
        Ok(Dual::constant_of(Interval::point(c)?))
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(Dual {
            value: self.value.add(&rhs.value)?,
            deriv: self.deriv.add(&rhs.deriv)?,
        })
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Dual {
            value: self.value.sub(&rhs.value)?,
            deriv: self.deriv.sub(&rhs.deriv)?,
        })
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        let deriv = self
            .deriv
            .mul(&rhs.value)?
            .add(&self.value.mul(&rhs.deriv)?)?;
        Ok(Dual {
            value: self.value.mul(&rhs.value)?,
            deriv,
        })
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        let q = self.value.div(&rhs.value)?;
        let deriv = self.deriv.sub(&q.mul(&rhs.deriv)?)?.div(&rhs.value)?;
        Ok(Dual { value: q, deriv })
    }

    fn unary(&self, op: UnaryOp) -> Result<Self> {
        let x = self.value;
        match op {
            UnaryOp::Neg => Ok(Dual {
                value: x.neg(),
                deriv: self.deriv.neg(),
            }),
            UnaryOp::Exp => {
                let e = x.exp()?;
                self.chain(e, || Ok(e))
            }
            UnaryOp::Log => self.chain(x.log()?, || Ok(Interval::ONE.div(&x)?)),
            UnaryOp::Sqrt => {
                let s = x.sqrt()?;
                self.chain(s, || {
                    if s.contains(0.0) {
                        return Err(IntervalError::NotDifferentiable {
                            func: "sqrt",
                            arg: x,
                        }
                        .into());
                    }
                    Ok(Interval::ONE.div(&s.scale(2.0)?)?)
                })
            }
            UnaryOp::Sin => self.chain(x.sin()?, || Ok(x.cos()?)),
            UnaryOp::Cos => self.chain(x.cos()?, || Ok(x.sin()?.neg())),
            UnaryOp::Abs => self.chain(x.abs(), || {
                if x.lo() > 0.0 {
                    Ok(Interval::ONE)
                } else if x.hi() < 0.0 {
                    Ok(Interval::ONE.neg())
                } else {
                    Err(IntervalError::NotDifferentiable {
                        func: "abs",
                        arg: x,
                    }
                    .into())
                }
            }),
        }
    }

    fn pow(&self, p: f64) -> Result<Self> {
        let x = self.value;
        match power_kind(p) {
            Elementary::PowInt(0) => Ok(Dual::constant_of(Interval::ONE)),
            Elementary::PowInt(n) => {
                self.chain(x.powi(n)?, || Ok(x.powi(n - 1)?.scale(n as f64)?))
            }
            _ => self.chain(x.powf(p)?, || Ok(x.powf(p - 1.0)?.scale(p)?)),
        }
    }
}
