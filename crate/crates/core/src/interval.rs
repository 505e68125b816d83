//! Closed real intervals with outward-rounded arithmetic.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use thiserror::Error;

use crate::round::{
    add_down, add_up, div_down, div_up, mul_down, mul_up, sqrt_down, sqrt_up, sub_down, sub_up,
    widen_down, widen_up,
};

/// Errors raised by interval construction and evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("invalid interval bounds [{lo}, {hi}]")]
    InvalidBounds { lo: f64, hi: f64 },
    #[error("{func} is undefined on {arg}")]
    Domain { func: &'static str, arg: Interval },
    #[error("division by an interval containing zero: {divisor}")]
    DivisionByZero { divisor: Interval },
    #[error("{func} is not differentiable on {arg}")]
    NotDifferentiable { func: &'static str, arg: Interval },
    #[error("floating-point overflow in {op}")]
    Overflow { op: &'static str },
    #[error("a box needs at least one dimension")]
    EmptyBox,
}

pub type Result<T> = std::result::Result<T, IntervalError>;

/// A closed interval `[lo, hi]` with finite endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

/// Binary interval operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Elementary functions with interval enclosures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Elementary {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
    Abs,
    PowInt(i32),
    PowReal(f64),
}

impl Elementary {
    pub fn name(&self) -> &'static str {
        match self {
            Elementary::Exp => "exp",
            Elementary::Log => "log",
            Elementary::Sqrt => "sqrt",
            Elementary::Sin => "sin",
            Elementary::Cos => "cos",
            Elementary::Abs => "abs",
            Elementary::PowInt(_) => "pow_int",
            Elementary::PowReal(_) => "pow_real",
        }
    }
}

// pi enclosed by its two neighbouring doubles
const PI_LO: f64 = PI;
const HALF_PI_LO: f64 = FRAC_PI_2;
const HALF_PI_HI: f64 = FRAC_PI_2.next_up();

fn checked(lo: f64, hi: f64, op: &'static str) -> Result<Interval> {
    if lo.is_infinite() || hi.is_infinite() {
        return Err(IntervalError::Overflow { op });
    }
    Interval::new(lo, hi)
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(IntervalError::InvalidBounds { lo, hi });
        }
        // -0.0 becomes 0.0
        Ok(Interval {
            lo: lo + 0.0,
            hi: hi + 0.0,
        })
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// `hi - lo`, rounded up.
    pub fn width(&self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// Midpoint rounded to nearest; always lies inside the interval.
    pub fn mid(&self) -> f64 {
        let m = 0.5 * (self.lo + self.hi);
        if m.is_finite() {
            m.clamp(self.lo, self.hi)
        } else {
            0.5 * self.lo + 0.5 * self.hi
        }
    }

    /// Half-width, rounded up.
    pub fn radius(&self) -> f64 {
        let m = self.mid();
        sub_up(self.hi, m).max(sub_up(m, self.lo))
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value in the interval.
    pub fn mig(&self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `self` lies in the interior of `other`.
    pub fn is_interior_of(&self, other: &Interval) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi + 0.0,
            hi: -self.lo + 0.0,
        }
    }

    pub fn add(&self, rhs: &Interval) -> Result<Interval> {
        checked(add_down(self.lo, rhs.lo), add_up(self.hi, rhs.hi), "add")
    }

    pub fn sub(&self, rhs: &Interval) -> Result<Interval> {
        checked(sub_down(self.lo, rhs.hi), sub_up(self.hi, rhs.lo), "sub")
    }

    pub fn mul(&self, rhs: &Interval) -> Result<Interval> {
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let lo = mul_down(a, c)
            .min(mul_down(a, d))
            .min(mul_down(b, c))
            .min(mul_down(b, d));
        let hi = mul_up(a, c)
            .max(mul_up(a, d))
            .max(mul_up(b, c))
            .max(mul_up(b, d));
        checked(lo, hi, "mul")
    }

    pub fn div(&self, rhs: &Interval) -> Result<Interval> {
        if rhs.contains(0.0) {
            return Err(IntervalError::DivisionByZero { divisor: *rhs });
        }
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let lo = div_down(a, c)
            .min(div_down(a, d))
            .min(div_down(b, c))
            .min(div_down(b, d));
        let hi = div_up(a, c)
            .max(div_up(a, d))
            .max(div_up(b, c))
            .max(div_up(b, d));
        checked(lo, hi, "div")
    }

    /// Multiply by an exact scalar.
    pub fn scale(&self, k: f64) -> Result<Interval> {
        self.mul(&Interval::point(k)?)
    }

    pub fn exp(&self) -> Result<Interval> {
        // exp crosses 1 exactly at 0; the clamps keep that after widening
        let lo = if self.lo == 0.0 {
            1.0
        } else if self.lo > 0.0 {
            widen_down(self.lo.exp()).max(1.0)
        } else {
            widen_down(self.lo.exp()).max(0.0)
        };
        let hi = if self.hi == 0.0 {
            1.0
        } else if self.hi < 0.0 {
            widen_up(self.hi.exp()).min(1.0)
        } else {
            widen_up(self.hi.exp())
        };
        checked(lo, hi, "exp")
    }

    pub fn log(&self) -> Result<Interval> {
        if self.lo <= 0.0 {
            return Err(IntervalError::Domain {
                func: "log",
                arg: *self,
            });
        }
        let lo = if self.lo == 1.0 {
            0.0
        } else if self.lo > 1.0 {
            widen_down(self.lo.ln()).max(0.0)
        } else {
            widen_down(self.lo.ln())
        };
        let hi = if self.hi == 1.0 {
            0.0
        } else if self.hi < 1.0 {
            widen_up(self.hi.ln()).min(0.0)
        } else {
            widen_up(self.hi.ln())
        };
        checked(lo, hi, "log")
    }

    pub fn sqrt(&self) -> Result<Interval> {
        if self.lo < 0.0 {
            return Err(IntervalError::Domain {
                func: "sqrt",
                arg: *self,
            });
        }
        checked(sqrt_down(self.lo), sqrt_up(self.hi), "sqrt")
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            self.neg()
        } else {
            Interval {
                lo: 0.0,
                hi: self.hi.max(-self.lo),
            }
        }
    }

    pub fn sin(&self) -> Result<Interval> {
        // extrema of sin sit at k*pi/2 with k = 1 (mod 4) and k = 3 (mod 4)
        self.trig(f64::sin, 1, 3, "sin")
    }

    pub fn cos(&self) -> Result<Interval> {
        self.trig(f64::cos, 0, 2, "cos")
    }

    fn trig(
        &self,
        f: fn(f64) -> f64,
        max_residue: i64,
        min_residue: i64,
        name: &'static str,
    ) -> Result<Interval> {
        let full = Interval { lo: -1.0, hi: 1.0 };
        if self.width() >= 2.0 * PI_LO {
            return Ok(full);
        }
        // quarter-turn coordinates of the endpoints, enclosed outward
        let q_lo = if self.lo >= 0.0 {
            div_down(self.lo, HALF_PI_HI)
        } else {
            div_down(self.lo, HALF_PI_LO)
        };
        let q_hi = if self.hi >= 0.0 {
            div_up(self.hi, HALF_PI_LO)
        } else {
            div_up(self.hi, HALF_PI_HI)
        };
        if q_lo.abs() > 1.0e15 || q_hi.abs() > 1.0e15 {
            return Ok(full);
        }
        let eval = |x: f64| -> (f64, f64) {
            let y = f(x);
            // exact special values
            if x == 0.0 {
                return (y, y);
            }
            (widen_down(y).max(-1.0), widen_up(y).min(1.0))
        };
        let (a_lo, a_hi) = eval(self.lo);
        let (b_lo, b_hi) = eval(self.hi);
        let mut lo = a_lo.min(b_lo);
        let mut hi = a_hi.max(b_hi);
        let mut k = q_lo.ceil() as i64;
        let k_end = q_hi.floor() as i64;
        while k <= k_end {
            let r = k.rem_euclid(4);
            if r == max_residue {
                hi = 1.0;
            } else if r == min_residue {
                lo = -1.0;
            }
            k += 1;
        }
        checked(lo, hi, name)
    }

    pub fn powi(&self, n: i32) -> Result<Interval> {
        if n == 0 {
            return Ok(Interval::ONE);
        }
        if n < 0 {
            if self.contains(0.0) {
                return Err(IntervalError::DivisionByZero { divisor: *self });
            }
            let p = self.powi_pos(n.unsigned_abs())?;
            return Interval::ONE.div(&p);
        }
        self.powi_pos(n as u32)
    }

    fn powi_pos(&self, n: u32) -> Result<Interval> {
        let (lo_abs, hi_abs) = (self.lo.abs(), self.hi.abs());
        let pow_lo = |x: f64| pow_nonneg(x, n, mul_down);
        let pow_hi = |x: f64| pow_nonneg(x, n, mul_up);
        let (lo, hi) = if n % 2 == 1 {
            let lo = if self.lo >= 0.0 {
                pow_lo(lo_abs)
            } else {
                -pow_hi(lo_abs)
            };
            let hi = if self.hi >= 0.0 {
                pow_hi(hi_abs)
            } else {
                -pow_lo(hi_abs)
            };
            (lo, hi)
        } else if self.lo >= 0.0 {
            (pow_lo(lo_abs), pow_hi(hi_abs))
        } else if self.hi <= 0.0 {
            (pow_lo(hi_abs), pow_hi(lo_abs))
        } else {
            (0.0, pow_hi(lo_abs.max(hi_abs)))
        };
        checked(lo, hi, "pow_int")
    }

    /// `x^p` for real `p`, defined as `exp(p * log x)` on `x >= 0`.
    pub fn powf(&self, p: f64) -> Result<Interval> {
        if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
            return self.powi(p as i32);
        }
        if self.lo < 0.0 || (p < 0.0 && self.lo <= 0.0) {
            return Err(IntervalError::Domain {
                func: "pow_real",
                arg: *self,
            });
        }
        let pk = Interval::point(p)?;
        let at = |x: f64| -> Result<Interval> {
            if x == 0.0 {
                return Ok(Interval::ZERO);
            }
            Interval::point(x)?.log()?.mul(&pk)?.exp()
        };
        let a = at(self.lo)?;
        let b = at(self.hi)?;
        // monotone in x: increasing for p > 0, decreasing for p < 0
        Ok(a.hull(&b))
    }
}

fn pow_nonneg(x: f64, n: u32, mul: fn(f64, f64) -> f64) -> f64 {
    let mut acc = 1.0;
    let mut base = x;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(base, base);
        }
    }
    acc
}

/// Apply a binary operation.
pub fn arith(a: &Interval, b: &Interval, op: ArithOp) -> Result<Interval> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
    }
}

/// Apply an elementary function.
pub fn elementary(a: &Interval, f: Elementary) -> Result<Interval> {
    match f {
        Elementary::Exp => a.exp(),
        Elementary::Log => a.log(),
        Elementary::Sqrt => a.sqrt(),
        Elementary::Sin => a.sin(),
        Elementary::Cos => a.cos(),
        Elementary::Abs => Ok(a.abs()),
        Elementary::PowInt(n) => a.powi(n),
        Elementary::PowReal(p) => a.powf(p),
    }
}

/// Split `a` into `n` consecutive cells of equal nominal width.
///
/// Neighbouring cells share endpoints and the last cell ends exactly at
/// `a.hi()`, so the hull of the cells is `a` itself.
pub fn uniform_subdivide(a: &Interval, n: usize) -> Vec<Interval> {
    let n = n.max(1);
    if n == 1 || a.is_degenerate() {
        return vec![*a; n];
    }
    let w = a.hi - a.lo;
    let step = w / n as f64;
    let mut cells = Vec::with_capacity(n);
    let mut prev = a.lo;
    for j in 1..=n {
        let next = if j == n {
            a.hi
        } else {
            let x = if step.is_finite() {
                a.lo + j as f64 * step
            } else {
                let t = j as f64 / n as f64;
                a.lo * (1.0 - t) + a.hi * t
            };
            x.clamp(prev, a.hi)
        };
        cells.push(Interval { lo: prev, hi: next });
        prev = next;
    }
    cells
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}
