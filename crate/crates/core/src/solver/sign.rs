//! Face sign certification and the Poincaré–Miranda box test.

use std::fmt;

use crate::boxes::{IntervalBox, Side};
use crate::expr::{DerivativeMode, Expr};
use crate::extension::{affine_refinement, mean_value_refinement};
use crate::interval::Interval;

use super::precondition::PreconditionedSystem;

/// Certified sign of a function over a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignResult {
    /// The enclosure has `inf >= 0`.
    Plus,
    /// The enclosure has `sup <= 0`.
    Minus,
    /// The enclosure is exactly `[0, 0]`: the function vanishes on the face.
    Zero,
    Unknown,
}

impl SignResult {
    fn of(y: Interval) -> Option<SignResult> {
        if y.lo() == 0.0 && y.hi() == 0.0 {
            Some(SignResult::Zero)
        } else if y.lo() >= 0.0 {
            Some(SignResult::Plus)
        } else if y.hi() <= 0.0 {
            Some(SignResult::Minus)
        } else {
            None
        }
    }

    /// Certified `f(x) · f(y) <= 0` for `x`, `y` on the two faces.
    pub fn opposite(a: SignResult, b: SignResult) -> bool {
        use SignResult::*;
        matches!(
            (a, b),
            (Plus, Minus) | (Minus, Plus) | (Zero, Plus | Minus | Zero) | (Plus | Minus, Zero)
        )
    }

    pub fn symbol(&self) -> char {
        match self {
            SignResult::Plus => '+',
            SignResult::Minus => '-',
            SignResult::Zero => '0',
            SignResult::Unknown => '?',
        }
    }
}

impl fmt::Display for SignResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// One of the `2n` faces of a box.
#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub domain: IntervalBox,
    pub fixed_dim: usize,
    pub side: Side,
}

impl Face {
    pub fn of(b: &IntervalBox, fixed_dim: usize, side: Side) -> Face {
        Face {
            domain: b.face(fixed_dim, side),
            fixed_dim,
            side,
        }
    }
}

/// Sign of `e` over `face_domain`: mean value refinement first, then the
/// affine refinement, each tested with `inf >= 0` / `sup <= 0`.
pub fn posneg(e: &Expr, face_domain: &IntervalBox, n: usize, mode: DerivativeMode) -> SignResult {
    match mean_value_refinement(e, face_domain, n, mode) {
        Ok(y) => {
            if let Some(s) = SignResult::of(y) {
                return s;
            }
        }
        Err(err) => log::debug!("mean value enclosure failed on {face_domain}: {err}"),
    }
    match affine_refinement(e, face_domain, n) {
        Ok(y) => SignResult::of(y).unwrap_or(SignResult::Unknown),
        Err(err) => {
            log::debug!("affine enclosure failed on {face_domain}: {err}");
            SignResult::Unknown
        }
    }
}

/// Signs of component `i` on the faces `x_i = lo` and `x_i = hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceSigns {
    pub low: SignResult,
    pub high: SignResult,
}

impl FaceSigns {
    pub fn opposite(&self) -> bool {
        SignResult::opposite(self.low, self.high)
    }
}

/// Outcome of the sign test on one box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmCheck {
    /// Entry `i` holds the signs of `g_i` on the two faces normal to axis `i`.
    pub signs: Vec<FaceSigns>,
}

impl PmCheck {
    pub fn holds(&self) -> bool {
        self.signs.iter().all(FaceSigns::opposite)
    }
}

impl fmt::Display for PmCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.signs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", s.low, s.high)?;
        }
        Ok(())
    }
}

/// Evaluate every face sign of `sys` on `b`.
pub fn pm_check(
    sys: &PreconditionedSystem,
    b: &IntervalBox,
    n: usize,
    mode: DerivativeMode,
) -> PmCheck {
    let signs = (0..sys.dim())
        .map(|i| {
            let g = sys.component(i);
            let low = posneg(g, &b.face(i, Side::Low), n, mode);
            let high = posneg(g, &b.face(i, Side::High), n, mode);
            FaceSigns { low, high }
        })
        .collect();
    PmCheck { signs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::SystemDef;

    const AD: DerivativeMode = DerivativeMode::Ad;

    fn one(src: &str, lo: f64, hi: f64) -> SignResult {
        let e = crate::expr::parse(src, &["x".to_string()]).unwrap();
        posneg(&e, &IntervalBox::from_bounds(&[(lo, hi)]).unwrap(), 3, AD)
    }

    fn check(funcs: &[&str], bounds: &[(f64, f64)]) -> PmCheck {
        let s = SystemDef::parse(&["x", "y"], funcs, None).unwrap();
        let sys = PreconditionedSystem::identity(s);
        pm_check(&sys, &IntervalBox::from_bounds(bounds).unwrap(), 3, AD)
    }

    #[test]
    fn posneg_examples() {
        assert_eq!(one("-exp(-(x^2))", 0.0, 1.0), SignResult::Minus);
        assert_eq!(one("x - 3", 1.0, 2.0), SignResult::Minus);
        assert_eq!(one("x - 1.5", 1.0, 2.0), SignResult::Unknown);
        assert_eq!(one("x - 1", 1.0, 2.0), SignResult::Plus);
        assert_eq!(one("x - x", 1.0, 2.0), SignResult::Zero);
    }

    #[test]
    fn posneg_treats_evaluation_errors_as_unknown() {
        assert_eq!(one("log(x)", -1.0, 2.0), SignResult::Unknown);
        assert_eq!(one("1/x", -1.0, 1.0), SignResult::Unknown);
    }

    #[test]
    fn pm_check_examples() {
        let unit = [(0.0, 1.0), (0.0, 1.0)];
        assert!(check(&["y+x-1", "y-exp(-(x^2))"], &unit).holds());
        assert!(check(&["x", "y"], &[(-1.0, 1.0), (-1.0, 1.0)]).holds());
        let c = check(&["x-y", "y"], &[(0.0, 1.0), (0.0, 1.0)]);
        assert_eq!(c.to_string(), "-+ 0+");
        assert!(c.holds());
        let c = check(&["x-5", "y"], &unit);
        assert!(!c.holds());
        assert_eq!(c.signs[0].low, SignResult::Minus);
        assert_eq!(c.signs[0].high, SignResult::Minus);
        assert_eq!(c.to_string(), "-- 0+");
    }
}
