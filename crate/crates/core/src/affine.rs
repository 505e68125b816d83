//! Affine arithmetic.
//!
//! A form `x0 + Σ x_i·u_i + r·ε` represents a quantity for noise symbols
//! `u_i ∈ [-1, 1]`. The residual `r` collects nonlinear and rounding error
//! and acts as a symbol that is never shared with any other form.

use crate::interval::{ArithOp, Elementary, Interval, IntervalError, Result};
use crate::round::{add_up, mul_up, sub_down, sub_up, two_sum};

/// Identifier of an independent noise symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(pub u32);

/// Hands out fresh symbols within one evaluation.
#[derive(Debug, Default, Clone)]
pub struct SymbolAllocator {
    next: u32,
}

impl SymbolAllocator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self) -> SymbolId {
        let id = SymbolId(self.next);
        self.next += 1;
        id
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AffineForm {
    center: f64,
    /// Sorted by symbol, no zero coefficients.
    terms: Vec<(SymbolId, f64)>,
    residual: f64,
}

/// Accumulates absolute rounding errors, rounding up.
#[derive(Default)]
struct ErrAcc(f64);

impl ErrAcc {
    fn push(&mut self, e: f64) {
        self.0 = add_up(self.0, e.abs());
    }
}

/// `a * b` rounded to nearest plus the exact error.
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    if p.abs() < 1.0e-290 && a != 0.0 && b != 0.0 {
        // underflow: the fma residual is no longer exact
        return (p, 1.0e-290);
    }
    let e = if p.is_finite() { a.mul_add(b, -p) } else { 0.0 };
    (p, e)
}

fn finite(x: f64, op: &'static str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(IntervalError::Overflow { op })
    }
}

impl AffineForm {
    pub fn constant(c: f64) -> Self {
        AffineForm {
            center: c,
            terms: Vec::new(),
            residual: 0.0,
        }
    }

    /// Midpoint plus one noise term spanning the radius.
    pub fn from_interval(a: &Interval, symbol: SymbolId) -> Self {
        let center = a.mid();
        let r = a.radius();
        let terms = if r > 0.0 {
            vec![(symbol, r)]
        } else {
            Vec::new()
        };
        AffineForm {
            center,
            terms,
            residual: 0.0,
        }
    }

    /// Form `center ± radius` with no correlated terms.
    fn enclosing(a: &Interval) -> Self {
        AffineForm {
            center: a.mid(),
            terms: Vec::new(),
            residual: a.radius(),
        }
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn terms(&self) -> &[(SymbolId, f64)] {
        &self.terms
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn coefficient(&self, s: SymbolId) -> f64 {
        self.terms
            .binary_search_by_key(&s, |t| t.0)
            .map(|i| self.terms[i].1)
            .unwrap_or(0.0)
    }

    /// `Σ|x_i| + r`, rounded up.
    pub fn radius(&self) -> f64 {
        self.terms
            .iter()
            .fold(self.residual, |acc, &(_, c)| add_up(acc, c.abs()))
    }

    pub fn to_interval(&self) -> Result<Interval> {
        let r = self.radius();
        let lo = sub_down(self.center, r);
        let hi = add_up(self.center, r);
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(IntervalError::Overflow { op: "affine" });
        }
        Interval::new(lo, hi)
    }

    pub fn neg(&self) -> Self {
        AffineForm {
            center: -self.center,
            terms: self.terms.iter().map(|&(s, c)| (s, -c)).collect(),
            residual: self.residual,
        }
    }

    fn merge(
        &self,
        other: &Self,
        mut f: impl FnMut(f64, f64, &mut ErrAcc) -> f64,
        err: &mut ErrAcc,
    ) -> Vec<(SymbolId, f64)> {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        loop {
            let (s, x, y) = match (a.get(i), b.get(j)) {
                (Some(&(sa, xa)), Some(&(sb, xb))) => {
                    if sa == sb {
                        i += 1;
                        j += 1;
                        (sa, xa, xb)
                    } else if sa < sb {
                        i += 1;
                        (sa, xa, 0.0)
                    } else {
                        j += 1;
                        (sb, 0.0, xb)
                    }
                }
                (Some(&(sa, xa)), None) => {
                    i += 1;
                    (sa, xa, 0.0)
                }
                (None, Some(&(sb, xb))) => {
                    j += 1;
                    (sb, 0.0, xb)
                }
                (None, None) => break,
            };
            let c = f(x, y, err);
            if c != 0.0 {
                out.push((s, c));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut err = ErrAcc::default();
        let (center, e) = two_sum(self.center, other.center);
        err.push(e);
        let terms = self.merge(
            other,
            |x, y, err| {
                let (s, e) = two_sum(x, y);
                err.push(e);
                s
            },
            &mut err,
        );
        let residual = add_up(add_up(self.residual, other.residual), err.0);
        Self::checked(center, terms, residual, "affine add")
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn add_scalar(&self, k: f64) -> Result<Self> {
        let (center, e) = two_sum(self.center, k);
        let residual = add_up(self.residual, e.abs());
        Self::checked(center, self.terms.clone(), residual, "affine add")
    }

    pub fn scale(&self, k: f64) -> Result<Self> {
        let mut err = ErrAcc::default();
        let (center, e) = two_prod(self.center, k);
        err.push(e);
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(s, c) in &self.terms {
            let (p, e) = two_prod(c, k);
            err.push(e);
            if p != 0.0 {
                terms.push((s, p));
            }
        }
        let residual = add_up(mul_up(self.residual, k.abs()), err.0);
        Self::checked(center, terms, residual, "affine scale")
    }

    /// Product: center `a0·b0`, linear part `a0·b_i + b0·a_i`, and a fresh
    /// residual bounding the quadratic remainder by `rad(a)·rad(b)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a0, b0) = (self.center, other.center);
        let mut err = ErrAcc::default();
        let (center, e) = two_prod(a0, b0);
        err.push(e);
        let terms = self.merge(
            other,
            |x, y, err| {
                let (p1, e1) = two_prod(a0, y);
                let (p2, e2) = two_prod(b0, x);
                let (s, e3) = two_sum(p1, p2);
                err.push(e1);
                err.push(e2);
                err.push(e3);
                s
            },
            &mut err,
        );
        let quad = mul_up(self.radius(), other.radius());
        let cross = add_up(
            mul_up(a0.abs(), other.residual),
            mul_up(b0.abs(), self.residual),
        );
        let residual = add_up(add_up(quad, cross), err.0);
        Self::checked(center, terms, residual, "affine mul")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let range = other.to_interval()?;
        if range.contains(0.0) {
            return Err(IntervalError::DivisionByZero { divisor: range });
        }
        let recip = other.linearize(Lin::Recip, &range)?;
        self.mul(&recip)
    }

    /// Apply an elementary function over the form's own range.
    pub fn elementary(&self, f: Elementary) -> Result<Self> {
        let range = self.to_interval()?;
        self.elementary_over(f, &range)
    }

    /// Apply `f` knowing the represented quantity lies in `range`.
    ///
    /// `range` may be tighter than `to_interval()`; the linearization error
    /// only has to hold over the values the quantity can actually take.
    pub fn elementary_over(&self, f: Elementary, range: &Interval) -> Result<Self> {
        self.linearize(Lin::Elem(f), range)
    }

    pub fn reciprocal_over(&self, range: &Interval) -> Result<Self> {
        if range.contains(0.0) {
            return Err(IntervalError::DivisionByZero { divisor: *range });
        }
        self.linearize(Lin::Recip, range)
    }

    fn checked(
        center: f64,
        terms: Vec<(SymbolId, f64)>,
        residual: f64,
        op: &'static str,
    ) -> Result<Self> {
        finite(center, op)?;
        finite(residual, op)?;
        for &(_, c) in &terms {
            finite(c, op)?;
        }
        Ok(AffineForm {
            center,
            terms,
            residual,
        })
    }

    /// `α·self + ζ ± δ` where `f(x) - α·x ∈ [ζ - δ, ζ + δ]` on `x`.
    fn linearize(&self, lin: Lin, x: &Interval) -> Result<Self> {
        let fx = lin.value(x)?;
        if x.is_degenerate() {
            return Ok(Self::enclosing(&fx));
        }
        let point = |t: f64| Interval::point(t);
        let (l, u) = (x.lo(), x.hi());
        let deriv = lin.derivative(x).ok();

        let (alpha, d_range) = match (lin, deriv) {
            (Lin::Elem(Elementary::Abs), _) => {
                let alpha = ((u.abs() - l.abs()) / (u - l)).clamp(-1.0, 1.0);
                let a = Interval::point(alpha)?;
                let dl = point(l)?.abs().sub(&a.mul(&point(l)?)?)?;
                let du = point(u)?.abs().sub(&a.mul(&point(u)?)?)?;
                // convex with minimum 0 at the kink
                let hi = dl.hi().max(du.hi()).max(0.0);
                (alpha, Interval::new(0.0, hi)?)
            }
            (_, Some(_)) if lin.curvature(x).is_some() => {
                // Chebyshev: secant slope; the remainder is convex (or
                // concave), so a tangent bounds it on the inner side
                let convex = lin.curvature(x) == Some(Curvature::Convex);
                let fl = lin.value(&point(l)?)?;
                let fu = lin.value(&point(u)?)?;
                let alpha = (fu.mid() - fl.mid()) / (u - l);
                let a = Interval::point(alpha)?;
                let dl = fl.sub(&a.mul(&point(l)?)?)?;
                let du = fu.sub(&a.mul(&point(u)?)?)?;
                let t = lin
                    .tangent_point(alpha, x)
                    .filter(|t| t.is_finite())
                    .unwrap_or_else(|| x.mid())
                    .clamp(l, u);
                let tp = point(t)?;
                let slope = lin.derivative(&tp)?.sub(&a)?;
                let tangent = lin
                    .value(&tp)?
                    .sub(&a.mul(&tp)?)?
                    .add(&slope.mul(&x.sub(&tp)?)?)?;
                let range = if convex {
                    let hi = dl.hi().max(du.hi());
                    Interval::new(tangent.lo().min(hi), hi)?
                } else {
                    let lo = dl.lo().min(du.lo());
                    Interval::new(lo, tangent.hi().max(lo))?
                };
                (alpha, range)
            }
            // monotone: min-range slope, the inner bound of f' over x
            (_, Some(dx)) if dx.lo() >= 0.0 || dx.hi() <= 0.0 => {
                let alpha = if dx.lo() >= 0.0 { dx.lo() } else { dx.hi() };
                let a = Interval::point(alpha)?;
                let dl = lin.value(&point(l)?)?.sub(&a.mul(&point(l)?)?)?;
                let du = lin.value(&point(u)?)?.sub(&a.mul(&point(u)?)?)?;
                (alpha, dl.hull(&du))
            }
            (_, Some(dx)) => {
                // generic: secant slope, mean-value bound on the remainder
                let fl = lin.value(&point(l)?)?;
                let fu = lin.value(&point(u)?)?;
                let alpha = (fu.mid() - fl.mid()) / (u - l);
                let a = Interval::point(alpha)?;
                let m = point(x.mid())?;
                let d_m = lin.value(&m)?.sub(&a.mul(&m)?)?;
                let mv = d_m.add(&dx.sub(&a)?.mul(&x.sub(&m)?)?)?;
                let natural = fx.sub(&a.mul(x)?)?;
                (alpha, mv.intersect(&natural).unwrap_or(natural))
            }
            (_, None) => (0.0, fx),
        };

        let zeta = d_range.mid();
        let delta = sub_up(d_range.hi(), zeta).max(sub_up(zeta, d_range.lo()));
        let scaled = self.scale(alpha)?;
        let shifted = scaled.add_scalar(zeta)?;
        Self::checked(
            shifted.center,
            shifted.terms,
            add_up(shifted.residual, delta),
            "affine elementary",
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Curvature {
    Convex,
    Concave,
}

/// Functions that can be linearized.
#[derive(Debug, Clone, Copy)]
enum Lin {
    Elem(Elementary),
    Recip,
}

impl Lin {
    fn value(&self, x: &Interval) -> Result<Interval> {
        match self {
            Lin::Elem(f) => crate::interval::elementary(x, *f),
            Lin::Recip => Interval::ONE.div(x),
        }
    }

    /// Sign of `f''` when it is constant on `x`.
    fn curvature(&self, x: &Interval) -> Option<Curvature> {
        use Curvature::*;
        let (l, u) = (x.lo(), x.hi());
        let by_sign = |lo: f64, hi: f64, pos: Curvature, neg: Curvature| {
            if lo >= 0.0 {
                Some(pos)
            } else if hi <= 0.0 {
                Some(neg)
            } else {
                None
            }
        };
        match self {
            Lin::Elem(Elementary::Exp) => Some(Convex),
            Lin::Elem(Elementary::Log | Elementary::Sqrt) => Some(Concave),
            Lin::Recip => by_sign(l, u, Convex, Concave).filter(|_| !x.contains(0.0)),
            Lin::Elem(Elementary::Sin) => {
                let s = x.sin().ok()?;
                by_sign(s.lo(), s.hi(), Concave, Convex)
            }
            Lin::Elem(Elementary::Cos) => {
                let c = x.cos().ok()?;
                by_sign(c.lo(), c.hi(), Concave, Convex)
            }
            Lin::Elem(Elementary::PowInt(n)) => match *n {
                0 | 1 => None,
                n if n > 0 && n % 2 == 0 => Some(Convex),
                n if n > 0 => by_sign(l, u, Convex, Concave),
                _ if x.contains(0.0) => None,
                n if n % 2 == 0 => Some(Convex),
                _ => by_sign(l, u, Convex, Concave),
            },
            Lin::Elem(Elementary::PowReal(p)) => {
                if *p > 1.0 || *p < 0.0 {
                    Some(Convex)
                } else if *p > 0.0 && *p < 1.0 {
                    Some(Concave)
                } else {
                    None
                }
            }
            Lin::Elem(Elementary::Abs) => None,
        }
    }

    /// Approximate solution of `f'(t) = alpha` in `x`.
    fn tangent_point(&self, alpha: f64, x: &Interval) -> Option<f64> {
        let t = match self {
            Lin::Elem(Elementary::Exp) => alpha.ln(),
            Lin::Elem(Elementary::Log) => 1.0 / alpha,
            Lin::Elem(Elementary::Sqrt) => 1.0 / (4.0 * alpha * alpha),
            Lin::Recip => x.mid().signum() * (-1.0 / alpha).sqrt(),
            Lin::Elem(Elementary::PowInt(n)) => {
                let r = (alpha / *n as f64).abs().powf(1.0 / (*n - 1) as f64);
                if x.mid() < 0.0 {
                    -r
                } else {
                    r
                }
            }
            Lin::Elem(Elementary::PowReal(p)) => (alpha / p).powf(1.0 / (p - 1.0)),
            Lin::Elem(Elementary::Sin) => {
                let m = x.mid();
                let base = alpha.clamp(-1.0, 1.0).acos();
                nearest(m, base, 2.0 * std::f64::consts::PI)
                    .into_iter()
                    .chain(nearest(m, -base, 2.0 * std::f64::consts::PI))
                    .min_by(|a, b| (a - m).abs().total_cmp(&(b - m).abs()))?
            }
            Lin::Elem(Elementary::Cos) => {
                let m = x.mid();
                let base = (-alpha).clamp(-1.0, 1.0).asin();
                nearest(m, base, 2.0 * std::f64::consts::PI)
                    .into_iter()
                    .chain(nearest(
                        m,
                        std::f64::consts::PI - base,
                        2.0 * std::f64::consts::PI,
                    ))
                    .min_by(|a, b| (a - m).abs().total_cmp(&(b - m).abs()))?
            }
            Lin::Elem(Elementary::Abs) => return None,
        };
        Some(t)
    }

    fn derivative(&self, x: &Interval) -> Result<Interval> {
        let two = Interval::point(2.0)?;
        match self {
            Lin::Elem(Elementary::Exp) => x.exp(),
            Lin::Elem(Elementary::Log) => Interval::ONE.div(x),
            Lin::Elem(Elementary::Sqrt) => Interval::ONE.div(&two.mul(&x.sqrt()?)?),
            Lin::Elem(Elementary::Sin) => x.cos(),
            Lin::Elem(Elementary::Cos) => Ok(x.sin()?.neg()),
            Lin::Elem(Elementary::Abs) => {
                if x.lo() > 0.0 {
                    Ok(Interval::ONE)
                } else if x.hi() < 0.0 {
                    Ok(Interval::ONE.neg())
                } else {
                    Err(IntervalError::NotDifferentiable {
                        func: "abs",
                        arg: *x,
                    })
                }
            }
            Lin::Elem(Elementary::PowInt(n)) => {
                if *n == 0 {
                    Ok(Interval::ZERO)
                } else {
                    x.powi(n - 1)?.scale(*n as f64)
                }
            }
            Lin::Elem(Elementary::PowReal(p)) => x.powf(p - 1.0)?.scale(*p),
            Lin::Recip => Ok(Interval::ONE.div(&x.powi(2)?)?.neg()),
        }
    }
}

/// The point of `base + k·period` closest to `m`.
fn nearest(m: f64, base: f64, period: f64) -> Option<f64> {
    let k = ((m - base) / period).round();
    let t = base + k * period;
    t.is_finite().then_some(t)
}

/// Apply a binary operation to two forms.
pub fn affine_arith(a: &AffineForm, b: &AffineForm, op: ArithOp) -> Result<AffineForm> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn sample(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
        (0..=n).map(move |i| lo + (hi - lo) * i as f64 / n as f64)
    }

    #[test]
    fn from_interval_splits_midpoint_and_radius() {
        let s = SymbolId(0);
        let x = AffineForm::from_interval(&iv(0.0, 1.0), s);
        assert_eq!(x.center(), 0.5);
        assert_eq!(x.coefficient(s), 0.5);
        let x = AffineForm::from_interval(&iv(2.0, 2.0), s);
        assert_eq!(x.center(), 2.0);
        assert!(x.terms().is_empty());
        let x = AffineForm::from_interval(&iv(-1.0, 3.0), s);
        assert_eq!(x.center(), 1.0);
        assert_eq!(x.coefficient(s), 2.0);
    }

    #[test]
    fn to_interval_sums_radii() {
        let x = AffineForm::from_interval(&iv(0.0, 1.0), SymbolId(0));
        assert_eq!(x.to_interval().unwrap(), iv(0.0, 1.0));
        let f = AffineForm {
            center: 0.0,
            terms: vec![(SymbolId(0), 0.3), (SymbolId(1), 0.2)],
            residual: 0.1,
        };
        let r = f.to_interval().unwrap();
        assert!(r.contains(-0.6) && r.contains(0.6));
        assert!(r.width() < 1.2 + 1e-15);
        assert_eq!(
            AffineForm::constant(7.0).to_interval().unwrap(),
            iv(7.0, 7.0)
        );
    }

    #[test]
    fn dependent_subtraction_cancels() {
        let x = AffineForm::from_interval(&iv(0.0, 1.0), SymbolId(0));
        let z = x.add(&x.neg()).unwrap();
        assert_eq!(z.center(), 0.0);
        assert!(z.terms().is_empty());
        assert_eq!(z.residual(), 0.0);
    }

    #[test]
    fn product_with_shared_symbol() {
        // x·(1 − x) on [0, 1]
        let x = AffineForm::from_interval(&iv(0.0, 1.0), SymbolId(0));
        let one_minus = AffineForm::constant(1.0).sub(&x).unwrap();
        let p = x.mul(&one_minus).unwrap();
        assert_eq!(p.center(), 0.25);
        assert!(p.terms().is_empty());
        assert_eq!(p.residual(), 0.25);
        assert_eq!(p.to_interval().unwrap(), iv(0.0, 0.5));
    }

    #[test]
    fn product_of_independent_forms() {
        let x = AffineForm::from_interval(&iv(0.0, 1.0), SymbolId(0));
        let y = AffineForm::from_interval(&iv(0.0, 1.0), SymbolId(1));
        let p = affine_arith(&x, &y, ArithOp::Mul).unwrap();
        // 0.25 + 0.25 e0 + 0.25 e1 + residual 0.25
        assert_eq!(p.center(), 0.25);
        assert_eq!(p.residual(), 0.25);
        assert_eq!(p.to_interval().unwrap(), iv(-0.5, 1.0));
        let interval = iv(0.0, 1.0).mul(&iv(0.0, 1.0)).unwrap();
        assert!(interval.is_subset_of(&p.to_interval().unwrap()));
    }

    #[test]
    fn division_through_zero_is_an_error() {
        let x = AffineForm::from_interval(&iv(1.0, 2.0), SymbolId(0));
        let y = AffineForm::from_interval(&iv(-1.0, 1.0), SymbolId(1));
        assert!(x.div(&y).is_err());
    }

    #[test]
    fn division_contains_true_quotients() {
        let x = AffineForm::from_interval(&iv(1.0, 2.0), SymbolId(0));
        let y = AffineForm::from_interval(&iv(2.0, 4.0), SymbolId(1));
        let q = x.div(&y).unwrap().to_interval().unwrap();
        for a in sample(1.0, 2.0, 50) {
            for b in sample(2.0, 4.0, 50) {
                assert!(q.contains(a / b), "{a}/{b} outside {q}");
            }
        }
        // x / x shares the symbol
        let r = x.div(&x).unwrap().to_interval().unwrap();
        assert!(r.contains(1.0));
    }

    #[test]
    fn exp_of_degenerate_form() {
        let c = AffineForm::constant(0.3);
        let e = c
            .elementary(Elementary::Exp)
            .unwrap()
            .to_interval()
            .unwrap();
        assert!(e.contains(0.3f64.exp()));
        assert!(e.width() < 1e-15);
    }

    #[test]
    fn sqrt_chebyshev() {
        let x = AffineForm::from_interval(&iv(1.0, 4.0), SymbolId(0));
        let s = x.elementary(Elementary::Sqrt).unwrap();
        // secant slope 1/3 over [1, 4]; remainder in [2/3, 3/4]
        assert!((s.coefficient(SymbolId(0)) - 0.5).abs() < 1e-15);
        assert!((s.residual() - 1.0 / 24.0).abs() < 1e-12);
        let r = s.to_interval().unwrap();
        for t in sample(1.0, 4.0, 10_000) {
            assert!(r.contains(t.sqrt()));
        }
    }

    #[test]
    fn chebyshev_remainders_enclose_the_function() {
        let cases: [(Elementary, f64, f64); 9] = [
            (Elementary::Exp, -2.0, 1.5),
            (Elementary::Log, 0.1, 3.0),
            (Elementary::Sin, 0.2, 2.9),
            (Elementary::Sin, -2.5, -0.3),
            (Elementary::Cos, -1.2, 1.3),
            (Elementary::Cos, 2.0, 4.0),
            (Elementary::PowInt(3), -1.5, -0.2),
            (Elementary::PowInt(-2), 0.5, 2.0),
            (Elementary::PowReal(1.5), 0.0, 2.0),
        ];
        for (f, lo, hi) in cases {
            let x = AffineForm::from_interval(&iv(lo, hi), SymbolId(0));
            let y = x.elementary(f).unwrap();
            let (c, a, r) = (y.center(), y.coefficient(SymbolId(0)), y.residual());
            for t in sample(lo, hi, 10_000) {
                let e = ((t - x.center()) / x.coefficient(SymbolId(0))).clamp(-1.0, 1.0);
                let exact = crate::interval::elementary(&Interval::point(t).unwrap(), f).unwrap();
                let approx = c + a * e;
                assert!(
                    (exact.mid() - approx).abs() <= r + 1e-12,
                    "{f:?} at {t}: {} vs {approx} ± {r}",
                    exact.mid()
                );
            }
        }
    }

    #[test]
    fn cos_near_zero() {
        let x = AffineForm::from_interval(&iv(-0.1, 0.1), SymbolId(0));
        let r = x
            .elementary(Elementary::Cos)
            .unwrap()
            .to_interval()
            .unwrap();
        for t in sample(-0.1, 0.1, 10_000) {
            assert!(r.contains(t.cos()));
        }
        assert!(r.lo() > 0.98 && r.hi() < 1.02);
    }

    #[test]
    fn even_power_across_zero() {
        let x = AffineForm::from_interval(&iv(-1.0, 2.0), SymbolId(0));
        let r = x
            .elementary(Elementary::PowInt(2))
            .unwrap()
            .to_interval()
            .unwrap();
        for t in sample(-1.0, 2.0, 10_000) {
            assert!(r.contains(t * t));
        }
        let x = AffineForm::from_interval(&iv(-1.0, 1.0), SymbolId(0));
        let r = x
            .elementary(Elementary::PowInt(4))
            .unwrap()
            .to_interval()
            .unwrap();
        for t in sample(-1.0, 1.0, 10_000) {
            assert!(r.contains(t.powi(4)));
        }
    }

    #[test]
    fn abs_across_zero() {
        let x = AffineForm::from_interval(&iv(-1.0, 3.0), SymbolId(0));
        let r = x
            .elementary(Elementary::Abs)
            .unwrap()
            .to_interval()
            .unwrap();
        for t in sample(-1.0, 3.0, 1000) {
            assert!(r.contains(t.abs()));
        }
    }

    #[test]
    fn domain_errors_propagate() {
        let x = AffineForm::from_interval(&iv(-1.0, 1.0), SymbolId(0));
        assert!(x.elementary(Elementary::Log).is_err());
        assert!(x.elementary(Elementary::Sqrt).is_err());
    }

    #[test]
    fn allocator_hands_out_distinct_symbols() {
        let mut alloc = SymbolAllocator::new();
        let a = alloc.fresh();
        let b = alloc.fresh();
        assert_ne!(a, b);
    }
}
