//! Directed rounding on top of round-to-nearest hardware.
//!
//! The error of each primitive is recovered exactly with an error-free
//! transformation (`two_sum`, fused multiply-add). The result is moved one
//! ulp only in the direction where the exact value actually lies, so exact
//! operations stay exact and inexact ones are enclosed.

/// Below this magnitude the fma-based error terms can themselves underflow,
/// so results are always widened.
const TINY: f64 = 1.0e-290;

#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
pub(crate) fn add_down(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        return s;
    }
    if e < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        return s;
    }
    if e > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub(crate) fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

/// Exact rounding error of `a * b`, `None` when it cannot be trusted.
#[inline]
fn mul_err(a: f64, b: f64, p: f64) -> Option<f64> {
    if !p.is_finite() {
        return None;
    }
    if p == 0.0 {
        return if a == 0.0 || b == 0.0 {
            Some(0.0)
        } else {
            None
        };
    }
    if p.abs() < TINY {
        return None;
    }
    Some(a.mul_add(b, -p))
}

#[inline]
pub(crate) fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    match mul_err(a, b, p) {
        Some(e) if e >= 0.0 => p,
        Some(_) => p.next_down(),
        None if p.is_finite() => p.next_down(),
        None => p,
    }
}

#[inline]
pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    match mul_err(a, b, p) {
        Some(e) if e <= 0.0 => p,
        Some(_) => p.next_up(),
        None if p.is_finite() => p.next_up(),
        None => p,
    }
}

/// Sign of `a / b - fl(a / b)`: `Some(0)` when exact.
#[inline]
fn div_direction(a: f64, b: f64, q: f64) -> Option<i8> {
    if !q.is_finite() {
        return None;
    }
    if q == 0.0 {
        return if a == 0.0 { Some(0) } else { None };
    }
    if q.abs() < TINY || a.abs() < TINY {
        return None;
    }
    // r = a - q*b exactly; a/b - q = r / b
    let r = (-q).mul_add(b, a);
    let s = if r == 0.0 {
        0
    } else if (r > 0.0) == (b > 0.0) {
        1
    } else {
        -1
    };
    Some(s)
}

#[inline]
pub(crate) fn div_down(a: f64, b: f64) -> f64 {
    let q = a / b;
    match div_direction(a, b, q) {
        Some(d) if d >= 0 => q,
        _ if q.is_finite() => q.next_down(),
        _ => q,
    }
}

#[inline]
pub(crate) fn div_up(a: f64, b: f64) -> f64 {
    let q = a / b;
    match div_direction(a, b, q) {
        Some(d) if d <= 0 => q,
        _ if q.is_finite() => q.next_up(),
        _ => q,
    }
}

#[inline]
pub(crate) fn sqrt_down(x: f64) -> f64 {
    let s = x.sqrt();
    if s == 0.0 {
        return s;
    }
    let r = (-s).mul_add(s, x);
    if r < 0.0 || x < TINY {
        s.next_down().max(0.0)
    } else {
        s
    }
}

#[inline]
pub(crate) fn sqrt_up(x: f64) -> f64 {
    let s = x.sqrt();
    if s == 0.0 {
        return s;
    }
    let r = (-s).mul_add(s, x);
    if r > 0.0 || x < TINY {
        s.next_up()
    } else {
        s
    }
}

/// One ulp below a libm result.
#[inline]
pub(crate) fn widen_down(x: f64) -> f64 {
    if x.is_finite() {
        x.next_down()
    } else {
        x
    }
}

/// One ulp above a libm result.
#[inline]
pub(crate) fn widen_up(x: f64) -> f64 {
    if x.is_finite() {
        x.next_up()
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_operations_are_not_widened() {
        assert_eq!(add_down(1.0, 2.0), 3.0);
        assert_eq!(add_up(1.0, 2.0), 3.0);
        assert_eq!(sub_down(1.0, 1.0), 0.0);
        assert_eq!(mul_up(0.5, 0.25), 0.125);
        assert_eq!(div_down(1.0, 4.0), 0.25);
        assert_eq!(sqrt_up(4.0), 2.0);
        assert_eq!(sqrt_down(0.0), 0.0);
    }

    #[test]
    fn inexact_operations_bracket_the_exact_value() {
        let lo = div_down(1.0, 3.0);
        let hi = div_up(1.0, 3.0);
        assert!(lo < hi);
        assert_eq!(lo.next_up(), hi);
        // 3 * lo < 1 < 3 * hi in exact arithmetic
        assert!(3.0f64.mul_add(lo, -1.0) < 0.0);
        assert!(3.0f64.mul_add(hi, -1.0) > 0.0);

        let lo = add_down(1.0, 1e-17);
        let hi = add_up(1.0, 1e-17);
        assert_eq!(lo, 1.0);
        assert_eq!(hi, 1.0f64.next_up());

        let lo = mul_down(0.1, 0.1);
        let hi = mul_up(0.1, 0.1);
        assert!(0.1f64.mul_add(0.1, -lo) >= 0.0);
        assert!(0.1f64.mul_add(0.1, -hi) <= 0.0);

        let lo = sqrt_down(2.0);
        let hi = sqrt_up(2.0);
        assert!(lo * lo <= 2.0 || lo.mul_add(lo, -2.0) <= 0.0);
        assert!(hi.mul_add(hi, -2.0) >= 0.0);
    }

    #[test]
    fn negative_divisor_direction() {
        let lo = div_down(1.0, -3.0);
        let hi = div_up(1.0, -3.0);
        assert!(lo < hi);
        assert!((-3.0f64).mul_add(lo, -1.0) > 0.0);
        assert!((-3.0f64).mul_add(hi, -1.0) < 0.0);
    }
}
