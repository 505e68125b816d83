//! Axis-aligned boxes: products of intervals, one per variable.

use std::fmt;

use crate::interval::{Interval, IntervalError};

/// An n-dimensional box `X_1 × … × X_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalBox {
    dims: Vec<Interval>,
}

/// Which of the two opposite faces normal to a coordinate axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Low,
    High,
}

impl IntervalBox {
    pub fn new(dims: Vec<Interval>) -> Result<Self, IntervalError> {
        if dims.is_empty() {
            return Err(IntervalError::EmptyBox);
        }
        Ok(IntervalBox { dims })
    }

    /// Build from `(lo, hi)` pairs.
    pub fn from_bounds(bounds: &[(f64, f64)]) -> Result<Self, IntervalError> {
        let dims = bounds
            .iter()
            .map(|&(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dims)
    }

    /// The degenerate box at a point.
    pub fn from_point(point: &[f64]) -> Result<Self, IntervalError> {
        let dims = point
            .iter()
            .map(|&x| Interval::point(x))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dims)
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[Interval] {
        &self.dims
    }

    pub fn get(&self, i: usize) -> Interval {
        self.dims[i]
    }

    /// Largest side length.
    pub fn width(&self) -> f64 {
        self.dims.iter().map(Interval::width).fold(0.0, f64::max)
    }

    /// Sum of side lengths.
    pub fn total_width(&self) -> f64 {
        self.dims.iter().map(|d| d.hi() - d.lo()).sum()
    }

    /// Coordinate-wise midpoint.
    pub fn center(&self) -> Vec<f64> {
        self.dims.iter().map(Interval::mid).collect()
    }

    pub fn contains_point(&self, p: &[f64]) -> bool {
        p.len() == self.dims.len() && self.dims.iter().zip(p).all(|(d, &x)| d.contains(x))
    }

    pub fn is_subset_of(&self, other: &IntervalBox) -> bool {
        self.dims.len() == other.dims.len()
            && self
                .dims
                .iter()
                .zip(&other.dims)
                .all(|(a, b)| a.is_subset_of(b))
    }

    /// Replace one coordinate interval.
    pub fn with_dim(&self, i: usize, value: Interval) -> IntervalBox {
        let mut dims = self.dims.clone();
        dims[i] = value;
        IntervalBox { dims }
    }

    /// The face with coordinate `i` pinned to its lower or upper endpoint.
    pub fn face(&self, i: usize, side: Side) -> IntervalBox {
        let d = self.dims[i];
        let x = match side {
            Side::Low => d.lo(),
            Side::High => d.hi(),
        };
        // endpoints of a valid interval are finite
        self.with_dim(i, Interval::point(x).expect("finite endpoint"))
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, " × ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centers() {
        let b = IntervalBox::from_bounds(&[(0.0, 1.0), (0.0, 1.0)]).unwrap();
        assert_eq!(b.center(), vec![0.5, 0.5]);
        let b = IntervalBox::from_bounds(&[(0.25, 0.25), (-3.0, -3.0)]).unwrap();
        assert_eq!(b.center(), vec![0.25, -3.0]);
        let b = IntervalBox::from_bounds(&[(0.0, 1.0), (0.5, 1.0)]).unwrap();
        assert_eq!(b.center(), vec![0.5, 0.75]);
    }

    #[test]
    fn faces_pin_one_coordinate() {
        let b = IntervalBox::from_bounds(&[(0.0, 1.0), (2.0, 3.0)]).unwrap();
        let f = b.face(1, Side::High);
        assert_eq!(f.get(0), b.get(0));
        assert!(f.get(1).is_degenerate());
        assert_eq!(f.get(1).lo(), 3.0);
        assert!(f.is_subset_of(&b));
    }

    #[test]
    fn empty_box_rejected() {
        assert!(IntervalBox::new(vec![]).is_err());
    }

    #[test]
    fn width_is_the_largest_side() {
        let b = IntervalBox::from_bounds(&[(0.0, 1.0), (0.0, 3.0)]).unwrap();
        assert_eq!(b.width(), 3.0);
        assert_eq!(b.total_width(), 4.0);
    }
}
