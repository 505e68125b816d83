//! Range enclosures of a single expression over a box: natural, mean value
//! and affine extensions, and their refinements over uniform grids.

use crate::boxes::IntervalBox;
use crate::expr::{DerivativeMode, EvalError, Expr};
use crate::interval::{uniform_subdivide, Interval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtensionKind {
    Natural,
    MeanValue,
    Affine,
}

impl ExtensionKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExtensionKind::Natural => "natural",
            ExtensionKind::MeanValue => "mean",
            ExtensionKind::Affine => "affine",
        }
    }
}

/// `f(m) + Σ ∂f/∂x_i(X) · (X_i − m_i)` with `m` the box center.
///
/// Degenerate coordinates contribute nothing and are not differentiated.
pub fn mean_value(e: &Expr, b: &IntervalBox, mode: DerivativeMode) -> Result<Interval, EvalError> {
    let m = b.center();
    let mut acc = e.eval_interval(&IntervalBox::from_point(&m)?)?;
    for (i, (x, &mi)) in b.dims().iter().zip(&m).enumerate() {
        if x.is_degenerate() {
            continue;
        }
        let d = e.eval_derivative(b, i, mode)?;
        let offset = x.sub(&Interval::point(mi)?)?;
        acc = acc.add(&d.mul(&offset)?)?;
    }
    Ok(acc)
}

/// Cells of the grid with `n` uniform cells along every non-degenerate
/// coordinate, in lexicographic order with the first coordinate slowest.
pub fn grid(b: &IntervalBox, n: usize) -> Vec<IntervalBox> {
    let axes: Vec<Vec<Interval>> = b
        .dims()
        .iter()
        .map(|d| {
            if d.is_degenerate() {
                vec![*d]
            } else {
                uniform_subdivide(d, n.max(1))
            }
        })
        .collect();
    let mut cells = vec![Vec::with_capacity(axes.len())];
    for axis in &axes {
        cells = cells
            .into_iter()
            .flat_map(|prefix: Vec<Interval>| {
                axis.iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push(*c);
                    next
                })
            })
            .collect();
    }
    cells
        .into_iter()
        .map(|dims| IntervalBox::new(dims).expect("grid of a non-empty box"))
        .collect()
}

fn refine_with(
    b: &IntervalBox,
    n: usize,
    mut eval: impl FnMut(&IntervalBox) -> Result<Interval, EvalError>,
) -> Result<Interval, EvalError> {
    let mut hull: Option<Interval> = None;
    for cell in grid(b, n) {
        let y = eval(&cell)?;
        hull = Some(match hull {
            None => y,
            Some(h) => h.hull(&y),
        });
    }
    Ok(hull.expect("grid is non-empty"))
}

/// Hull of the mean value form over the refinement grid.
pub fn mean_value_refinement(
    e: &Expr,
    b: &IntervalBox,
    n: usize,
    mode: DerivativeMode,
) -> Result<Interval, EvalError> {
    refine_with(b, n, |cell| mean_value(e, cell, mode))
}

/// Hull of the affine extension over the refinement grid.
pub fn affine_refinement(e: &Expr, b: &IntervalBox, n: usize) -> Result<Interval, EvalError> {
    refine_with(b, n, |cell| e.eval_affine(cell))
}

/// Hull of the natural extension over the refinement grid.
pub fn natural_refinement(e: &Expr, b: &IntervalBox, n: usize) -> Result<Interval, EvalError> {
    refine_with(b, n, |cell| e.eval_interval(cell))
}

pub fn refinement(
    kind: ExtensionKind,
    e: &Expr,
    b: &IntervalBox,
    n: usize,
    mode: DerivativeMode,
) -> Result<Interval, EvalError> {
    match kind {
        ExtensionKind::Natural => natural_refinement(e, b, n),
        ExtensionKind::MeanValue => mean_value_refinement(e, b, n, mode),
        ExtensionKind::Affine => affine_refinement(e, b, n),
    }
}
