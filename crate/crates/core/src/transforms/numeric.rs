//! Numeric transforms of an arbitrary convex `f` given as a closure.
//!
//! The inner supremum runs over a log-spaced grid of `y`, then a golden-section
//! refinement around the best cell. `(xy − 1)/f(y)` is quasi-concave where it
//! is positive, so the refinement bracket contains the maximizer.

use crate::error::{Error, Result};
use crate::pl::ExtValue;

#[derive(Clone, Debug, PartialEq)]
pub struct NumericPolarOptions {
    /// `log10` of the smallest and largest grid abscissa.
    pub y_grid_decades: (f64, f64),
    pub points_per_decade: usize,
    /// Relative width at which golden-section refinement stops.
    pub refine_tolerance: f64,
    pub max_iterations: usize,
}

impl Default for NumericPolarOptions {
    fn default() -> Self {
        Self {
            y_grid_decades: (-8.0, 12.0),
            points_per_decade: 64,
            refine_tolerance: 1e-10,
            max_iterations: 200,
        }
    }
}

impl NumericPolarOptions {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.y_grid_decades;
        if !(self.refine_tolerance > 0.0 && self.refine_tolerance < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "refine tolerance must be in (0, 1), got {}",
                self.refine_tolerance
            )));
        }
        if !(lo <= -6.0 && hi >= 6.0) {
            return Err(Error::InvalidArgument(format!(
                "y grid must cover [1e-6, 1e6], got decades [{lo}, {hi}]"
            )));
        }
        if self.points_per_decade == 0 || self.max_iterations == 0 {
            return Err(Error::InvalidArgument(
                "grid density and iteration budget must be positive".into(),
            ));
        }
        Ok(())
    }

    fn grid(&self) -> Vec<f64> {
        let (lo, hi) = self.y_grid_decades;
        let n = ((hi - lo) * self.points_per_decade as f64).ceil() as usize;
        (0..=n)
            .map(|k| 10f64.powf(lo + (hi - lo) * k as f64 / n as f64))
            .collect()
    }
}

/// Maximizes `h` on `[a, b]`; `None` values count as `−∞`.
fn golden_max(
    h: &dyn Fn(f64) -> Option<f64>,
    mut a: f64,
    mut b: f64,
    tol: f64,
    max_iter: usize,
) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let val = |y: f64| h(y).unwrap_or(f64::NEG_INFINITY);
    let mut best = val(a).max(val(b));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (val(c), val(d));
    for _ in 0..max_iter {
        best = best.max(fc).max(fd);
        if (b - a) <= tol * 0.5 * (a.abs() + b.abs()) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = val(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = val(d);
        }
    }
    best.max(fc).max(fd)
}

fn grid_then_refine(
    h: &dyn Fn(f64) -> Option<f64>,
    ys: &[f64],
    opts: &NumericPolarOptions,
) -> Option<f64> {
    let vals: Vec<f64> = ys
        .iter()
        .map(|&y| h(y).unwrap_or(f64::NEG_INFINITY))
        .collect();
    let (k, &best) = vals
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))?;
    if best == f64::NEG_INFINITY {
        return None;
    }
    let a = ys[k.saturating_sub(1)];
    let b = ys[(k + 1).min(ys.len() - 1)];
    let refined = golden_max(h, a, b, opts.refine_tolerance, opts.max_iterations);
    Some(best.max(refined))
}

/// Numeric `φ°(x)`; a lower bound of the true value up to rounding.
pub fn polar_numeric_1d(
    f: &dyn Fn(f64) -> f64,
    x: f64,
    opts: &NumericPolarOptions,
) -> Result<ExtValue<f64>> {
    opts.validate()?;
    if !(x >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "evaluation point must be nonnegative, got {x}"
        )));
    }
    let ys = opts.grid();
    for &y in &ys {
        if f(y) <= 0.0 && x * y > 1.0 {
            return Ok(ExtValue::Infinite);
        }
    }
    let h = |y: f64| {
        let v = f(y);
        (v > 0.0 && v.is_finite()).then(|| x.mul_add(y, -1.0) / v)
    };
    // Skipped y (f infinite) contribute 0 through the ±/∞ convention.
    let sup = grid_then_refine(&h, &ys, opts).unwrap_or(0.0).max(0.0);
    Ok(ExtValue::Finite(sup))
}

/// Numeric conjugate `sup_{y≥0} (xy − f(y))` on the ray.
pub fn legendre_numeric_1d(
    f: &dyn Fn(f64) -> f64,
    x: f64,
    opts: &NumericPolarOptions,
) -> Result<ExtValue<f64>> {
    opts.validate()?;
    if !(x >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "evaluation point must be nonnegative, got {x}"
        )));
    }
    let ys = opts.grid();
    let h = |y: f64| {
        let v = f(y);
        v.is_finite().then_some(x * y - v)
    };
    let sup = grid_then_refine(&h, &ys, opts).unwrap_or(0.0).max(0.0);
    if !sup.is_finite() {
        return Ok(ExtValue::Infinite);
    }
    // Unbounded growth (x above the recession slope) shows as the best value
    // sitting at the far end of the grid and still increasing.
    let n = ys.len();
    let last = h(ys[n - 1]).unwrap_or(f64::NEG_INFINITY);
    let prev = h(ys[n - 2]).unwrap_or(f64::NEG_INFINITY);
    if last >= sup && last > prev && last > 1e6 {
        return Ok(ExtValue::Infinite);
    }
    Ok(ExtValue::Finite(sup))
}
