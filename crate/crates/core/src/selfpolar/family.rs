use crate::error::{Error, Result};
use crate::pl::{PLFunction, Tail};

/// `φ_p(x) = c_p·x^p` with `c_p = sqrt((p−1)^{p−1}/p^p)`, self-polar for every
/// `p ∈ [1, ∞]`. `c_1 = 1` (continuous extension of `0⁰`); `p = ∞` is the
/// indicator of `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiP {
    p: f64,
    coefficient: f64,
}

impl PhiP {
    pub fn new(p: f64) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::InvalidArgument(format!("p must be in [1, inf], got {p}")));
        }
        let coefficient = if p.is_infinite() {
            0.0
        } else {
            // Direct powers are exact for small integer p; logs avoid overflow.
            let direct = ((p - 1.0).powf(p - 1.0) / p.powf(p)).sqrt();
            if direct.is_normal() {
                direct
            } else {
                let lead = if p == 1.0 { 0.0 } else { (p - 1.0) * (p - 1.0).ln() };
                (0.5 * (lead - p * p.ln())).exp()
            }
        };
        Ok(Self { p, coefficient })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn eval(&self, x: f64) -> f64 {
        if self.p.is_infinite() {
            return if x <= 1.0 { 0.0 } else { f64::INFINITY };
        }
        self.coefficient * x.powf(self.p)
    }

    /// Contact point with `F`: `q = sqrt(p/(p−1))` (infinite at `p = 1`).
    pub fn contact_point(&self) -> f64 {
        if self.p == 1.0 {
            f64::INFINITY
        } else if self.p.is_infinite() {
            1.0
        } else {
            (self.p / (self.p - 1.0)).sqrt()
        }
    }

    /// Secant interpolation on `knots` (0 is added if missing), `+∞` after the
    /// last knot. Secants of a convex function lie above it, so the sample is
    /// `≥ φ_p` everywhere.
    pub fn to_pl(&self, knots: &[f64]) -> Result<PLFunction<f64>> {
        if self.p == 1.0 {
            return PLFunction::line(1.0);
        }
        if self.p.is_infinite() {
            return PLFunction::indicator(1.0);
        }
        let mut xs: Vec<f64> = knots.iter().copied().filter(|x| *x > 0.0).collect();
        if xs.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("knots must be finite".into()));
        }
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let mut points = vec![(0.0, 0.0)];
        points.extend(xs.into_iter().map(|x| (x, self.eval(x))));
        PLFunction::new(points, Tail::Infinite)
    }
}
