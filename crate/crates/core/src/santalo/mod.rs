//! Integrals `∫ e^{−φ}` of radial functions on `ℝⁿ`, the product of the
//! integrals of a function and its transform, and a search over self-polar
//! functions for large products.

mod search;

use std::str::FromStr;

use serde_json::{json, Value};
use statrs::function::gamma::{gamma, gamma_lr};

use crate::pl::{ExtValue, PLFunction, Tail};
use crate::scalar::Scalar;
use crate::transforms::{
    legendre_numeric_1d, legendre_pl, polar_numeric_1d, polar_with_flags, NumericPolarOptions,
};
use crate::{Error, Result};

pub use search::{search_max, spliced_candidate, SearchResult, SearchSpec, TraceRow};

/// Relative accuracy credited to each closed-form segment.
const CLOSED_FORM_REL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub estimated_error: f64,
    pub segments: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Polar,
    Legendre,
}

impl FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polar" => Ok(Self::Polar),
            "legendre" => Ok(Self::Legendre),
            other => Err(Error::InvalidArgument(format!(
                "unknown transform {other:?} (expected polar or legendre)"
            ))),
        }
    }
}

/// Closed-form radial profiles that are not piecewise linear.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Analytic {
    /// `r ↦ c·r^p` with `c > 0`, `p ≥ 1`.
    Power { coefficient: f64, exponent: f64 },
}

impl Analytic {
    pub fn power(coefficient: f64, exponent: f64) -> Result<Self> {
        if !(coefficient > 0.0 && coefficient.is_finite() && exponent >= 1.0 && exponent.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "power profile needs c > 0 and 1 <= p < inf, got c={coefficient}, p={exponent}"
            )));
        }
        Ok(Self::Power { coefficient, exponent })
    }

    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            Self::Power { coefficient, exponent } => coefficient * r.powf(exponent),
        }
    }

    pub fn to_json(&self) -> Value {
        match *self {
            Self::Power { coefficient, exponent } => {
                json!({"type": "power", "coefficient": coefficient, "exponent": exponent})
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v.get("type").and_then(Value::as_str) {
            Some("power") => {
                let num = |key: &str| {
                    v.get(key)
                        .and_then(Value::as_f64)
                        .ok_or_else(|| Error::Malformed(format!("power profile needs numeric {key:?}")))
                };
                Self::power(num("coefficient")?, num("exponent")?)
            }
            other => Err(Error::Malformed(format!("unknown analytic profile type {other:?}"))),
        }
    }
}

/// A radial profile `ρ`, lifted to `x ↦ ρ(|x|)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Profile {
    Pl(PLFunction<f64>),
    Analytic(Analytic),
}

impl Profile {
    /// Reads either the piecewise-linear format or an analytic profile.
    pub fn from_json(v: &Value) -> Result<Self> {
        match v.get("type").and_then(Value::as_str) {
            None | Some("pl") => Ok(Self::Pl(crate::pl::from_json::<f64>(v)?)),
            Some(_) => Ok(Self::Analytic(Analytic::from_json(v)?)),
        }
    }
}

/// Surface area of the unit sphere in `ℝⁿ`, `n·κ_n`.
pub fn unit_sphere_area(n: usize) -> f64 {
    let h = n as f64 / 2.0;
    2.0 * std::f64::consts::PI.powf(h) / gamma(h)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `∫₀^L u^k e^{−b·u} du` for `b ≥ 0`.
fn moment(k: usize, b: f64, len: f64) -> f64 {
    let bl = b * len;
    if bl == 0.0 {
        return len.powi(k as i32 + 1) / (k + 1) as f64;
    }
    if bl < 0.5 {
        // Σ_m (−bL)^m / (m!·(k+1+m)); terms shrink at least geometrically.
        let mut sum = 0.0;
        let mut term = 1.0;
        for m in 0..60 {
            let t = term / (k + 1 + m) as f64;
            sum += t;
            if t.abs() < 1e-18 * sum.abs() {
                break;
            }
            term *= -bl / (m + 1) as f64;
        }
        return len.powi(k as i32 + 1) * sum;
    }
    factorial(k) / b.powi(k as i32 + 1) * gamma_lr((k + 1) as f64, bl)
}

/// `∫₀^L (a+u)^{n−1} e^{−b·u} du`, expanded binomially in `u`.
fn shifted_moment(n: usize, a: f64, b: f64, len: f64) -> f64 {
    (0..n)
        .map(|k| binomial(n - 1, k) * a.powi((n - 1 - k) as i32) * moment(k, b, len))
        .sum()
}

/// `∫₀^∞ (a+u)^{n−1} e^{−s·u} du` for `s > 0`.
fn shifted_tail(n: usize, a: f64, s: f64) -> f64 {
    (0..n)
        .map(|k| binomial(n - 1, k) * a.powi((n - 1 - k) as i32) * factorial(k) / s.powi(k as i32 + 1))
        .sum()
}

/// `∫_{ℝⁿ} e^{−ρ(|x|)} dx` in closed form, one term per linear piece.
pub fn radial_integral<S: Scalar>(rho: &PLFunction<S>, n: usize, tol: f64) -> Result<IntegralResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let rho = rho.to_float();
    if rho.has_constant_tail() {
        return Err(Error::Divergent(
            "profile is constant on an unbounded set, so e^{-rho} is not integrable".into(),
        ));
    }
    let bps = rho.breakpoints();
    let mut total = 0.0;
    let mut segments = 0;
    for w in bps.windows(2) {
        let ((x0, v0), (x1, v1)) = (w[0], w[1]);
        let len = x1 - x0;
        let b = ((v1 - v0) / len).max(0.0);
        total += (-v0).exp() * shifted_moment(n, x0, b, len);
        segments += 1;
    }
    if let Tail::Slope(s) = rho.tail() {
        let (xm, vm) = *bps.last().expect("canonical functions start at the origin");
        total += (-vm).exp() * shifted_tail(n, xm, *s);
        segments += 1;
    }
    let value = unit_sphere_area(n) * total;
    let estimated_error = value * CLOSED_FORM_REL * segments.max(1) as f64;
    if estimated_error > tol * value {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tol} is below the closed-form accuracy {CLOSED_FORM_REL}"
        )));
    }
    Ok(IntegralResult { value, estimated_error, segments })
}

/// `∫_{ℝⁿ} e^{−φ(|x|)} dx` for an evaluable profile, by double-exponential
/// quadrature on `[0, R]` (finite domain) or on `[0, 1)` through
/// `r = t/(1−t)`. Values `+∞` (or NaN) mark points outside the domain.
pub fn radial_integral_fn(phi: &dyn Fn(f64) -> f64, n: usize, tol: f64) -> Result<IntegralResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let finite = |r: f64| phi(r).is_finite();
    let integrand = |r: f64| {
        let v = phi(r);
        if v.is_finite() {
            r.powi(n as i32 - 1) * (-v).exp()
        } else {
            0.0
        }
    };
    let domain_end = find_domain_end(&finite);
    if domain_end.is_none() && phi(1e8) <= 1e-6 {
        return Err(Error::Divergent("profile stays near 0 far from the origin".into()));
    }
    let mapped = |t: f64| {
        let s = 1.0 - t;
        integrand(t / s) / (s * s)
    };
    let run = |target: f64| match domain_end {
        Some(r_end) => bisecting(&integrand, 0.0, r_end, target, 24),
        None => bisecting(&mapped, 0.0, 1.0, target, 24),
    };
    let (rough, _, _) = run(1e-6);
    let (value, error, pieces) = run((tol * rough.abs()).max(1e-300));
    let area = unit_sphere_area(n);
    Ok(IntegralResult {
        value: area * value,
        estimated_error: area * error,
        segments: pieces,
    })
}

/// Double-exponential quadrature, halving the interval wherever the error
/// estimate misses its share of the target (kinks slow the rule down).
/// Returns `(integral, error estimate, pieces)`.
fn bisecting(f: &dyn Fn(f64) -> f64, a: f64, b: f64, target: f64, depth: u32) -> (f64, f64, usize) {
    let out = quadrature::integrate(f, a, b, target);
    if out.error_estimate <= target || depth == 0 {
        return (out.integral, out.error_estimate, 1);
    }
    let m = 0.5 * (a + b);
    let (li, le, lp) = bisecting(f, a, m, 0.5 * target, depth - 1);
    let (ri, re, rp) = bisecting(f, m, b, 0.5 * target, depth - 1);
    (li + ri, le + re, lp + rp)
}

/// Radius beyond which `phi` is infinite, if that happens before `1e8`.
fn find_domain_end(finite: &dyn Fn(f64) -> bool) -> Option<f64> {
    let mut hi = 1e-6;
    while finite(hi) {
        hi *= 2.0;
        if hi > 1e8 {
            return None;
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if finite(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
    }
    Some(lo)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductResult {
    pub product: f64,
    pub primal: IntegralResult,
    pub dual: IntegralResult,
}

/// `∫ e^{−φ} · ∫ e^{−Tφ}` for a radial `φ` and `T` the polar or Legendre
/// transform. Piecewise-linear profiles are transformed exactly; analytic
/// ones numerically at every quadrature node.
pub fn santalo_product(profile: &Profile, transform: Transform, n: usize, tol: f64) -> Result<ProductResult> {
    match profile {
        Profile::Pl(rho) => santalo_product_pl(rho, transform, n, tol),
        Profile::Analytic(a) => santalo_product_fn(&|r| a.eval(r), transform, n, tol),
    }
}

pub fn santalo_product_pl<S: Scalar>(
    rho: &PLFunction<S>,
    transform: Transform,
    n: usize,
    tol: f64,
) -> Result<ProductResult> {
    let primal = radial_integral(rho, n, tol)?;
    let dual_fn = match transform {
        Transform::Polar => {
            let out = polar_with_flags(rho);
            if out.degenerate {
                return Err(Error::Divergent("constant tail: polar integral degenerates".into()));
            }
            out.function
        }
        Transform::Legendre => legendre_pl(rho),
    };
    let dual = radial_integral(&dual_fn, n, tol)?;
    Ok(ProductResult { product: primal.value * dual.value, primal, dual })
}

pub fn santalo_product_fn(
    phi: &dyn Fn(f64) -> f64,
    transform: Transform,
    n: usize,
    tol: f64,
) -> Result<ProductResult> {
    let primal = radial_integral_fn(phi, n, tol)?;
    let opts = NumericPolarOptions::default();
    let dual_at = |r: f64| {
        let v = match transform {
            Transform::Polar => polar_numeric_1d(phi, r, &opts),
            Transform::Legendre => legendre_numeric_1d(phi, r, &opts),
        };
        match v {
            Ok(ExtValue::Finite(x)) => x,
            _ => f64::INFINITY,
        }
    };
    let dual = radial_integral_fn(&dual_at, n, tol)?;
    Ok(ProductResult { product: primal.value * dual.value, primal, dual })
}
