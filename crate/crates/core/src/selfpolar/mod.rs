//! Self-polar functions on the ray.
//!
//! `F(x) = sqrt(x² − 1)` on `[1, ∞)` is the reference curve: a function is
//! self-polar iff it touches `F` from above at some `q ∈ [1, ∞]` and equals
//! its own polar beyond `q`. This module classifies the contact point,
//! builds the envelope pair bounding each contact class, splices a member of
//! a class with its polar, and checks self-polarity.

mod family;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::pl::{compare, join, meet, sup_gap, ExtValue, PLFunction, Tail};
use crate::scalar::Scalar;
use crate::transforms::{polar_numeric_1d, polar_pl, NumericPolarOptions};

pub use family::PhiP;

/// Default relative tolerance of [`classify`].
pub const DEFAULT_TAU: f64 = 1e-9;

/// `F(x)` and `F'(x)`; the slope is infinite at `x = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint<S> {
    pub value: S,
    pub slope: ExtValue<S>,
}

pub fn curve_f<S: Scalar>(x: &S) -> Result<CurvePoint<S>> {
    if *x < S::one() {
        return Err(Error::InvalidArgument(format!("F is defined for x >= 1, got {x}")));
    }
    let sq = x.clone() * x.clone() - S::one();
    let value = sq
        .sqrt()
        .ok_or_else(|| Error::Inexact(format!("sqrt({x}^2 - 1)")))?;
    let slope = if value.is_zero() {
        ExtValue::Infinite
    } else {
        ExtValue::Finite(x.clone() / value.clone())
    };
    Ok(CurvePoint { value, slope })
}

/// Float shorthand: `(F(x), F'(x))`.
pub fn curve_f64(x: f64) -> Result<(f64, f64)> {
    let c = curve_f(&x)?;
    Ok((c.value, c.slope.to_f64()))
}

/// The tangent to `F` at `q` meets the x-axis at `1/q`.
pub fn tangent_root<S: Scalar>(q: &S) -> Result<S> {
    let c = curve_f(q)?;
    match c.slope {
        ExtValue::Finite(s) => Ok(q.clone() - c.value / s),
        ExtValue::Infinite => Ok(q.clone()),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TangencyClass<S> {
    NotTangent { min_gap: f64, argmin: f64 },
    Finite { q: S, contact_value: S },
    AtOne,
    AtInfinity,
}

impl<S: Scalar> TangencyClass<S> {
    pub fn q_f64(&self) -> Option<f64> {
        match self {
            TangencyClass::Finite { q, .. } => Some(q.to_f64()),
            TangencyClass::AtOne => Some(1.0),
            TangencyClass::AtInfinity => Some(f64::INFINITY),
            TangencyClass::NotTangent { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Locus {
    Breakpoint(usize),
    /// Interior stationary point of the gap on the piece starting at this
    /// breakpoint (the last index means the tail).
    Stationary(usize),
    Start,
    Infinity,
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    x: f64,
    gap: f64,
    locus: Locus,
}

/// Tolerance scaled to the magnitude of `F`.
fn scaled(tau: f64, x: f64) -> f64 {
    tau * (1.0 + if x.is_finite() && x > 1.0 { (x * x - 1.0).sqrt() } else { 0.0 })
}

/// Minimum of the convex gap `φ − F` on `[1, domain end]` by closed-form
/// stationarity per linear piece (`s·sqrt(x² − 1) = x`). `None` when the
/// domain ends before 1.
fn gap_minimum<S: Scalar>(f: &PLFunction<S>) -> Result<Option<Candidate>> {
    let ff = f.to_float();
    let bp = ff.breakpoints();
    let end = ff.domain_end().to_f64();
    if end < 1.0 {
        return Ok(None);
    }
    let gap = |x: f64| ff.eval_f64(x) - (x * x - 1.0).max(0.0).sqrt();
    let stationary = |s: f64| (s > 1.0).then(|| s / (s * s - 1.0).sqrt());

    let mut cands = vec![Candidate {
        x: 1.0,
        gap: gap(1.0),
        locus: Locus::Start,
    }];
    for (i, &(x, _)) in bp.iter().enumerate() {
        if x >= 1.0 {
            cands.push(Candidate {
                x,
                gap: gap(x),
                locus: Locus::Breakpoint(i),
            });
        }
    }
    for (i, w) in bp.windows(2).enumerate() {
        let s = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
        if let Some(xs) = stationary(s) {
            if xs > w[0].0.max(1.0) && xs < w[1].0 {
                cands.push(Candidate {
                    x: xs,
                    gap: gap(xs),
                    locus: Locus::Stationary(i),
                });
            }
        }
    }
    if let Tail::Slope(s) = ff.tail() {
        let (lx, lv) = *ff.last();
        let m = bp.len() - 1;
        if s.eq_tol(&1.0) {
            cands.push(Candidate {
                x: f64::INFINITY,
                gap: lv - lx,
                locus: Locus::Infinity,
            });
        } else if *s < 1.0 {
            cands.push(Candidate {
                x: f64::INFINITY,
                gap: f64::NEG_INFINITY,
                locus: Locus::Infinity,
            });
        } else if let Some(xs) = stationary(*s) {
            if xs > lx.max(1.0) {
                cands.push(Candidate {
                    x: xs,
                    gap: gap(xs),
                    locus: Locus::Stationary(m),
                });
            }
        }
    }
    if S::tol() == 0.0 {
        // Float rounding must not flip the sign at an exact contact.
        for c in &mut cands {
            match exact_sign(f, c) {
                Some(Ordering::Equal) => c.gap = 0.0,
                Some(Ordering::Less) if c.gap >= 0.0 => c.gap = -f64::MIN_POSITIVE,
                Some(Ordering::Greater) if c.gap <= 0.0 => c.gap = f64::MIN_POSITIVE,
                _ => {}
            }
        }
        // A stationary point computed in floats may duplicate a contact
        // breakpoint up to rounding.
        let mut contacts = cands.iter().filter(|c| c.gap == 0.0).map(|c| c.x);
        if let Some(first) = contacts.next() {
            let same = |x: f64| x == first || (x - first).abs() <= 1e-9 * (1.0 + first.abs());
            if let Some(other) = contacts.find(|&x| !same(x)) {
                return Err(Error::Malformed(format!(
                    "two exact contact points with F, at {first} and {other}"
                )));
            }
        }
    }
    Ok(cands.into_iter().min_by(|a, b| a.gap.total_cmp(&b.gap)))
}

/// Exact sign of `φ − F` at a candidate, from `φ(x) ≥ F(x) ⟺ φ(x)² ≥ x² − 1`
/// (both sides are nonnegative) and, at the stationary point of a piece
/// `a + s·x`, from the gap `a + sqrt(s² − 1)`.
fn exact_sign<S: Scalar>(f: &PLFunction<S>, c: &Candidate) -> Option<Ordering> {
    let bp = f.breakpoints();
    let sign = |x: &S| x.partial_cmp(&S::zero());
    match c.locus {
        Locus::Start => match f.eval(&S::one()).ok()? {
            ExtValue::Finite(v) => sign(&v),
            ExtValue::Infinite => Some(Ordering::Greater),
        },
        Locus::Breakpoint(i) => {
            let (x, v) = &bp[i];
            (v.clone() * v.clone()).partial_cmp(&(x.clone() * x.clone() - S::one()))
        }
        Locus::Stationary(i) => {
            let s = if i + 1 < bp.len() {
                (bp[i + 1].1.clone() - bp[i].1.clone()) / (bp[i + 1].0.clone() - bp[i].0.clone())
            } else {
                f.tail().slope()?.clone()
            };
            let a = bp[i].1.clone() - s.clone() * bp[i].0.clone();
            if !a.lt0() {
                return Some(Ordering::Greater);
            }
            (s.clone() * s - S::one()).partial_cmp(&(a.clone() * a))
        }
        Locus::Infinity => {
            let s = f.tail().slope()?;
            match s.partial_cmp(&S::one())? {
                Ordering::Less => return Some(Ordering::Less),
                Ordering::Greater => return Some(Ordering::Greater),
                Ordering::Equal => {}
            }
            let (x, v) = f.last();
            sign(&(v.clone() - x.clone()))
        }
    }
}

/// Determines which contact class `T_q` (if any) the function belongs to.
///
/// A function dipping below `F` by more than `tau` is rejected with
/// [`Error::BelowCurve`]. In exact mode the contact point is exact whenever it
/// is a breakpoint or a stationary point with rational square root.
pub fn classify<S: Scalar>(f: &PLFunction<S>, tau: f64) -> Result<TangencyClass<S>> {
    let Some(c) = gap_minimum(f)? else {
        return Ok(TangencyClass::NotTangent {
            min_gap: f64::INFINITY,
            argmin: 1.0,
        });
    };
    let tol = scaled(tau, c.x);
    if c.gap < -tol {
        return Err(Error::BelowCurve { gap: c.gap, at: c.x });
    }
    if c.gap > tol {
        return Ok(TangencyClass::NotTangent {
            min_gap: c.gap,
            argmin: c.x,
        });
    }
    match c.locus {
        Locus::Infinity => Ok(TangencyClass::AtInfinity),
        Locus::Start => Ok(TangencyClass::AtOne),
        Locus::Breakpoint(i) => {
            let (q, v) = f.breakpoints()[i].clone();
            if q == S::one() {
                return Ok(TangencyClass::AtOne);
            }
            Ok(TangencyClass::Finite { q, contact_value: v })
        }
        Locus::Stationary(i) => {
            let bp = f.breakpoints();
            let s = if i + 1 < bp.len() {
                (bp[i + 1].1.clone() - bp[i].1.clone()) / (bp[i + 1].0.clone() - bp[i].0.clone())
            } else {
                f.tail().slope().cloned().expect("stationary tail has a slope")
            };
            let q = match (s.clone() * s.clone() - S::one()).sqrt() {
                Some(r) if S::tol() == 0.0 => s / r,
                _ => S::from_f64(c.x).ok_or_else(|| Error::Inexact(c.x.to_string()))?,
            };
            let contact_value = f
                .eval(&q)?
                .finite()
                .cloned()
                .ok_or_else(|| Error::Malformed("contact outside domain".into()))?;
            Ok(TangencyClass::Finite { q, contact_value })
        }
    }
}

/// `(ψ_L, ψ_U)`: the least and greatest members of `T_q`.
pub fn envelopes<S: Scalar>(q: &S) -> Result<(PLFunction<S>, PLFunction<S>)> {
    if *q <= S::one() {
        return Err(Error::InvalidArgument(format!(
            "envelopes need 1 < q < inf, got {q}"
        )));
    }
    let c = curve_f(q)?;
    let slope = c.slope.finite().cloned().expect("q > 1");
    let lower = meet(
        &PLFunction::indicator(S::one() / q.clone())?,
        &PLFunction::line(slope)?,
    );
    let upper = join(
        &PLFunction::indicator(q.clone())?,
        &PLFunction::line(c.value / q.clone())?,
    );
    Ok((lower, upper))
}

/// `φ ∈ T_q` iff `ψ_L ≤ φ ≤ ψ_U`.
pub fn in_class<S: Scalar>(f: &PLFunction<S>, q: &S) -> Result<bool> {
    let (lo, hi) = envelopes(q)?;
    Ok(compare(&lo, f).is_le() && compare(f, &hi).is_le())
}

/// `φ` on `[0, q]` glued to `φ°` on `[q, ∞)`, with the contact point kept as
/// an explicit breakpoint. Singleton classes are returned unchanged.
pub fn splice<S: Scalar>(f: &PLFunction<S>, tau: f64) -> Result<PLFunction<S>> {
    match classify(f, tau)? {
        TangencyClass::AtOne | TangencyClass::AtInfinity => Ok(f.clone()),
        TangencyClass::NotTangent { min_gap, argmin } => Err(Error::NotTangent { min_gap, argmin }),
        TangencyClass::Finite { q, contact_value } => Ok(splice_at(f, &q, contact_value)),
    }
}

/// Splice at a known contact point.
pub fn splice_at<S: Scalar>(f: &PLFunction<S>, q: &S, contact_value: S) -> PLFunction<S> {
    let polar = polar_pl(f);
    let mut points: Vec<(S, S)> = f
        .breakpoints()
        .iter()
        .filter(|(x, _)| x < q)
        .cloned()
        .collect();
    points.push((q.clone(), contact_value));
    points.extend(polar.breakpoints().iter().filter(|(x, _)| x > q).cloned());
    PLFunction::new(points, polar.tail().clone())
        .expect("both pieces are tangent to F at q, so the splice is convex")
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelfPolarVerdict {
    pub is_self_polar: bool,
    pub sup_gap: f64,
    pub witness: f64,
    pub exact: bool,
    /// Necessary condition `φ ≥ F` on `[1, ∞)`.
    pub above_curve: bool,
}

/// Exact canonical comparison of `φ` and `φ°` in rational mode, sup-gap within
/// `tau` in float mode.
pub fn is_self_polar<S: Scalar>(f: &PLFunction<S>, tau: f64) -> Result<SelfPolarVerdict> {
    let polar = polar_pl(f);
    let gap = sup_gap(f, &polar)?;
    let exact = S::tol() == 0.0;
    let is_self_polar = if exact { polar == *f } else { gap.value <= tau };
    let above_curve = match gap_minimum(f)? {
        Some(c) => c.gap >= -scaled(tau.max(S::tol()), c.x),
        None => true,
    };
    Ok(SelfPolarVerdict {
        is_self_polar,
        sup_gap: if exact && is_self_polar { 0.0 } else { gap.value },
        witness: gap.witness,
        exact,
        above_curve,
    })
}

/// Tolerance check for an analytic function over `[0, window]`.
pub fn is_self_polar_fn(
    f: &dyn Fn(f64) -> f64,
    window: f64,
    samples: usize,
    tau: f64,
    opts: &NumericPolarOptions,
) -> Result<SelfPolarVerdict> {
    let mut worst = (0.0f64, 0.0f64);
    let mut above_curve = true;
    for k in 0..=samples {
        let x = window * k as f64 / samples as f64;
        let fx = f(x);
        let px = polar_numeric_1d(f, x, opts)?.to_f64();
        let gap = if fx.is_finite() && px.is_finite() {
            (fx - px).abs()
        } else if fx.is_finite() != px.is_finite() {
            f64::INFINITY
        } else {
            0.0
        };
        if gap > worst.0 {
            worst = (gap, x);
        }
        if x >= 1.0 && fx < (x * x - 1.0).sqrt() - scaled(tau, x) {
            above_curve = false;
        }
    }
    Ok(SelfPolarVerdict {
        is_self_polar: worst.0 <= tau,
        sup_gap: worst.0,
        witness: worst.1,
        exact: false,
        above_curve,
    })
}
