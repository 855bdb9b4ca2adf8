//! Piecewise-linear members of the cone of nonnegative convex lsc functions
//! on `[0, ∞)` vanishing at the origin.
//!
//! A [`PLFunction`] is stored as its breakpoints `(x_i, v_i)` starting at
//! `(0, 0)` plus a [`Tail`] describing what happens after the last breakpoint.
//! `Tail::Infinite` encodes the lower-semicontinuous closure: the function is
//! `v_m` at the last breakpoint `x_m` and `+∞` strictly beyond it.
//!
//! Construction always goes through [`PLFunction::new`], which canonicalizes:
//! collinear interior breakpoints are merged and a tail slope equal to the last
//! segment slope absorbs the last breakpoint. Two canonical functions are
//! pointwise equal iff they are equal as records.

mod json;
mod lattice;

use std::cmp::Ordering;


use crate::error::{Error, Result};
use crate::scalar::{convert, Scalar};

pub use json::{from_json, json_mode, to_json};
pub use lattice::{compare, join, meet, sup_gap, Comparison, Gap, Relation};

/// A nonnegative extended real.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtValue<S> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> ExtValue<S> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            ExtValue::Finite(v) => Some(v),
            ExtValue::Infinite => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtValue::Finite(v) => v.to_f64(),
            ExtValue::Infinite => f64::INFINITY,
        }
    }
}

impl<S: Scalar> PartialOrd for ExtValue<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (ExtValue::Infinite, ExtValue::Infinite) => Some(Ordering::Equal),
            (ExtValue::Infinite, _) => Some(Ordering::Greater),
            (_, ExtValue::Infinite) => Some(Ordering::Less),
            (ExtValue::Finite(a), ExtValue::Finite(b)) => a.partial_cmp(b),
        }
    }
}

/// Behavior after the last breakpoint.
#[derive(Clone, Debug, PartialEq)]
pub enum Tail<S> {
    /// Continues linearly with this (nonnegative) slope.
    Slope(S),
    /// `+∞` strictly beyond the last breakpoint.
    Infinite,
}

impl<S: Scalar> Tail<S> {
    pub fn slope(&self) -> Option<&S> {
        match self {
            Tail::Slope(s) => Some(s),
            Tail::Infinite => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PLFunction<S> {
    breakpoints: Vec<(S, S)>,
    tail: Tail<S>,
}

impl<S: Scalar> PLFunction<S> {
    /// Builds and canonicalizes. Breakpoints must be sorted by `x`, start at
    /// `(0, 0)` and describe a (weakly) convex function.
    pub fn new(breakpoints: Vec<(S, S)>, tail: Tail<S>) -> Result<Self> {
        canonicalize(breakpoints, tail)
    }

    /// Like [`PLFunction::new`] but accepts `+∞` samples: the effective domain
    /// ends at the last finite sample before the first infinite one.
    pub fn from_points(points: Vec<(S, ExtValue<S>)>, tail: Tail<S>) -> Result<Self> {
        let mut finite = Vec::with_capacity(points.len());
        let mut tail = tail;
        for (x, v) in points {
            match v {
                ExtValue::Finite(v) => finite.push((x, v)),
                ExtValue::Infinite => {
                    tail = Tail::Infinite;
                    break;
                }
            }
        }
        canonicalize(finite, tail)
    }

    /// `ℓ_β(x) = βx`.
    pub fn line(beta: S) -> Result<Self> {
        if !beta.gt0() {
            return Err(Error::InvalidArgument(format!(
                "line slope must be positive, got {beta}"
            )));
        }
        Ok(Self {
            breakpoints: vec![(S::zero(), S::zero())],
            tail: Tail::Slope(beta),
        })
    }

    /// Convex indicator of `[0, a]`.
    pub fn indicator(a: S) -> Result<Self> {
        if a.lt0() {
            return Err(Error::InvalidArgument(format!(
                "indicator radius must be nonnegative, got {a}"
            )));
        }
        let mut breakpoints = vec![(S::zero(), S::zero())];
        if a.gt0() {
            breakpoints.push((a, S::zero()));
        }
        Ok(Self {
            breakpoints,
            tail: Tail::Infinite,
        })
    }

    /// The identically zero function (constant tail).
    pub fn zero() -> Self {
        Self {
            breakpoints: vec![(S::zero(), S::zero())],
            tail: Tail::Slope(S::zero()),
        }
    }

    pub fn breakpoints(&self) -> &[(S, S)] {
        &self.breakpoints
    }

    pub fn tail(&self) -> &Tail<S> {
        &self.tail
    }

    pub fn last(&self) -> &(S, S) {
        self.breakpoints.last().expect("canonical functions are nonempty")
    }

    /// Right end of the effective domain.
    pub fn domain_end(&self) -> ExtValue<S> {
        match self.tail {
            Tail::Infinite => ExtValue::Finite(self.last().0.clone()),
            Tail::Slope(_) => ExtValue::Infinite,
        }
    }

    /// Largest `x` with `φ(x) = 0` (infinite for the zero function).
    pub fn zero_set_radius(&self) -> ExtValue<S> {
        if self.has_constant_tail() {
            return ExtValue::Infinite;
        }
        let z = self
            .breakpoints
            .iter()
            .rev()
            .find(|(_, v)| v.is_zero())
            .map(|(x, _)| x.clone())
            .unwrap_or_else(S::zero);
        ExtValue::Finite(z)
    }

    /// Bounded tail (only the zero function in canonical form).
    pub fn has_constant_tail(&self) -> bool {
        matches!(&self.tail, Tail::Slope(s) if s.is_zero())
    }

    /// Slopes of the finite segments between consecutive breakpoints.
    pub fn segment_slopes(&self) -> Vec<S> {
        self.breakpoints
            .windows(2)
            .map(|w| slope(&w[0], &w[1]))
            .collect()
    }

    pub fn eval(&self, x: &S) -> Result<ExtValue<S>> {
        if x.lt0() {
            return Err(Error::InvalidArgument(format!(
                "evaluation point must be nonnegative, got {x}"
            )));
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &S) -> ExtValue<S> {
        let bp = &self.breakpoints;
        let idx = bp.partition_point(|(bx, _)| bx < x);
        if idx < bp.len() {
            let (bx, bv) = &bp[idx];
            if bx == x || idx == 0 {
                return ExtValue::Finite(bv.clone());
            }
            let (ax, av) = &bp[idx - 1];
            let t = (x.clone() - ax.clone()) / (bx.clone() - ax.clone());
            return ExtValue::Finite(av.clone() + t * (bv.clone() - av.clone()));
        }
        let (lx, lv) = self.last();
        match &self.tail {
            Tail::Slope(s) => ExtValue::Finite(lv.clone() + s.clone() * (x.clone() - lx.clone())),
            Tail::Infinite => ExtValue::Infinite,
        }
    }

    /// Float evaluation regardless of the backend (`+∞` outside the domain).
    pub fn eval_f64(&self, x: f64) -> f64 {
        if x < 0.0 {
            return f64::NAN;
        }
        let bp = &self.breakpoints;
        let idx = bp.partition_point(|(bx, _)| bx.to_f64() < x);
        if idx < bp.len() {
            let (bx, bv) = (bp[idx].0.to_f64(), bp[idx].1.to_f64());
            if bx == x || idx == 0 {
                return bv;
            }
            let (ax, av) = (bp[idx - 1].0.to_f64(), bp[idx - 1].1.to_f64());
            return av + (x - ax) / (bx - ax) * (bv - av);
        }
        let (lx, lv) = (self.last().0.to_f64(), self.last().1.to_f64());
        match &self.tail {
            Tail::Slope(s) => lv + s.to_f64() * (x - lx),
            Tail::Infinite => f64::INFINITY,
        }
    }

    /// Re-expresses the function in another backend and re-canonicalizes.
    pub fn to_mode<B: Scalar>(&self) -> Result<PLFunction<B>> {
        let bp = self
            .breakpoints
            .iter()
            .map(|(x, v)| Ok((convert::<S, B>(x)?, convert::<S, B>(v)?)))
            .collect::<Result<Vec<_>>>()?;
        let tail = match &self.tail {
            Tail::Slope(s) => Tail::Slope(convert::<S, B>(s)?),
            Tail::Infinite => Tail::Infinite,
        };
        PLFunction::new(bp, tail)
    }

    pub fn to_float(&self) -> PLFunction<f64> {
        self.to_mode::<f64>()
            .expect("float conversion of a canonical function")
    }

}

pub(crate) fn slope<S: Scalar>(a: &(S, S), b: &(S, S)) -> S {
    (b.1.clone() - a.1.clone()) / (b.0.clone() - a.0.clone())
}

/// Merges collinear breakpoints and validates convexity.
pub fn canonicalize<S: Scalar>(points: Vec<(S, S)>, tail: Tail<S>) -> Result<PLFunction<S>> {
    let mut it = points.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Error::Malformed("no breakpoints".into()))?;
    if !first.0.is_zero() || !first.1.eq_tol(&S::zero()) {
        return Err(Error::Malformed(format!(
            "first breakpoint must be (0, 0), got ({}, {})",
            first.0, first.1
        )));
    }
    let mut out: Vec<(S, S)> = vec![(S::zero(), S::zero())];

    for (x, v) in it {
        if v.lt0() && !v.eq_tol(&S::zero()) {
            return Err(Error::Malformed(format!("negative value {v} at x = {x}")));
        }
        let v = if v.lt0() { S::zero() } else { v };
        let prev = out.last().unwrap();
        if x.le_tol(&prev.0) {
            if x < prev.0 && !x.eq_tol(&prev.0) {
                return Err(Error::Malformed(format!(
                    "breakpoints not sorted: {} after {}",
                    x, prev.0
                )));
            }
            if v.eq_tol(&prev.1) {
                continue;
            }
            return Err(Error::Malformed(format!(
                "two values ({}, {}) at x = {}",
                prev.1, v, x
            )));
        }
        let p = (x, v);
        while out.len() >= 2 {
            let n = out.len();
            let left = slope(&out[n - 2], &out[n - 1]);
            let right = slope(&out[n - 1], &p);
            if left.eq_tol(&right) {
                out.pop();
            } else if right < left {
                return Err(Error::NotConvex {
                    at: out[n - 1].0.to_f64(),
                    left: left.to_f64(),
                    right: right.to_f64(),
                });
            } else {
                break;
            }
        }
        out.push(p);
    }

    let tail = match tail {
        Tail::Infinite => Tail::Infinite,
        Tail::Slope(s) => {
            if s.lt0() && !s.eq_tol(&S::zero()) {
                return Err(Error::Malformed(format!("negative tail slope {s}")));
            }
            let s = if s.lt0() { S::zero() } else { s };
            while out.len() >= 2 {
                let n = out.len();
                let left = slope(&out[n - 2], &out[n - 1]);
                if left.eq_tol(&s) {
                    out.pop();
                } else if s < left {
                    return Err(Error::NotConvex {
                        at: out[n - 1].0.to_f64(),
                        left: left.to_f64(),
                        right: s.to_f64(),
                    });
                } else {
                    break;
                }
            }
            Tail::Slope(s)
        }
    };
    Ok(PLFunction {
        breakpoints: out,
        tail,
    })
}

/// Exact rational shorthand used throughout tests and the CLI.
pub fn q(num: i64, den: i64) -> crate::scalar::Rational {
    crate::scalar::Rational::ratio(num, den)
}

impl<S: Scalar> std::fmt::Display for PLFunction<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, (x, v)) in self.breakpoints.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x}, {v})")?;
        }
        match &self.tail {
            Tail::Slope(s) => write!(f, "] tail slope {s}"),
            Tail::Infinite => write!(f, "] tail +inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn pts(v: &[(i64, i64, i64, i64)]) -> Vec<(Rational, Rational)> {
        v.iter().map(|&(a, b, c, d)| (q(a, b), q(c, d))).collect()
    }

    #[test]
    fn line_evaluates_linearly() {
        let l = PLFunction::line(q(2, 1)).unwrap();
        assert_eq!(l.eval(&q(3, 1)).unwrap(), ExtValue::Finite(q(6, 1)));
        assert!(PLFunction::line(q(0, 1)).is_err());
        assert!(PLFunction::line(q(-1, 1)).is_err());
    }

    #[test]
    fn indicator_is_lsc_at_endpoint() {
        let ind = PLFunction::indicator(q(2, 1)).unwrap();
        assert_eq!(ind.eval(&q(2, 1)).unwrap(), ExtValue::Finite(q(0, 1)));
        assert_eq!(ind.eval(&q(5, 2)).unwrap(), ExtValue::Infinite);
        assert_eq!(ind.zero_set_radius(), ExtValue::Finite(q(2, 1)));
        let at_zero = PLFunction::indicator(q(0, 1)).unwrap();
        assert_eq!(at_zero.breakpoints().len(), 1);
        assert!(PLFunction::indicator(q(-1, 1)).is_err());
    }

    #[test]
    fn collinear_breakpoints_merge() {
        let f = PLFunction::new(pts(&[(0, 1, 0, 1), (1, 1, 1, 1), (2, 1, 2, 1)]), Tail::Slope(q(1, 1)))
            .unwrap();
        assert_eq!(f, PLFunction::line(q(1, 1)).unwrap());
        let again = PLFunction::new(f.breakpoints().to_vec(), f.tail().clone()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn nonconvex_input_is_rejected() {
        let err = PLFunction::new(pts(&[(0, 1, 0, 1), (1, 1, 2, 1), (2, 1, 1, 1)]), Tail::Infinite);
        assert!(matches!(err, Err(Error::NotConvex { .. })));
        let err = PLFunction::new(pts(&[(0, 1, 0, 1), (1, 1, 2, 1)]), Tail::Slope(q(1, 1)));
        assert!(matches!(err, Err(Error::NotConvex { .. })));
    }

    #[test]
    fn first_breakpoint_must_be_origin() {
        assert!(PLFunction::new(pts(&[(1, 1, 0, 1)]), Tail::Infinite).is_err());
        assert!(PLFunction::new(pts(&[(0, 1, 1, 1)]), Tail::Infinite).is_err());
    }

    #[test]
    fn negative_evaluation_point_rejected() {
        let l = PLFunction::line(q(1, 1)).unwrap();
        assert!(l.eval(&q(-1, 2)).is_err());
    }

    #[test]
    fn zero_set_radius_cases() {
        let f = PLFunction::new(pts(&[(0, 1, 0, 1), (1, 2, 0, 1), (1, 1, 1, 1)]), Tail::Slope(q(3, 1)))
            .unwrap();
        assert_eq!(f.zero_set_radius(), ExtValue::Finite(q(1, 2)));
        assert_eq!(PLFunction::line(q(1, 1)).unwrap().zero_set_radius(), ExtValue::Finite(q(0, 1)));
        assert_eq!(PLFunction::<Rational>::zero().zero_set_radius(), ExtValue::Infinite);
    }

    #[test]
    fn infinite_samples_truncate_domain() {
        let f = PLFunction::from_points(
            vec![
                (q(0, 1), ExtValue::Finite(q(0, 1))),
                (q(1, 1), ExtValue::Finite(q(1, 1))),
                (q(2, 1), ExtValue::Infinite),
                (q(3, 1), ExtValue::Finite(q(9, 1))),
            ],
            Tail::Slope(q(5, 1)),
        )
        .unwrap();
        assert_eq!(f.domain_end(), ExtValue::Finite(q(1, 1)));
    }

    #[test]
    fn float_mode_merges_nearly_collinear() {
        let f = PLFunction::new(
            vec![(0.0, 0.0), (1.0, 1.0), (2.0, 2.0 + 1e-15)],
            Tail::Slope(1.0),
        )
        .unwrap();
        assert_eq!(f.breakpoints().len(), 1);
    }
}
