//! Exact polar and Legendre transforms of piecewise-linear functions, plus
//! tolerance-based numeric transforms for arbitrary evaluable functions.
//!
//! Both exact transforms reduce to an upper envelope of finitely many lines on
//! `[0, cap]`. For the polar, `(xy − 1)/(a + by)` is monotone in `y` on every
//! linear piece (the sign of its derivative is that of `xa + b`), so the
//! supremum over a piece is attained at a breakpoint or in the tail limit
//! `x/s`.

mod numeric;

use crate::pl::{ExtValue, PLFunction, Tail};
use crate::scalar::Scalar;

pub use numeric::{legendre_numeric_1d, polar_numeric_1d, NumericPolarOptions};

/// Lines `x ↦ slope·x + intercept` whose upper envelope (and the zero line) on
/// `[0, cap]` is an intermediate form of a transform.
#[derive(Clone, Debug, PartialEq)]
pub struct LineBundle<S> {
    pub lines: Vec<(S, S)>,
    /// `None` means the envelope is finite on all of `[0, ∞)`.
    pub cap: Option<S>,
}

impl<S: Scalar> LineBundle<S> {
    fn value_at(&self, x: &S) -> S {
        self.lines
            .iter()
            .map(|(a, b)| a.clone() * x.clone() + b.clone())
            .fold(S::zero(), |m, v| m.max_of(v))
    }

    /// Upper envelope of the lines and `0`, restricted to `[0, cap]`.
    pub fn envelope(&self) -> PLFunction<S> {
        let mut lines = self.lines.clone();
        lines.push((S::zero(), S::zero()));

        // Start with the line of largest value at 0 (ties: steepest).
        let start = (0..lines.len())
            .max_by(|&i, &j| {
                let (ai, bi) = &lines[i];
                let (aj, bj) = &lines[j];
                bi.partial_cmp(bj)
                    .unwrap()
                    .then(ai.partial_cmp(aj).unwrap())
            })
            .unwrap();
        let mut cur = start;
        let mut x_cur = S::zero();
        let mut points = vec![(S::zero(), lines[cur].1.clone())];

        loop {
            let (a, b) = lines[cur].clone();
            let mut next: Option<(usize, S)> = None;
            for (j, (aj, bj)) in lines.iter().enumerate() {
                if *aj <= a {
                    continue;
                }
                let xj = (b.clone() - bj.clone()) / (aj.clone() - a.clone());
                let xj = xj.max_of(x_cur.clone());
                let better = match &next {
                    None => true,
                    Some((k, xk)) => xj < *xk || (xj == *xk && *aj > lines[*k].0),
                };
                if better {
                    next = Some((j, xj));
                }
            }
            match next {
                Some((j, xj)) => {
                    if let Some(cap) = &self.cap {
                        if xj >= *cap {
                            break;
                        }
                    }
                    if xj > x_cur {
                        let v = a.clone() * xj.clone() + b.clone();
                        points.push((xj.clone(), v));
                        x_cur = xj;
                    }
                    cur = j;
                }
                None => break,
            }
        }

        let tail = match &self.cap {
            Some(cap) => {
                if cap.gt0() {
                    points.push((cap.clone(), self.value_at(cap)));
                }
                Tail::Infinite
            }
            None => Tail::Slope(lines[cur].0.clone()),
        };
        PLFunction::new(points, tail).expect("upper envelope of lines is convex")
    }
}

/// Line bundle of the polar: one line `(y_i x − 1)/v_i` per breakpoint with
/// `v_i > 0`, the tail limit `x/s`, and the cap `1/z` from the zero set.
pub fn polar_bundle<S: Scalar>(f: &PLFunction<S>) -> LineBundle<S> {
    let mut lines = Vec::new();
    for (y, v) in f.breakpoints() {
        if v.gt0() {
            lines.push((y.clone() / v.clone(), -(S::one() / v.clone())));
        }
    }
    if let Tail::Slope(s) = f.tail() {
        if s.gt0() {
            lines.push((S::one() / s.clone(), S::zero()));
        }
    }
    let cap = match f.zero_set_radius() {
        ExtValue::Infinite => Some(S::zero()),
        ExtValue::Finite(z) if z.is_zero() => None,
        ExtValue::Finite(z) => Some(S::one() / z),
    };
    LineBundle { lines, cap }
}

/// Result of [`polar_with_flags`].
#[derive(Clone, Debug, PartialEq)]
pub struct PolarOutput<S> {
    pub function: PLFunction<S>,
    /// Input had a constant tail: its polar collapses to `indicator(0)`.
    pub degenerate: bool,
}

/// `φ°(x) = sup_{y>0} (xy − 1)/φ(y)` with `+/0 = ∞` and `−/0 = 0`.
pub fn polar_pl<S: Scalar>(f: &PLFunction<S>) -> PLFunction<S> {
    polar_bundle(f).envelope()
}

pub fn polar_with_flags<S: Scalar>(f: &PLFunction<S>) -> PolarOutput<S> {
    PolarOutput {
        function: polar_pl(f),
        degenerate: f.has_constant_tail(),
    }
}

/// Convex conjugate restricted to the ray: `sup_{y≥0} (xy − φ(y))`, finite on
/// `[0, s]` for a tail slope `s`.
pub fn legendre_pl<S: Scalar>(f: &PLFunction<S>) -> PLFunction<S> {
    let lines = f
        .breakpoints()
        .iter()
        .map(|(y, v)| (y.clone(), -v.clone()))
        .collect();
    let cap = match f.tail() {
        Tail::Slope(s) => Some(s.clone()),
        Tail::Infinite => None,
    };
    LineBundle { lines, cap }.envelope()
}
