//! Pointwise max (join), greatest convex minorant of the min (meet), and
//! exact order comparison.

use super::{slope, ExtValue, PLFunction, Tail};
use crate::error::Result;
use crate::scalar::Scalar;

/// Sorted, deduplicated union of both breakpoint abscissae.
fn merged_xs<S: Scalar>(f: &PLFunction<S>, g: &PLFunction<S>) -> Vec<S> {
    let mut xs: Vec<S> = f
        .breakpoints()
        .iter()
        .chain(g.breakpoints())
        .map(|(x, _)| x.clone())
        .collect();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite abscissae"));
    xs.dedup_by(|a, b| a.eq_tol(b));
    xs
}

fn min_ext<S: Scalar>(a: ExtValue<S>, b: ExtValue<S>) -> ExtValue<S> {
    if a <= b {
        a
    } else {
        b
    }
}

/// Pointwise maximum. The effective domain is the intersection of domains.
pub fn join<S: Scalar>(f: &PLFunction<S>, g: &PLFunction<S>) -> PLFunction<S> {
    let end = min_ext(f.domain_end(), g.domain_end());
    let mut xs: Vec<S> = merged_xs(f, g)
        .into_iter()
        .filter(|x| match &end {
            ExtValue::Finite(e) => x < e,
            ExtValue::Infinite => true,
        })
        .collect();
    if let ExtValue::Finite(e) = &end {
        xs.push(e.clone());
    }

    let diff = |x: &S| -> S {
        let a = f.eval_unchecked(x).finite().cloned().expect("inside domain");
        let b = g.eval_unchecked(x).finite().cloned().expect("inside domain");
        a - b
    };

    let mut grid = Vec::with_capacity(xs.len() * 2);
    for w in xs.windows(2) {
        grid.push(w[0].clone());
        let (da, db) = (diff(&w[0]), diff(&w[1]));
        if (da.gt0() && db.lt0()) || (da.lt0() && db.gt0()) {
            let t = da.clone() / (da - db);
            grid.push(w[0].clone() + t * (w[1].clone() - w[0].clone()));
        }
    }
    grid.push(xs.last().cloned().expect("nonempty"));

    let tail = match (f.tail(), g.tail()) {
        (Tail::Slope(s1), Tail::Slope(s2)) => {
            let last = grid.last().cloned().unwrap();
            let d = diff(&last);
            let ds = s1.clone() - s2.clone();
            if (d.gt0() && ds.lt0()) || (d.lt0() && ds.gt0()) {
                grid.push(last - d / ds);
            }
            Tail::Slope(s1.clone().max_of(s2.clone()))
        }
        _ => Tail::Infinite,
    };

    let points = grid
        .into_iter()
        .map(|x| {
            let a = f.eval_unchecked(&x).finite().cloned().unwrap();
            let b = g.eval_unchecked(&x).finite().cloned().unwrap();
            (x, a.max_of(b))
        })
        .collect();
    PLFunction::new(points, tail).expect("max of convex functions is convex")
}

fn cross<S: Scalar>(o: &(S, S), a: &(S, S), b: &(S, S)) -> S {
    (a.0.clone() - o.0.clone()) * (b.1.clone() - o.1.clone())
        - (a.1.clone() - o.1.clone()) * (b.0.clone() - o.0.clone())
}

/// Greatest convex lsc function below `min(f, g)`: lower hull of the union of
/// the epigraphs' vertices with the shallowest recession slope.
pub fn meet<S: Scalar>(f: &PLFunction<S>, g: &PLFunction<S>) -> PLFunction<S> {
    let mut pts: Vec<(S, S)> = f
        .breakpoints()
        .iter()
        .chain(g.breakpoints())
        .cloned()
        .collect();
    pts.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then(a.1.partial_cmp(&b.1).unwrap())
    });
    pts.dedup_by(|a, b| a.0.eq_tol(&b.0));

    let mut hull: Vec<(S, S)> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 {
            let n = hull.len();
            if cross(&hull[n - 2], &hull[n - 1], &p).gt0() {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }

    let rec = match (f.tail().slope(), g.tail().slope()) {
        (Some(a), Some(b)) => Some(a.clone().min_of(b.clone())),
        (Some(a), None) | (None, Some(a)) => Some(a.clone()),
        (None, None) => None,
    };
    let tail = match rec {
        Some(s) => {
            let cut = hull
                .windows(2)
                .position(|w| s.le_tol(&slope(&w[0], &w[1])))
                .map(|i| i + 1)
                .unwrap_or(hull.len());
            hull.truncate(cut);
            Tail::Slope(s)
        }
        None => Tail::Infinite,
    };
    PLFunction::new(hull, tail).expect("lower hull is convex")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    LessOrEqual,
    GreaterOrEqual,
    Incomparable,
}

/// Outcome of [`compare`]: the relation of `f` to `g` plus witnesses of strict
/// violations (`above`: a point with `f > g`, `below`: a point with `f < g`).
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison<S> {
    pub relation: Relation,
    pub above: Option<S>,
    pub below: Option<S>,
}

impl<S> Comparison<S> {
    /// `f ≤ g` everywhere.
    pub fn is_le(&self) -> bool {
        matches!(self.relation, Relation::Equal | Relation::LessOrEqual)
    }
}

fn ext_cmp<S: Scalar>(a: &ExtValue<S>, b: &ExtValue<S>) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    match (a, b) {
        (ExtValue::Finite(x), ExtValue::Finite(y)) => {
            if x.eq_tol(y) {
                Equal
            } else if x < y {
                Less
            } else {
                Greater
            }
        }
        (ExtValue::Infinite, ExtValue::Infinite) => Equal,
        (ExtValue::Infinite, _) => Greater,
        (_, ExtValue::Infinite) => Less,
    }
}

/// Decides the pointwise order by evaluation on the merged breakpoints (both
/// functions are affine between them) plus the tails.
pub fn compare<S: Scalar>(f: &PLFunction<S>, g: &PLFunction<S>) -> Comparison<S> {
    use std::cmp::Ordering::*;
    let mut above: Option<S> = None;
    let mut below: Option<S> = None;
    let mut note = |ord: std::cmp::Ordering, x: &S| match ord {
        Greater if above.is_none() => above = Some(x.clone()),
        Less if below.is_none() => below = Some(x.clone()),
        _ => {}
    };

    let xs = merged_xs(f, g);
    for x in &xs {
        note(ext_cmp(&f.eval_unchecked(x), &g.eval_unchecked(x)), x);
    }

    let last = xs.last().cloned().unwrap();
    // Beyond the last merged abscissa each side is affine or infinite.
    match (f.tail(), g.tail()) {
        (Tail::Slope(s1), Tail::Slope(s2)) => {
            if !s1.eq_tol(s2) {
                let d = f.eval_unchecked(&last).finite().cloned().unwrap()
                    - g.eval_unchecked(&last).finite().cloned().unwrap();
                let ds = s1.clone() - s2.clone();
                let run = (d.clone().neg() / ds.clone()).max_of(S::zero());
                let w = last.clone() + S::one() + run;
                note(if ds.gt0() { Greater } else { Less }, &w);
            }
        }
        (Tail::Infinite, Tail::Slope(_)) => note(Greater, &(last.clone() + S::one())),
        (Tail::Slope(_), Tail::Infinite) => note(Less, &(last.clone() + S::one())),
        (Tail::Infinite, Tail::Infinite) => {}
    }

    let relation = match (&above, &below) {
        (None, None) => Relation::Equal,
        (None, Some(_)) => Relation::LessOrEqual,
        (Some(_), None) => Relation::GreaterOrEqual,
        (Some(_), Some(_)) => Relation::Incomparable,
    };
    Comparison {
        relation,
        above,
        below,
    }
}

/// Largest pointwise discrepancy on the finite comparison window
/// `[0, max(1, largest breakpoint abscissa)]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gap {
    pub value: f64,
    pub witness: f64,
}

/// Sup of `|f − g|` over the comparison window, `+∞` if exactly one side is
/// infinite somewhere inside it. In float mode domain ends that agree up to
/// the mode's slack count as equal.
pub fn sup_gap<S: Scalar>(f: &PLFunction<S>, g: &PLFunction<S>) -> Result<Gap> {
    let xs = merged_xs(f, g);
    let window = xs.last().cloned().unwrap().max_of(S::one());
    let (ef, eg) = (f.domain_end(), g.domain_end());
    let domains_match = match (&ef, &eg) {
        (ExtValue::Finite(a), ExtValue::Finite(b)) => a.eq_tol(b),
        (ExtValue::Infinite, ExtValue::Infinite) => true,
        _ => false,
    };
    let common_end = min_ext(ef.clone(), eg.clone());

    let mut best = Gap {
        value: 0.0,
        witness: 0.0,
    };
    let mut probe: Vec<S> = xs
        .into_iter()
        .filter(|x| match &common_end {
            ExtValue::Finite(e) => x.le_tol(e),
            ExtValue::Infinite => true,
        })
        .collect();
    probe.push(match &common_end {
        ExtValue::Finite(e) => e.clone().min_of(window.clone()),
        ExtValue::Infinite => window.clone(),
    });

    for x in &probe {
        let x = if let ExtValue::Finite(e) = &common_end {
            x.clone().min_of(e.clone())
        } else {
            x.clone()
        };
        let a = f.eval_unchecked(&x);
        let b = g.eval_unchecked(&x);
        let gap = match (a.finite(), b.finite()) {
            (Some(a), Some(b)) => (a.clone() - b.clone()).abs().to_f64(),
            (None, None) => 0.0,
            _ => f64::INFINITY,
        };
        if gap > best.value {
            best = Gap {
                value: gap,
                witness: x.to_f64(),
            };
        }
    }

    if !domains_match {
        if let ExtValue::Finite(e) = &common_end {
            if *e < window {
                let other = match (&ef, &eg) {
                    (ExtValue::Finite(a), ExtValue::Finite(b)) => a.clone().max_of(b.clone()),
                    _ => window.clone(),
                }
                .min_of(window.clone());
                let mid = (e.clone() + other) / (S::one() + S::one());
                best = Gap {
                    value: f64::INFINITY,
                    witness: mid.to_f64(),
                };
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pl::q;
    use crate::scalar::Rational;

    fn line(a: i64, b: i64) -> PLFunction<Rational> {
        PLFunction::line(q(a, b)).unwrap()
    }

    fn ind(a: i64, b: i64) -> PLFunction<Rational> {
        PLFunction::indicator(q(a, b)).unwrap()
    }

    #[test]
    fn join_of_lines_is_steeper_line() {
        assert_eq!(join(&line(1, 1), &line(2, 1)), line(2, 1));
        let f = join(&ind(5, 4), &line(3, 5));
        assert_eq!(
            f.breakpoints(),
            &[(q(0, 1), q(0, 1)), (q(5, 4), q(3, 4))]
        );
        assert_eq!(f.tail(), &Tail::Infinite);
    }

    #[test]
    fn join_adds_crossing_points() {
        // max(x, 2x - 1) kinks at x = 1.
        let a = line(1, 1);
        let b = PLFunction::new(
            vec![(q(0, 1), q(0, 1)), (q(1, 2), q(0, 1))],
            Tail::Slope(q(2, 1)),
        )
        .unwrap();
        let j = join(&a, &b);
        assert_eq!(j.breakpoints(), &[(q(0, 1), q(0, 1)), (q(1, 1), q(1, 1))]);
        assert_eq!(j.tail(), &Tail::Slope(q(2, 1)));
    }

    #[test]
    fn meet_of_indicator_and_line() {
        let m = meet(&ind(4, 5), &line(5, 3));
        assert_eq!(m.breakpoints(), &[(q(0, 1), q(0, 1)), (q(4, 5), q(0, 1))]);
        assert_eq!(m.tail(), &Tail::Slope(q(5, 3)));
        assert_eq!(meet(&line(1, 1), &line(2, 1)), line(1, 1));
    }

    #[test]
    fn lattice_idempotence() {
        let f = PLFunction::new(
            vec![(q(0, 1), q(0, 1)), (q(1, 1), q(1, 3)), (q(2, 1), q(2, 1))],
            Tail::Slope(q(4, 1)),
        )
        .unwrap();
        assert_eq!(join(&f, &f), f);
        assert_eq!(meet(&f, &f), f);
    }

    #[test]
    fn compare_line_and_indicator_incomparable() {
        let c = compare(&line(1, 1), &ind(1, 1));
        assert_eq!(c.relation, Relation::Incomparable);
        assert_eq!(c.above, Some(q(1, 1)));
        assert!(c.below.unwrap() > q(1, 1));
        assert_eq!(compare(&line(1, 1), &line(1, 1)).relation, Relation::Equal);
        assert_eq!(compare(&line(1, 1), &line(2, 1)).relation, Relation::LessOrEqual);
        assert_eq!(compare(&line(3, 1), &line(2, 1)).relation, Relation::GreaterOrEqual);
    }

    #[test]
    fn compare_nested_indicators() {
        // Smaller domain means larger function.
        assert_eq!(compare(&ind(1, 1), &ind(2, 1)).relation, Relation::GreaterOrEqual);
        assert_eq!(compare(&ind(2, 1), &ind(1, 1)).relation, Relation::LessOrEqual);
    }

    #[test]
    fn sup_gap_uses_unit_window_for_lines() {
        let g = sup_gap(&line(2, 1), &line(1, 2)).unwrap();
        assert_eq!(g.value, 1.5);
        assert_eq!(g.witness, 1.0);
        let g = sup_gap(&ind(1, 1), &ind(2, 1)).unwrap();
        assert!(g.value.is_infinite());
        assert!(g.witness > 1.0 && g.witness <= 2.0);
    }
}
