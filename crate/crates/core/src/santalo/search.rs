use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{santalo_product_pl, Transform};
use crate::pl::{to_json, PLFunction, Tail};
use crate::selfpolar::{curve_f64, splice_at};
use crate::{Error, Result};

/// Smallest contact point tried; the class collapses to a single member at 1.
const Q_FLOOR: f64 = 1.0 + 1e-6;
const FEAS_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchSpec {
    pub q_max: f64,
    /// Interior knots on `[0, q]`, placed at `q·j/(k+1)`.
    pub knots: usize,
    /// Total number of objective evaluations over all restarts.
    pub budget: usize,
    pub restarts: usize,
    pub seed: u64,
    pub dim: usize,
    pub tol: f64,
}

impl Default for SearchSpec {
    fn default() -> Self {
        Self {
            q_max: 4.0,
            knots: 0,
            budget: 200,
            restarts: 4,
            seed: 0,
            dim: 2,
            tol: 1e-10,
        }
    }
}

impl SearchSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.q_max > Q_FLOOR && self.q_max.is_finite()) {
            return Err(Error::InvalidArgument(format!("q-max must be finite and > 1, got {}", self.q_max)));
        }
        if self.budget == 0 || self.restarts == 0 || self.dim == 0 {
            return Err(Error::InvalidArgument("budget, restarts and dimension must be positive".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    pub evaluation: usize,
    pub restart: usize,
    pub q: f64,
    /// Knot values after projection onto the feasible set.
    pub knots: Vec<f64>,
    /// `None` when the candidate was discarded as infeasible.
    pub product: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub best: PLFunction<f64>,
    pub best_q: f64,
    pub best_knots: Vec<f64>,
    pub best_product: f64,
    pub trace: Vec<TraceRow>,
    pub seed: u64,
    pub discarded: usize,
}

impl SearchResult {
    pub fn to_json(&self) -> Value {
        json!({
            "status": "exploratory",
            "seed": self.seed,
            "q": self.best_q,
            "knots": self.best_knots,
            "product": self.best_product,
            "evaluations": self.trace.len(),
            "discarded": self.discarded,
            "function": to_json(&self.best),
        })
    }

    /// Columns `iteration,restart,q,knot1..knotk,product`.
    pub fn write_trace_csv<W: Write>(&self, out: W) -> Result<()> {
        let k = self.best_knots.len();
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["iteration".to_string(), "restart".into(), "q".into()];
        header.extend((1..=k).map(|j| format!("knot{j}")));
        header.push("product".into());
        w.write_record(&header).map_err(|e| Error::Io(e.to_string()))?;
        for row in &self.trace {
            let mut rec = vec![row.evaluation.to_string(), row.restart.to_string(), row.q.to_string()];
            rec.extend(row.knots.iter().map(f64::to_string));
            rec.push(row.product.map_or_else(|| "infeasible".into(), |p| p.to_string()));
            w.write_record(&rec).map_err(|e| Error::Io(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Nondecreasing weighted least-squares fit (pool adjacent violators).
/// Weighted means keep `Σ wᵢ·sᵢ`, so rebuilt values keep their endpoint.
fn isotonic(values: &[f64], weights: &[f64]) -> Vec<f64> {
    let mut blocks: Vec<(f64, f64, usize)> = Vec::new();
    for (&v, &w) in values.iter().zip(weights) {
        blocks.push((v, w, 1));
        while blocks.len() >= 2 && blocks[blocks.len() - 2].0 > blocks[blocks.len() - 1].0 {
            let (v2, w2, c2) = blocks.pop().unwrap();
            let (v1, w1, c1) = blocks.pop().unwrap();
            blocks.push(((v1 * w1 + v2 * w2) / (w1 + w2), w1 + w2, c1 + c2));
        }
    }
    blocks
        .into_iter()
        .flat_map(|(v, _, c)| std::iter::repeat_n(v, c))
        .collect()
}

/// Knot abscissae `q·j/(k+1)`, `j = 1..k`.
pub(crate) fn knot_positions(q: f64, k: usize) -> Vec<f64> {
    (1..=k).map(|j| q * j as f64 / (k + 1) as f64).collect()
}

/// Alternately clips the knot values into `[ψ_L, ψ_U]` and makes the slopes
/// nondecreasing, keeping `(0, 0)` and `(q, F(q))` fixed. Returns `None` if
/// the iteration does not settle on a feasible head.
pub(crate) fn project(q: f64, values: &[f64]) -> Option<Vec<f64>> {
    let (fq, dfq) = curve_f64(q).ok()?;
    let xs = knot_positions(q, values.len());
    let lo = |x: f64| (dfq * (x - 1.0 / q)).max(0.0);
    let hi = |x: f64| fq / q * x;
    let mut grid = vec![0.0];
    grid.extend(&xs);
    grid.push(q);
    let widths: Vec<f64> = grid.windows(2).map(|w| w[1] - w[0]).collect();

    let mut ys = vec![0.0];
    ys.extend(values);
    ys.push(fq);
    for _ in 0..200 {
        let before = ys.clone();
        for (y, &x) in ys[1..=xs.len()].iter_mut().zip(&xs) {
            *y = y.clamp(lo(x), hi(x));
        }
        let slopes: Vec<f64> = ys.windows(2).zip(&widths).map(|(w, h)| (w[1] - w[0]) / h).collect();
        let slopes = isotonic(&slopes, &widths);
        for j in 1..=xs.len() {
            ys[j] = ys[j - 1] + slopes[j - 1] * widths[j - 1];
        }
        let moved = ys.iter().zip(&before).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if moved <= 1e-15 {
            break;
        }
    }
    let inner = &ys[1..=xs.len()];
    let ok = inner
        .iter()
        .zip(&xs)
        .all(|(&y, &x)| y >= lo(x) - FEAS_TOL && y <= hi(x) + FEAS_TOL);
    let slopes: Vec<f64> = ys.windows(2).zip(&widths).map(|(w, h)| (w[1] - w[0]) / h).collect();
    let convex = slopes.windows(2).all(|s| s[1] >= s[0] - 1e-12);
    let tangent = slopes.last().is_none_or(|&s| s <= dfq + 1e-9);
    (ok && convex && tangent).then(|| inner.to_vec())
}

/// The self-polar function obtained by splicing the head through the given
/// (already feasible) knot values at `q`.
pub fn spliced_candidate(q: f64, knot_values: &[f64]) -> Result<PLFunction<f64>> {
    let (fq, dfq) = curve_f64(q)?;
    let mut points = vec![(0.0, 0.0)];
    points.extend(knot_positions(q, knot_values.len()).into_iter().zip(knot_values.iter().copied()));
    points.push((q, fq));
    let head = PLFunction::new(points, Tail::Slope(dfq))?;
    Ok(splice_at(&head, &q, fq))
}

struct Evaluator<'a> {
    spec: &'a SearchSpec,
    restart: usize,
    rows: Vec<TraceRow>,
}

impl Evaluator<'_> {
    /// Maps raw optimizer coordinates `(q, λ₁..λ_k)` into the box, then onto
    /// the feasible set (`λ` interpolates between the envelopes), and returns
    /// the negated product.
    fn cost(&mut self, theta: &[f64]) -> f64 {
        let q = theta[0].clamp(Q_FLOOR, self.spec.q_max);
        let (fq, dfq) = curve_f64(q).expect("q > 1");
        let raw: Vec<f64> = knot_positions(q, self.spec.knots)
            .iter()
            .zip(&theta[1..])
            .map(|(&x, &l)| {
                let lo = (dfq * (x - 1.0 / q)).max(0.0);
                let hi = fq / q * x;
                lo + l.clamp(0.0, 1.0) * (hi - lo)
            })
            .collect();
        let projected = project(q, &raw);
        let product = projected.as_ref().and_then(|ks| {
            let f = spliced_candidate(q, ks).ok()?;
            santalo_product_pl(&f, Transform::Polar, self.spec.dim, self.spec.tol)
                .ok()
                .map(|r| r.product)
        });
        self.rows.push(TraceRow {
            evaluation: 0,
            restart: self.restart,
            q,
            knots: projected.unwrap_or(raw),
            product,
        });
        product.map_or(f64::INFINITY, |p| -p)
    }
}

/// Derivative-free simplex descent, stopping after `budget` evaluations.
fn nelder_mead(cost: &mut dyn FnMut(&[f64]) -> f64, x0: &[f64], steps: &[f64], budget: usize) {
    let d = x0.len();
    let mut evals = 0;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        cost(x)
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    for i in 0..=d {
        if evals >= budget {
            return;
        }
        let mut x = x0.to_vec();
        if i > 0 {
            x[i - 1] += steps[i - 1];
        }
        let fx = eval(&x, &mut evals);
        simplex.push((x, fx));
    }
    let combine = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(ai, bi)| ai + t * (bi - ai)).collect()
    };
    while evals < budget {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex
            .iter()
            .skip(1)
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread < 1e-12 {
            return;
        }
        let centroid: Vec<f64> = (0..d)
            .map(|j| simplex[..d].iter().map(|(x, _)| x[j]).sum::<f64>() / d as f64)
            .collect();
        let worst = simplex[d].clone();
        let reflected = combine(&centroid, &worst.0, -1.0);
        let fr = eval(&reflected, &mut evals);
        if fr < simplex[0].1 {
            if evals >= budget {
                simplex[d] = (reflected, fr);
                return;
            }
            let expanded = combine(&centroid, &worst.0, -2.0);
            let fe = eval(&expanded, &mut evals);
            simplex[d] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (reflected, fr);
        } else {
            if evals >= budget {
                return;
            }
            let (toward, f_ref) = if fr < worst.1 { (&reflected, fr) } else { (&worst.0, worst.1) };
            let contracted = combine(&centroid, toward, 0.5);
            let fc = eval(&contracted, &mut evals);
            if fc < f_ref {
                simplex[d] = (contracted, fc);
            } else {
                for i in 1..=d {
                    if evals >= budget {
                        return;
                    }
                    let x = combine(&simplex[0].0, &simplex[i].0, 0.5);
                    let fx = eval(&x, &mut evals);
                    simplex[i] = (x, fx);
                }
            }
        }
    }
}

/// Searches the spliced self-polar family for a large polar Santaló product.
/// The outcome is exploratory data, not a certified maximum.
pub fn search_max(spec: &SearchSpec) -> Result<SearchResult> {
    spec.validate()?;
    let restarts = spec.restarts.min(spec.budget);
    let share = |r: usize| spec.budget / restarts + usize::from(r < spec.budget % restarts);

    let per_restart: Vec<Vec<TraceRow>> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            rng.set_stream(r as u64);
            let mut x0 = vec![rng.random_range(Q_FLOOR..=spec.q_max)];
            x0.extend((0..spec.knots).map(|_| rng.random_range(0.0..=1.0)));
            let mut steps = vec![0.2 * (spec.q_max - 1.0)];
            steps.extend(std::iter::repeat_n(0.25, spec.knots));
            let mut ev = Evaluator { spec, restart: r, rows: Vec::new() };
            nelder_mead(&mut |x| ev.cost(x), &x0, &steps, share(r));
            ev.rows
        })
        .collect();

    let mut trace: Vec<TraceRow> = per_restart.into_iter().flatten().collect();
    for (i, row) in trace.iter_mut().enumerate() {
        row.evaluation = i;
    }
    let discarded = trace.iter().filter(|r| r.product.is_none()).count();
    let best_row = trace
        .iter()
        .filter_map(|r| r.product.map(|p| (r, p)))
        .fold(None::<(&TraceRow, f64)>, |acc, (r, p)| match acc {
            Some((_, bp)) if bp >= p => acc,
            _ => Some((r, p)),
        })
        .ok_or_else(|| Error::InvalidArgument("no feasible candidate within the budget".into()))?;
    let (row, best_product) = best_row;
    Ok(SearchResult {
        best: spliced_candidate(row.q, &row.knots)?,
        best_q: row.q,
        best_knots: row.knots.clone(),
        best_product,
        seed: spec.seed,
        discarded,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotonic_pools_violators_and_keeps_weighted_sum() {
        let s = isotonic(&[1.0, 3.0, 2.0, 4.0], &[1.0, 1.0, 3.0, 1.0]);
        assert_eq!(s, vec![1.0, 2.25, 2.25, 4.0]);
        let sum = |v: &[f64]| v.iter().zip([1.0, 1.0, 3.0, 1.0]).map(|(a, w)| a * w).sum::<f64>();
        assert!((sum(&s) - sum(&[1.0, 3.0, 2.0, 4.0])).abs() < 1e-12);
    }

    #[test]
    fn projection_lands_in_the_slab() {
        let q = 2.0;
        let (fq, _) = curve_f64(q).unwrap();
        let raw = vec![1.5, -1.0, 0.9];
        let p = project(q, &raw).unwrap();
        assert_eq!(project(q, &p).unwrap(), p, "projection is idempotent");
        let f = spliced_candidate(q, &p).unwrap();
        assert!((f.eval_f64(q) - fq).abs() < 1e-12);
        let verdict = crate::selfpolar::is_self_polar(&f, crate::selfpolar::DEFAULT_TAU).unwrap();
        assert!(verdict.is_self_polar, "{verdict:?}");
    }

    #[test]
    fn nelder_mead_minimises_a_quadratic() {
        let mut calls = 0;
        let mut best = f64::INFINITY;
        nelder_mead(
            &mut |x| {
                calls += 1;
                let v = (x[0] - 1.0).powi(2) + 2.0 * (x[1] + 0.5).powi(2);
                best = best.min(v);
                v
            },
            &[0.0, 0.0],
            &[0.3, 0.3],
            300,
        );
        assert!(calls <= 300);
        assert!(best < 1e-10);
    }

    #[test]
    fn search_is_deterministic_and_self_polar() {
        let spec = SearchSpec { budget: 40, knots: 2, restarts: 2, seed: 7, ..Default::default() };
        let a = search_max(&spec).unwrap();
        let b = search_max(&spec).unwrap();
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.trace.len(), 40);
        let v = crate::selfpolar::is_self_polar(&a.best, crate::selfpolar::DEFAULT_TAU).unwrap();
        assert!(v.is_self_polar);
        let mut csv = Vec::new();
        a.write_trace_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("iteration,restart,q,knot1,knot2,product\n"));
        assert_eq!(text.lines().count(), 41);
    }
}
