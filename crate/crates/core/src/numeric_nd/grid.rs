use std::io::{Read, Write};

use rayon::prelude::*;

use super::{polar_set_2d, Point2, Polygon2D};
use crate::pl::ExtValue;
use crate::{Error, Result};

/// Function sampled on an origin-centred rectangular grid. Node `(i, j)` sits
/// at `((i − (nx−1)/2)·hx, (j − (ny−1)/2)·hy)`; `nx` and `ny` are odd so the
/// origin is a node. Values are stored row by row (`j` outer).
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction2D {
    nx: usize,
    ny: usize,
    hx: f64,
    hy: f64,
    values: Vec<ExtValue<f64>>,
}

impl GridFunction2D {
    pub fn new(nx: usize, ny: usize, hx: f64, hy: f64, values: Vec<ExtValue<f64>>) -> Result<Self> {
        if nx.is_multiple_of(2) || ny.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "grid must have an odd number of nodes per axis to contain the origin, got {nx}x{ny}"
            )));
        }
        if !(hx > 0.0 && hy > 0.0 && hx.is_finite() && hy.is_finite()) {
            return Err(Error::InvalidArgument("grid spacing must be positive".into()));
        }
        if values.len() != nx * ny {
            return Err(Error::InvalidArgument(format!(
                "expected {} values, got {}",
                nx * ny,
                values.len()
            )));
        }
        for v in &values {
            if let ExtValue::Finite(x) = v {
                if !x.is_finite() || *x < 0.0 {
                    return Err(Error::InvalidArgument(format!("grid value {x} is not in [0, inf]")));
                }
            }
        }
        let g = Self { nx, ny, hx, hy, values };
        if g.value(nx / 2, ny / 2) != &ExtValue::Finite(0.0) {
            return Err(Error::InvalidArgument("value at the origin must be 0".into()));
        }
        Ok(g)
    }

    /// Samples `f` on a grid spanning `[−ax, ax] × [−ay, ay]`.
    pub fn sample(
        nx: usize,
        ny: usize,
        ax: f64,
        ay: f64,
        f: impl Fn(f64, f64) -> ExtValue<f64>,
    ) -> Result<Self> {
        if nx < 3 || ny < 3 {
            return Err(Error::InvalidArgument("grid needs at least 3 nodes per axis".into()));
        }
        let hx = 2.0 * ax / (nx - 1) as f64;
        let hy = 2.0 * ay / (ny - 1) as f64;
        let mut values = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let x = (i as f64 - (nx / 2) as f64) * hx;
                let y = (j as f64 - (ny / 2) as f64) * hy;
                values.push(if i == nx / 2 && j == ny / 2 { ExtValue::Finite(0.0) } else { f(x, y) });
            }
        }
        Self::new(nx, ny, hx, hy, values)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn spacing(&self) -> (f64, f64) {
        (self.hx, self.hy)
    }

    pub fn node(&self, i: usize, j: usize) -> Point2 {
        [
            (i as f64 - (self.nx / 2) as f64) * self.hx,
            (j as f64 - (self.ny / 2) as f64) * self.hy,
        ]
    }

    pub fn value(&self, i: usize, j: usize) -> &ExtValue<f64> {
        &self.values[j * self.nx + i]
    }

    pub fn zero_set(&self) -> Vec<Point2> {
        let mut out = Vec::new();
        for j in 0..self.ny {
            for i in 0..self.nx {
                if self.value(i, j) == &ExtValue::Finite(0.0) {
                    out.push(self.node(i, j));
                }
            }
        }
        out
    }

    /// CSV with header `x,y,value`; infinite values are written as `inf`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x", "y", "value"]).map_err(csv_err)?;
        for j in 0..self.ny {
            for i in 0..self.nx {
                let [x, y] = self.node(i, j);
                let v = match self.value(i, j) {
                    ExtValue::Finite(v) => v.to_string(),
                    ExtValue::Infinite => "inf".to_string(),
                };
                w.write_record([x.to_string(), y.to_string(), v]).map_err(csv_err)?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
        let mut rows: Vec<(f64, f64, ExtValue<f64>)> = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(csv_err)?;
            if rec.len() != 3 {
                return Err(Error::Parse(format!("expected 3 columns, got {}", rec.len())));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad number {s:?}")))
            };
            let v = if rec[2].eq_ignore_ascii_case("inf") {
                ExtValue::Infinite
            } else {
                ExtValue::Finite(num(&rec[2])?)
            };
            rows.push((num(&rec[0])?, num(&rec[1])?, v));
        }
        if rows.is_empty() {
            return Err(Error::Parse("empty grid".into()));
        }
        let axis = |coords: Vec<f64>| -> Result<(usize, f64)> {
            let mut c = coords;
            c.sort_by(f64::total_cmp);
            c.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + b.abs()));
            let n = c.len();
            if n < 3 || n.is_multiple_of(2) {
                return Err(Error::Parse(format!("axis has {n} distinct coordinates; need an odd count ≥ 3")));
            }
            let h = (c[n - 1] - c[0]) / (n - 1) as f64;
            if (c[0] + c[n - 1]).abs() > 1e-9 * h.max(1.0) {
                return Err(Error::Parse("grid is not centred on the origin".into()));
            }
            Ok((n, h))
        };
        let (nx, hx) = axis(rows.iter().map(|r| r.0).collect())?;
        let (ny, hy) = axis(rows.iter().map(|r| r.1).collect())?;
        if rows.len() != nx * ny {
            return Err(Error::Parse(format!("expected {} rows for a {nx}x{ny} grid, got {}", nx * ny, rows.len())));
        }
        let mut values: Vec<Option<ExtValue<f64>>> = vec![None; nx * ny];
        for (x, y, v) in rows {
            let fi = x / hx + (nx / 2) as f64;
            let fj = y / hy + (ny / 2) as f64;
            let (i, j) = (fi.round(), fj.round());
            if (fi - i).abs() > 1e-6 || (fj - j).abs() > 1e-6 {
                return Err(Error::Parse(format!("point ({x}, {y}) is not on a uniform grid")));
            }
            let slot = &mut values[j as usize * nx + i as usize];
            if slot.is_some() {
                return Err(Error::Parse(format!("duplicate node ({x}, {y})")));
            }
            *slot = Some(v);
        }
        let values = values.into_iter().map(|v| v.expect("all nodes present")).collect();
        Self::new(nx, ny, hx, hy, values)
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct GridPolarOptions {
    /// Continue the sampled function linearly past the grid boundary along
    /// the axis directions, using the last one-sided difference as slope.
    /// Without it the result is a sup over the grid alone, which misses
    /// suprema approached only at infinity.
    pub extend_tails: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QueryValue {
    pub value: ExtValue<f64>,
    /// The query lies within one grid cell of the boundary of the zero set's
    /// polar, where the grid cannot decide between a finite value and ∞.
    pub inconclusive: bool,
}

/// Brute-force polar of a sampled function at each query point.
pub fn polar_grid_2d(f: &GridFunction2D, queries: &[Point2], opts: GridPolarOptions) -> Vec<QueryValue> {
    let zero_polar = polar_set_2d(&f.zero_set());
    let cell = f.hx.hypot(f.hy);
    let extension = if opts.extend_tails { tail_terms(f) } else { Vec::new() };

    const CHUNK: usize = 64;
    let maxima: Vec<f64> = queries
        .par_chunks(CHUNK)
        .flat_map_iter(|chunk| sup_over_grid(f, chunk, &extension))
        .collect();

    queries
        .iter()
        .zip(maxima)
        .map(|(q, m)| {
            let inconclusive = near_boundary(&zero_polar, *q, cell);
            let value = if zero_polar.contains(*q, 0.0) {
                ExtValue::Finite(m.max(0.0))
            } else {
                ExtValue::Infinite
            };
            QueryValue { value, inconclusive }
        })
        .collect()
}

fn near_boundary(p: &Polygon2D, q: Point2, cell: f64) -> bool {
    p.normals.iter().any(|n| {
        let d = (1.0 - (n[0] * q[0] + n[1] * q[1])) / n[0].hypot(n[1]);
        d.abs() < cell
    })
}

/// Each finite positive node contributes the affine function
/// `q ↦ a·q₀ + b·q₁ − c` with `(a, b, c) = (y₀, y₁, 1)/f(y)`.
fn sup_over_grid(f: &GridFunction2D, queries: &[Point2], extra: &[[f64; 3]]) -> Vec<f64> {
    let u: Vec<f64> = queries.iter().map(|q| q[0]).collect();
    let v: Vec<f64> = queries.iter().map(|q| q[1]).collect();
    let mut best = vec![f64::NEG_INFINITY; queries.len()];
    let mut update = |a: f64, b: f64, c: f64| {
        for ((m, &uu), &vv) in best.iter_mut().zip(&u).zip(&v) {
            *m = m.max(a * uu + b * vv - c);
        }
    };
    for j in 0..f.ny {
        let y1 = (j as f64 - (f.ny / 2) as f64) * f.hy;
        for i in 0..f.nx {
            if let ExtValue::Finite(val) = f.values[j * f.nx + i] {
                if val > 0.0 {
                    let y0 = (i as f64 - (f.nx / 2) as f64) * f.hx;
                    let c = 1.0 / val;
                    update(y0 * c, y1 * c, c);
                }
            }
        }
    }
    for t in extra {
        update(t[0], t[1], t[2]);
    }
    best
}

/// Limits `⟨q, e⟩/σ` of the objective along the linear continuation
/// `f(y + t·e) = f(y) + σ·t` from each boundary node in outward axis
/// direction `e`, where `σ > 0` is the last difference quotient.
fn tail_terms(f: &GridFunction2D) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    let mut push = |outer: &ExtValue<f64>, inner: &ExtValue<f64>, h: f64, dir: Point2| {
        if let (ExtValue::Finite(a), ExtValue::Finite(b)) = (outer, inner) {
            let sigma = (a - b) / h;
            if sigma > 0.0 {
                out.push([dir[0] / sigma, dir[1] / sigma, 0.0]);
            }
        }
    };
    let (nx, ny) = (f.nx, f.ny);
    for j in 0..ny {
        push(f.value(nx - 1, j), f.value(nx - 2, j), f.hx, [1.0, 0.0]);
        push(f.value(0, j), f.value(1, j), f.hx, [-1.0, 0.0]);
    }
    for i in 0..nx {
        push(f.value(i, ny - 1), f.value(i, ny - 2), f.hy, [0.0, 1.0]);
        push(f.value(i, 0), f.value(i, 1), f.hy, [0.0, -1.0]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip(n: usize, ay: f64) -> GridFunction2D {
        GridFunction2D::sample(n, n, 1.05, ay, |x, y| {
            if x.abs() <= 1.0 {
                ExtValue::Finite(y.abs())
            } else {
                ExtValue::Infinite
            }
        })
        .unwrap()
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(GridFunction2D::new(2, 3, 1.0, 1.0, vec![ExtValue::Finite(0.0); 6]).is_err());
        assert!(GridFunction2D::new(3, 3, 1.0, 1.0, vec![ExtValue::Finite(1.0); 9]).is_err());
        assert!(GridFunction2D::new(3, 3, 1.0, 1.0, vec![ExtValue::Finite(0.0); 8]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let g = strip(11, 2.0);
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("x,y,value\n"));
        assert!(text.contains(",inf\n"));
        let back = GridFunction2D::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.dims(), g.dims());
        for j in 0..11 {
            for i in 0..11 {
                match (g.value(i, j), back.value(i, j)) {
                    (ExtValue::Finite(a), ExtValue::Finite(b)) => assert!((a - b).abs() < 1e-12),
                    (a, b) => assert_eq!(a, b),
                }
            }
        }
    }

    #[test]
    fn strip_polar_with_tails_is_the_strip() {
        let g = strip(201, 4.0);
        let qs = [[0.0, 0.5], [0.3, -2.0], [-0.7, 1.0], [0.5, 0.0]];
        let out = polar_grid_2d(&g, &qs, GridPolarOptions { extend_tails: true });
        for (q, r) in qs.iter().zip(&out) {
            assert!(!r.inconclusive);
            let v = r.value.finite().copied().unwrap();
            assert!((v - q[1].abs()).abs() < 2e-2, "{q:?}: {v}");
        }
        let far = polar_grid_2d(&g, &[[1.5, 0.0]], GridPolarOptions::default());
        assert_eq!(far[0].value, ExtValue::Infinite);
    }

    #[test]
    fn plain_sup_is_a_lower_bound_for_the_strip() {
        let g = strip(101, 4.0);
        let qs: Vec<Point2> = (0..20).map(|k| [-0.9 + 0.09 * k as f64, 3.0 - 0.3 * k as f64]).collect();
        for (q, r) in qs.iter().zip(polar_grid_2d(&g, &qs, GridPolarOptions::default())) {
            let v = r.value.finite().copied().unwrap();
            assert!(v <= q[1].abs() + 1e-12);
            assert!(v >= q[1].abs() - (1.0 - q[0].abs()) / 4.0 - 0.05);
        }
    }

    #[test]
    fn boundary_queries_are_flagged() {
        let g = strip(101, 4.0);
        let r = polar_grid_2d(&g, &[[1.0, 0.5], [0.2, 0.5]], GridPolarOptions::default());
        assert!(r[0].inconclusive);
        assert!(!r[1].inconclusive);
    }

    #[test]
    fn half_square_norm_is_self_polar() {
        let g = GridFunction2D::sample(161, 161, 4.0, 4.0, |x, y| ExtValue::Finite((x * x + y * y) / 2.0))
            .unwrap();
        let qs = [[1.0, 0.0], [0.6, -0.8], [0.3, 0.4], [1.2, 1.0]];
        for (q, r) in qs.iter().zip(polar_grid_2d(&g, &qs, GridPolarOptions::default())) {
            let want = (q[0] * q[0] + q[1] * q[1]) / 2.0;
            let v = r.value.finite().copied().unwrap();
            assert!(v <= want + 1e-12 && v > want - 1e-2, "{q:?}: {v} vs {want}");
        }
    }
}
