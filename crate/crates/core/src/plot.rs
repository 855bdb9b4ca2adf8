//! Exact CSV form of a function and SVG graphs.

use std::fmt::Write as _;

use crate::pl::{ExtValue, PLFunction, Tail};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Breakpoints as `x,value` rows, followed by one tail row at `x_last + 1`
/// whose value is either `inf` or a point on the tail line.
pub fn to_csv<S: Scalar>(f: &PLFunction<S>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["x", "value"]).map_err(err)?;
    for (x, v) in f.breakpoints() {
        w.write_record([x.to_string(), v.to_string()]).map_err(err)?;
    }
    let (xm, vm) = f.last();
    let x_tail = xm.clone() + S::one();
    let v_tail = match f.tail() {
        Tail::Infinite => "inf".to_string(),
        Tail::Slope(s) => (vm.clone() + s.clone()).to_string(),
    };
    w.write_record([x_tail.to_string(), v_tail]).map_err(err)?;
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

pub fn from_csv<S: Scalar>(text: &str) -> Result<PLFunction<S>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        if rec.len() != 2 {
            return Err(Error::Parse(format!("expected 2 columns, got {}", rec.len())));
        }
        rows.push((rec[0].to_string(), rec[1].to_string()));
    }
    let (tx, tv) = rows
        .pop()
        .ok_or_else(|| Error::Parse("csv needs breakpoint rows and a tail row".into()))?;
    let mut points = Vec::with_capacity(rows.len());
    for (x, v) in &rows {
        points.push((S::parse(x)?, S::parse(v)?));
    }
    let (xm, vm) = points
        .last()
        .cloned()
        .ok_or_else(|| Error::Parse("csv has no breakpoint rows".into()))?;
    let tail = if tv.eq_ignore_ascii_case("inf") {
        Tail::Infinite
    } else {
        let dx = S::parse(&tx)? - xm;
        if !dx.gt0() {
            return Err(Error::Parse("tail row must lie right of the last breakpoint".into()));
        }
        Tail::Slope((S::parse(&tv)? - vm) / dx)
    };
    PLFunction::new(points, tail)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SvgOptions {
    pub width: u32,
    pub height: u32,
    /// Right end of the plotted window; chosen from the breakpoints if `None`.
    pub x_max: Option<f64>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self { width: 800, height: 600, x_max: None }
    }
}

const MARGIN: f64 = 50.0;
const COLORS: [&str; 3] = ["#1f5fa8", "#c2452d", "#3a8a3a"];

struct Frame {
    w: f64,
    h: f64,
    x_max: f64,
    y_max: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + x / self.x_max * (self.w - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        self.h - MARGIN - y.min(self.y_max) / self.y_max * (self.h - 2.0 * MARGIN)
    }
}

fn default_x_max(fs: &[&PLFunction<f64>]) -> f64 {
    let far = fs
        .iter()
        .map(|f| f.last().0)
        .fold(1.0, f64::max);
    1.5 * far
}

fn samples(f: &PLFunction<f64>, x_max: f64, n: usize) -> Vec<(f64, Option<f64>)> {
    let mut xs: Vec<f64> = (0..=n).map(|k| x_max * k as f64 / n as f64).collect();
    xs.extend(f.breakpoints().iter().map(|p| p.0).filter(|&x| x <= x_max));
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs.into_iter()
        .map(|x| {
            let v = match f.eval_unchecked(&x) {
                ExtValue::Finite(v) => Some(v),
                ExtValue::Infinite => None,
            };
            (x, v)
        })
        .collect()
}

fn polyline(out: &mut String, frame: &Frame, pts: &[(f64, Option<f64>)], color: &str, dash: bool) {
    let mut run: Vec<String> = Vec::new();
    let flush = |run: &mut Vec<String>, out: &mut String| {
        if run.len() >= 2 {
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{color}" stroke-width="2"{} points="{}"/>"#,
                if dash { r#" stroke-dasharray="6 4""# } else { "" },
                run.join(" ")
            );
        }
        run.clear();
    };
    for (x, v) in pts {
        match v {
            Some(v) => run.push(format!("{:.2},{:.2}", frame.px(*x), frame.py(*v))),
            None => flush(&mut run, out),
        }
    }
    flush(&mut run, out);
}

/// Graphs of one or more functions on a shared window. Where any of them is
/// `+∞` the x-interval is shaded.
pub fn to_svg(curves: &[(&str, &PLFunction<f64>)], extra: Option<(&str, Vec<(f64, f64)>)>, opts: SvgOptions) -> String {
    let fs: Vec<&PLFunction<f64>> = curves.iter().map(|c| c.1).collect();
    let x_max = opts.x_max.unwrap_or_else(|| default_x_max(&fs));
    let sampled: Vec<Vec<(f64, Option<f64>)>> = fs.iter().map(|f| samples(f, x_max, 400)).collect();
    let y_max = sampled
        .iter()
        .flatten()
        .filter_map(|p| p.1)
        .chain(extra.iter().flat_map(|e| e.1.iter().map(|p| p.1)))
        .fold(1.0, f64::max)
        * 1.05;
    let frame = Frame { w: opts.width as f64, h: opts.height as f64, x_max, y_max };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = opts.width,
        h = opts.height
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let domain_end = fs
        .iter()
        .filter(|f| matches!(f.tail(), Tail::Infinite))
        .map(|f| f.last().0)
        .fold(f64::INFINITY, f64::min);
    if domain_end < x_max {
        let x0 = frame.px(domain_end);
        let _ = writeln!(
            out,
            r##"<rect class="infinite" x="{x0:.2}" y="{MARGIN}" width="{:.2}" height="{:.2}" fill="#d8d8d8"/>"##,
            frame.px(x_max) - x0,
            frame.h - 2.0 * MARGIN
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle">+inf</text>"#,
            0.5 * (x0 + frame.px(x_max)),
            MARGIN + 20.0
        );
    }
    let (bx, by) = (frame.px(0.0), frame.py(0.0));
    let _ = writeln!(
        out,
        r#"<line x1="{bx:.2}" y1="{by:.2}" x2="{:.2}" y2="{by:.2}" stroke="black"/>"#,
        frame.px(x_max)
    );
    let _ = writeln!(
        out,
        r#"<line x1="{bx:.2}" y1="{by:.2}" x2="{bx:.2}" y2="{MARGIN}" stroke="black"/>"#
    );
    let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="12">{x_max:.3}</text>"#, frame.px(x_max) - 20.0, by + 18.0);
    let _ = writeln!(out, r#"<text x="5" y="{:.2}" font-size="12">{:.3}</text>"#, MARGIN + 4.0, y_max);

    for (k, ((name, _), pts)) in curves.iter().zip(&sampled).enumerate() {
        let color = COLORS[k % COLORS.len()];
        polyline(&mut out, &frame, pts, color, false);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="14" fill="{color}">{name}</text>"#,
            MARGIN + 10.0,
            MARGIN + 20.0 + 18.0 * k as f64
        );
    }
    if let Some((name, pts)) = extra {
        let pts: Vec<(f64, Option<f64>)> = pts.into_iter().map(|(x, v)| (x, Some(v))).collect();
        polyline(&mut out, &frame, &pts, COLORS[2], true);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="14" fill="{}">{name}</text>"#,
            MARGIN + 10.0,
            MARGIN + 20.0 + 18.0 * curves.len() as f64,
            COLORS[2]
        );
    }
    out.push_str("</svg>\n");
    out
}

/// `φ`, `φ°` and the gap `|φ − φ°|` where both are finite.
pub fn overlay_svg(f: &PLFunction<f64>, polar: &PLFunction<f64>, opts: SvgOptions) -> String {
    let x_max = opts.x_max.unwrap_or_else(|| default_x_max(&[f, polar]));
    let gap: Vec<(f64, f64)> = (0..=400)
        .filter_map(|k| {
            let x = x_max * k as f64 / 400.0;
            match (f.eval_unchecked(&x), polar.eval_unchecked(&x)) {
                (ExtValue::Finite(a), ExtValue::Finite(b)) => Some((x, (a - b).abs())),
                _ => None,
            }
        })
        .collect();
    to_svg(
        &[("phi", f), ("polar", polar)],
        Some(("gap", gap)),
        SvgOptions { x_max: Some(x_max), ..opts },
    )
}
