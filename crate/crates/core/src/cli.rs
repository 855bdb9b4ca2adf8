//! Command-line front end. [`run`] does all the work so it can be driven from
//! tests; `main` only forwards process arguments and streams.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::numeric_nd::{polar_grid_2d, GridFunction2D, GridPolarOptions, Point2};
use crate::pl::{compare, from_json, json_mode, sup_gap, to_json, ExtValue, PLFunction};
use crate::plot::{from_csv, overlay_svg, to_csv, to_svg, SvgOptions};
use crate::santalo::{
    santalo_product_fn, santalo_product_pl, search_max, Analytic, IntegralResult, ProductResult,
    SearchSpec, Transform,
};
use crate::scalar::{Mode, Rational, Scalar};
use crate::selfpolar::{classify, envelopes, is_self_polar, splice, PhiP, TangencyClass};
use crate::transforms::{legendre_pl, polar_numeric_1d, polar_pl, polar_with_flags, NumericPolarOptions};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    /// 0 success, 1 verification failed (stdout carries a witness), 2 invalid input.
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "polarkit", version, about = "Polarity and self-polar functions on the half-line")]
struct Cli {
    /// Verification tolerance (float mode) and integration / refinement tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Number mode: `rational` (exact) or `float`. Inferred from the input when omitted.
    #[arg(long, global = true, value_parser = parse_mode)]
    mode: Option<Mode>,
    /// Read the input from this file instead of stdin.
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse::<Mode>().map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a function and print its JSON.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Polar or Legendre transform of the input function.
    Transform {
        #[arg(long, value_enum, default_value_t = Op::Polar)]
        op: Op,
    },
    /// Tangency class of the input function relative to F(x) = sqrt(x^2 - 1).
    Classify,
    /// Lower and upper envelope of the class touching F at q.
    Envelopes {
        #[arg(long)]
        q: String,
    },
    /// Splice the input function with its polar at the contact point.
    Splice,
    /// Coefficient, contact point and values of c_p x^p.
    Family {
        #[arg(long)]
        p: String,
        #[arg(long, value_delimiter = ',')]
        at: Vec<f64>,
    },
    Verify(VerifyArgs),
    /// Product of the integrals of e^{-phi} and e^{-T phi} over R^n.
    Santalo {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Op::Polar)]
        transform: Op,
    },
    /// Exploratory search for self-polar functions with a large polar product.
    Search {
        #[arg(long, default_value_t = 4.0)]
        q_max: f64,
        #[arg(long, default_value_t = 0)]
        knots: usize,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Write the evaluation trace as CSV to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Polar of a function sampled on a planar grid, at query points.
    Polar2d {
        /// CSV with columns x,y,value ("inf" allowed).
        #[arg(long)]
        grid: PathBuf,
        /// CSV with columns x,y.
        #[arg(long)]
        queries: PathBuf,
        /// Continue the samples linearly past the grid edge along the axes.
        #[arg(long)]
        extend_tails: bool,
    },
    /// Graph of the input function as SVG or exact CSV.
    Plot {
        #[arg(long, conflicts_with = "csv", required_unless_present = "csv")]
        svg: bool,
        #[arg(long)]
        csv: bool,
        /// Overlay the polar and the gap curve (SVG only).
        #[arg(long)]
        with_polar: bool,
        #[arg(long)]
        x_max: Option<f64>,
    },
    /// Numeric polar of the input (piecewise linear or analytic) at given points.
    NumericPolar {
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        x: Vec<f64>,
        /// log10 range of the inner search grid, e.g. -8,12.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        grid_decades: Option<Vec<f64>>,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// beta x.
    Line {
        #[arg(long)]
        beta: String,
    },
    /// 0 on [0, a], +inf beyond.
    Indicator {
        #[arg(long)]
        a: String,
    },
    Envelope {
        #[arg(long)]
        q: String,
        #[arg(long, value_enum, default_value_t = Which::Upper)]
        which: Which,
    },
    /// Secant interpolation of c_p x^p on a uniform grid.
    Family {
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 64)]
        knots: usize,
        #[arg(long, default_value_t = 4.0)]
        x_max: f64,
    },
    Splice {
        #[arg(long)]
        q: Option<String>,
        #[arg(long, value_enum, default_value_t = Source::EnvelopeUpper)]
        of: Source,
    },
    /// Re-ingest the output of `plot --csv`.
    FromCsv,
}

#[derive(Args, Debug)]
#[command(group(
    clap::ArgGroup::new("check")
        .required(true)
        .args(["self_polar", "involution", "order_reversal"])
))]
struct VerifyArgs {
    #[arg(long)]
    self_polar: bool,
    /// polar(polar(phi)) = phi for the input, or for every *.json in --dir.
    #[arg(long)]
    involution: bool,
    /// Input is a JSON array [phi1, phi2] with phi1 <= phi2.
    #[arg(long)]
    order_reversal: bool,
    #[arg(long)]
    dir: Option<PathBuf>,
    /// Write an overlay of phi, its polar and the gap (self-polar check).
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    Polar,
    Legendre,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Source {
    EnvelopeUpper,
    EnvelopeLower,
    Stdin,
}

struct Outcome {
    code: i32,
    stdout: String,
}

impl Outcome {
    fn ok(v: Value) -> Self {
        Self { code: 0, stdout: format!("{v}\n") }
    }

    fn checked(passed: bool, v: Value) -> Self {
        Self { code: if passed { 0 } else { 1 }, stdout: format!("{v}\n") }
    }

    fn text(s: String) -> Self {
        Self { code: 0, stdout: s }
    }
}

macro_rules! by_mode {
    ($mode:expr, $f:ident ( $($arg:expr),* )) => {
        match $mode {
            Mode::Rational => $f::<Rational>($($arg),*),
            Mode::Float => $f::<f64>($($arg),*),
        }
    };
}

/// Parses `args` (including the program name) and executes one command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 {
                CommandResult { exit_code: 0, stdout: rendered, stderr: String::new() }
            } else {
                CommandResult { exit_code: 2, stdout: String::new(), stderr: rendered }
            };
        }
    };
    match execute(&cli, stdin) {
        Ok(out) => CommandResult { exit_code: out.code, stdout: out.stdout, stderr: String::new() },
        Err(e) => CommandResult { exit_code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

struct Input<'a> {
    path: Option<&'a Path>,
    stdin: &'a mut dyn Read,
}

impl Input<'_> {
    fn text(&mut self) -> Result<String> {
        match self.path {
            Some(p) => Ok(std::fs::read_to_string(p)?),
            None => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                Ok(s)
            }
        }
    }

    fn json(&mut self) -> Result<Value> {
        Ok(serde_json::from_str(&self.text()?)?)
    }
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn ext<S: Scalar>(v: &ExtValue<S>) -> Value {
    match v {
        ExtValue::Finite(x) => x.to_json(),
        ExtValue::Infinite => json!("inf"),
    }
}

fn integral_json(r: &IntegralResult) -> Value {
    json!({"value": r.value, "estimated_error": r.estimated_error, "segments": r.segments})
}

fn product_json(p: &ProductResult, n: usize, op: Op) -> Value {
    json!({
        "product": p.product,
        "primal": integral_json(&p.primal),
        "dual": integral_json(&p.dual),
        "n": n,
        "transform": match op { Op::Polar => "polar", Op::Legendre => "legendre" },
    })
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome> {
    let mut input = Input { path: cli.input.as_deref(), stdin };
    let tol = cli.tol;
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("--tol must be nonnegative, got {tol}")));
    }
    match &cli.command {
        Command::Construct { what } => construct(what, cli.mode, tol, &mut input),
        Command::Transform { op } => {
            let v = input.json()?;
            by_mode!(cli.mode.unwrap_or(json_mode(&v)), transform_cmd(&v, *op))
        }
        Command::Classify => {
            let v = input.json()?;
            by_mode!(cli.mode.unwrap_or(json_mode(&v)), classify_cmd(&v, tol))
        }
        Command::Envelopes { q } => by_mode!(cli.mode.unwrap_or(Mode::Rational), envelopes_cmd(q)),
        Command::Splice => {
            let v = input.json()?;
            by_mode!(cli.mode.unwrap_or(json_mode(&v)), splice_cmd(&v, tol))
        }
        Command::Family { p, at } => family_cmd(p, at),
        Command::Verify(args) => verify(args, cli.mode, tol, &mut input),
        Command::Santalo { n, transform } => {
            let v = input.json()?;
            let t = match transform {
                Op::Polar => Transform::Polar,
                Op::Legendre => Transform::Legendre,
            };
            let tol = tol.max(1e-14);
            let p = match v.get("type").and_then(Value::as_str) {
                None | Some("pl") => {
                    by_mode!(cli.mode.unwrap_or(json_mode(&v)), santalo_pl(&v, t, *n, tol))?
                }
                Some(_) => {
                    let a = Analytic::from_json(&v)?;
                    santalo_product_fn(&|r| a.eval(r), t, *n, tol)?
                }
            };
            Ok(Outcome::ok(product_json(&p, *n, *transform)))
        }
        Command::Search { q_max, knots, budget, seed, restarts, n, trace } => {
            let spec = SearchSpec {
                q_max: *q_max,
                knots: *knots,
                budget: *budget,
                restarts: *restarts,
                seed: *seed,
                dim: *n,
                tol: tol.max(1e-14),
            };
            let result = search_max(&spec)?;
            if let Some(path) = trace {
                result.write_trace_csv(std::fs::File::create(path)?)?;
            }
            Ok(Outcome::ok(result.to_json()))
        }
        Command::Polar2d { grid, queries, extend_tails } => {
            let g = GridFunction2D::read_csv(std::fs::File::open(grid)?)?;
            let qs = read_queries(queries)?;
            let out = polar_grid_2d(&g, &qs, GridPolarOptions { extend_tails: *extend_tails });
            let rows: Vec<Value> = qs
                .iter()
                .zip(out)
                .map(|(q, r)| json!({"x": q[0], "y": q[1], "value": ext(&r.value), "inconclusive": r.inconclusive}))
                .collect();
            Ok(Outcome::ok(json!({ "results": rows })))
        }
        Command::Plot { svg, csv, with_polar, x_max } => {
            let v = input.json()?;
            let mode = cli.mode.unwrap_or(json_mode(&v));
            if *csv {
                return Ok(Outcome::text(by_mode!(mode, csv_cmd(&v))?));
            }
            debug_assert!(*svg);
            let f = by_mode!(mode, float_of(&v))?;
            let opts = SvgOptions { x_max: *x_max, ..Default::default() };
            let out = if *with_polar {
                overlay_svg(&f, &polar_pl(&f), opts)
            } else {
                to_svg(&[("phi", &f)], None, opts)
            };
            Ok(Outcome::text(out))
        }
        Command::NumericPolar { x, grid_decades } => {
            let v = input.json()?;
            let mut opts = NumericPolarOptions::default();
            if tol > 0.0 {
                opts.refine_tolerance = tol;
            }
            if let Some(d) = grid_decades {
                if d.len() != 2 {
                    return Err(Error::InvalidArgument("--grid-decades takes two numbers, e.g. -8,12".into()));
                }
                opts.y_grid_decades = (d[0], d[1]);
            }
            let values = match v.get("type").and_then(Value::as_str) {
                None | Some("pl") => {
                    let f = by_mode!(json_mode(&v), float_of(&v))?;
                    numeric_polar_values(&|r| f.eval_f64(r), x, &opts)?
                }
                Some(_) => {
                    let a = Analytic::from_json(&v)?;
                    numeric_polar_values(&|r| a.eval(r), x, &opts)?
                }
            };
            Ok(Outcome::ok(json!({ "values": values })))
        }
    }
}

fn numeric_polar_values(f: &dyn Fn(f64) -> f64, xs: &[f64], opts: &NumericPolarOptions) -> Result<Vec<Value>> {
    xs.iter()
        .map(|&x| Ok(json!([x, ext(&polar_numeric_1d(f, x, opts)?)])))
        .collect()
}

fn read_queries(path: &Path) -> Result<Vec<Point2>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Io(e.to_string()))?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        if rec.len() != 2 {
            return Err(Error::Parse(format!("query rows need 2 columns, got {}", rec.len())));
        }
        let p = |s: &str| s.parse::<f64>().map_err(|_| Error::Parse(format!("bad number {s:?}")));
        out.push([p(&rec[0])?, p(&rec[1])?]);
    }
    Ok(out)
}

fn float_of<S: Scalar>(v: &Value) -> Result<PLFunction<f64>> {
    Ok(from_json::<S>(v)?.to_float())
}

fn csv_cmd<S: Scalar>(v: &Value) -> Result<String> {
    to_csv(&from_json::<S>(v)?)
}

fn santalo_pl<S: Scalar>(v: &Value, t: Transform, n: usize, tol: f64) -> Result<ProductResult> {
    santalo_product_pl(&from_json::<S>(v)?, t, n, tol)
}

fn transform_cmd<S: Scalar>(v: &Value, op: Op) -> Result<Outcome> {
    let f = from_json::<S>(v)?;
    let out = match op {
        Op::Polar => {
            let r = polar_with_flags(&f);
            if r.degenerate {
                eprintln!("warning: constant tail, the polar collapses to the indicator of {{0}}");
            }
            r.function
        }
        Op::Legendre => legendre_pl(&f),
    };
    Ok(Outcome::ok(to_json(&out)))
}

fn class_json<S: Scalar>(c: &TangencyClass<S>) -> Value {
    match c {
        TangencyClass::NotTangent { min_gap, argmin } => {
            json!({"class": "not-tangent", "min_gap": num(*min_gap), "argmin": num(*argmin)})
        }
        TangencyClass::Finite { q, contact_value } => {
            json!({"class": "finite", "q": q.to_json(), "contact_value": contact_value.to_json()})
        }
        TangencyClass::AtOne => json!({"class": "at-one", "q": 1}),
        TangencyClass::AtInfinity => json!({"class": "at-infinity", "q": "inf"}),
    }
}

fn classify_cmd<S: Scalar>(v: &Value, tol: f64) -> Result<Outcome> {
    let f = from_json::<S>(v)?;
    match classify(&f, tol) {
        Ok(c) => Ok(Outcome::ok(class_json(&c))),
        Err(Error::BelowCurve { gap, at }) => Ok(Outcome::checked(
            false,
            json!({"class": "below-curve", "witness": {"x": num(at), "gap": num(gap)}}),
        )),
        Err(e) => Err(e),
    }
}

fn envelopes_cmd<S: Scalar>(q: &str) -> Result<Outcome> {
    let q = S::parse(q)?;
    let (lo, hi) = envelopes(&q)?;
    Ok(Outcome::ok(json!({"q": q.to_json(), "lower": to_json(&lo), "upper": to_json(&hi)})))
}

fn splice_cmd<S: Scalar>(v: &Value, tol: f64) -> Result<Outcome> {
    Ok(Outcome::ok(to_json(&splice(&from_json::<S>(v)?, tol)?)))
}

fn parse_p(p: &str) -> Result<PhiP> {
    let p: f64 = match p {
        "inf" | "infinity" => f64::INFINITY,
        s => s.parse().map_err(|_| Error::InvalidArgument(format!("bad exponent {s:?}")))?,
    };
    PhiP::new(p)
}

fn family_cmd(p: &str, at: &[f64]) -> Result<Outcome> {
    let phi = parse_p(p)?;
    let values: Vec<Value> = at.iter().map(|&x| json!([x, num(phi.eval(x))])).collect();
    Ok(Outcome::ok(json!({
        "p": num(phi.p()),
        "coefficient": phi.coefficient(),
        "contact_point": num(phi.contact_point()),
        "values": values,
    })))
}

fn construct(what: &Construct, mode: Option<Mode>, tol: f64, input: &mut Input) -> Result<Outcome> {
    fn simple<S: Scalar>(what: &Construct) -> Result<PLFunction<S>> {
        match what {
            Construct::Line { beta } => PLFunction::line(S::parse(beta)?),
            Construct::Indicator { a } => PLFunction::indicator(S::parse(a)?),
            Construct::Envelope { q, which } => {
                let (lo, hi) = envelopes(&S::parse(q)?)?;
                Ok(match which {
                    Which::Lower => lo,
                    Which::Upper => hi,
                })
            }
            _ => unreachable!("handled by the caller"),
        }
    }
    fn spliced<S: Scalar>(q: &Option<String>, of: Source, tol: f64, input: &mut Input) -> Result<Value> {
        let base = match of {
            Source::Stdin => from_json::<S>(&input.json()?)?,
            Source::EnvelopeUpper | Source::EnvelopeLower => {
                let q = q
                    .as_deref()
                    .ok_or_else(|| Error::InvalidArgument("--q is required for envelope splices".into()))?;
                let (lo, hi) = envelopes(&S::parse(q)?)?;
                if matches!(of, Source::EnvelopeUpper) { hi } else { lo }
            }
        };
        Ok(to_json(&splice(&base, tol)?))
    }
    fn csv_in<S: Scalar>(input: &mut Input) -> Result<Value> {
        Ok(to_json(&from_csv::<S>(&input.text()?)?))
    }

    let mode_or = |default| mode.unwrap_or(default);
    let v = match what {
        Construct::Line { .. } | Construct::Indicator { .. } | Construct::Envelope { .. } => {
            match mode_or(Mode::Rational) {
                Mode::Rational => to_json(&simple::<Rational>(what)?),
                Mode::Float => to_json(&simple::<f64>(what)?),
            }
        }
        Construct::Family { p, knots, x_max } => {
            if *knots == 0 || !(*x_max > 0.0) {
                return Err(Error::InvalidArgument("family needs --knots >= 1 and --x-max > 0".into()));
            }
            let xs: Vec<f64> = (1..=*knots).map(|k| x_max * k as f64 / *knots as f64).collect();
            let f = parse_p(p)?.to_pl(&xs)?;
            match mode_or(Mode::Float) {
                Mode::Float => to_json(&f),
                Mode::Rational => to_json(&f.to_mode::<Rational>()?),
            }
        }
        Construct::Splice { q, of } => by_mode!(mode_or(Mode::Rational), spliced(q, *of, tol, input))?,
        Construct::FromCsv => by_mode!(mode_or(Mode::Rational), csv_in(input))?,
    };
    Ok(Outcome::ok(v))
}

fn verify(args: &VerifyArgs, mode: Option<Mode>, tol: f64, input: &mut Input) -> Result<Outcome> {
    if args.self_polar {
        let v = input.json()?;
        let mode = mode.unwrap_or(json_mode(&v));
        if let Some(path) = &args.svg {
            let f = by_mode!(mode, float_of(&v))?;
            std::fs::write(path, overlay_svg(&f, &polar_pl(&f), SvgOptions::default()))?;
        }
        return by_mode!(mode, self_polar_cmd(&v, tol));
    }
    if args.involution {
        let mut rows = Vec::new();
        let mut all = true;
        match &args.dir {
            Some(dir) => {
                let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "json"))
                    .collect();
                files.sort();
                for path in files {
                    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path)?)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    let mut row = by_mode!(mode.unwrap_or(json_mode(&v)), involution_check(&v, tol))
                        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                    all &= row["passed"].as_bool() == Some(true);
                    row["file"] = json!(path.file_name().map(|n| n.to_string_lossy().into_owned()));
                    rows.push(row);
                }
            }
            None => {
                let v = input.json()?;
                let row = by_mode!(mode.unwrap_or(json_mode(&v)), involution_check(&v, tol))?;
                all = row["passed"].as_bool() == Some(true);
                rows.push(row);
            }
        }
        return Ok(Outcome::checked(all, json!({"all_passed": all, "results": rows})));
    }
    let v = input.json()?;
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::InvalidArgument("order reversal expects a JSON array [phi1, phi2]".into()))?;
    let mode = mode.unwrap_or(if json_mode(&pair[0]) == Mode::Rational || json_mode(&pair[1]) == Mode::Rational {
        Mode::Rational
    } else {
        Mode::Float
    });
    by_mode!(mode, order_reversal_check(&pair[0], &pair[1]))
}

fn self_polar_cmd<S: Scalar>(v: &Value, tol: f64) -> Result<Outcome> {
    let f = from_json::<S>(v)?;
    let verdict = is_self_polar(&f, tol)?;
    Ok(Outcome::checked(
        verdict.is_self_polar,
        json!({
            "is_self_polar": verdict.is_self_polar,
            "sup_gap": num(verdict.sup_gap),
            "witness": {"x": num(verdict.witness), "gap": num(verdict.sup_gap)},
            "mode": if verdict.exact { "exact" } else { "tolerance" },
            "above_curve": verdict.above_curve,
        }),
    ))
}

fn involution_check<S: Scalar>(v: &Value, tol: f64) -> Result<Value> {
    let f = from_json::<S>(v)?;
    let back = polar_pl(&polar_pl(&f));
    let gap = sup_gap(&f, &back)?;
    let passed = if S::tol() == 0.0 { back == f } else { gap.value <= tol };
    Ok(json!({
        "passed": passed,
        "witness": {"x": num(gap.witness), "gap": num(if passed && S::tol() == 0.0 { 0.0 } else { gap.value })},
    }))
}

fn order_reversal_check<S: Scalar>(a: &Value, b: &Value) -> Result<Outcome> {
    let f1 = from_json::<S>(a)?;
    let f2 = from_json::<S>(b)?;
    if !compare(&f1, &f2).is_le() {
        return Err(Error::InvalidArgument("the pair is not ordered: phi1 <= phi2 fails".into()));
    }
    let c = compare(&polar_pl(&f2), &polar_pl(&f1));
    let passed = c.is_le();
    let mut out = json!({"passed": passed});
    if !passed {
        out["witness"] = json!({"x": c.above.as_ref().map(|x| x.to_json())});
    }
    Ok(Outcome::checked(passed, out))
}
