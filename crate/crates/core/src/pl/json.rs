//! `{"type":"pl","breakpoints":[[x,v],...],"tail":{"kind":"slope","value":s}}`
//! with `{"kind":"infinite"}` for bounded domains. Rational mode writes every
//! number as a `"p/q"` string; float mode writes JSON numbers.

use serde_json::{json, Value};

use super::{PLFunction, Tail};
use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};

pub fn to_json<S: Scalar>(f: &PLFunction<S>) -> Value {
    let bps: Vec<Value> = f
        .breakpoints()
        .iter()
        .map(|(x, v)| Value::Array(vec![x.to_json(), v.to_json()]))
        .collect();
    let tail = match f.tail() {
        Tail::Slope(s) => json!({"kind": "slope", "value": s.to_json()}),
        Tail::Infinite => json!({"kind": "infinite"}),
    };
    json!({"type": "pl", "breakpoints": bps, "tail": tail})
}

/// Rational if any coordinate is written as a string, float otherwise.
pub fn json_mode(v: &Value) -> Mode {
    fn has_string(v: &Value) -> bool {
        match v {
            Value::String(_) => true,
            Value::Array(a) => a.iter().any(has_string),
            _ => false,
        }
    }
    let in_bps = v.get("breakpoints").map(has_string).unwrap_or(false);
    let in_tail = v
        .get("tail")
        .and_then(|t| t.get("value"))
        .map(has_string)
        .unwrap_or(false);
    if in_bps || in_tail {
        Mode::Rational
    } else {
        Mode::Float
    }
}

pub fn from_json<S: Scalar>(v: &Value) -> Result<PLFunction<S>> {
    if let Some(t) = v.get("type") {
        if t != "pl" {
            return Err(Error::Parse(format!("expected type \"pl\", got {t}")));
        }
    }
    let bps = v
        .get("breakpoints")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"breakpoints\" array".into()))?;
    let mut points = Vec::with_capacity(bps.len());
    for bp in bps {
        let pair = bp
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse(format!("breakpoint must be [x, v], got {bp}")))?;
        points.push((S::from_json(&pair[0])?, S::from_json(&pair[1])?));
    }
    let tail = v
        .get("tail")
        .ok_or_else(|| Error::Parse("missing \"tail\"".into()))?;
    let tail = match tail.get("kind").and_then(Value::as_str) {
        Some("infinite") => Tail::Infinite,
        Some("slope") => Tail::Slope(S::from_json(
            tail.get("value")
                .ok_or_else(|| Error::Parse("slope tail without value".into()))?,
        )?),
        other => return Err(Error::Parse(format!("unknown tail kind {other:?}"))),
    };
    PLFunction::new(points, tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pl::q;
    use crate::scalar::Rational;

    #[test]
    fn rational_round_trip_is_bit_exact() {
        let f = PLFunction::new(
            vec![(q(0, 1), q(0, 1)), (q(5, 4), q(3, 4))],
            Tail::Slope(q(5, 3)),
        )
        .unwrap();
        let text = serde_json::to_string(&to_json(&f)).unwrap();
        assert_eq!(
            text,
            r#"{"breakpoints":[["0","0"],["5/4","3/4"]],"tail":{"kind":"slope","value":"5/3"},"type":"pl"}"#
        );
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json_mode(&v), Mode::Rational);
        let back: PLFunction<Rational> = from_json(&v).unwrap();
        assert_eq!(back, f);
        assert_eq!(serde_json::to_string(&to_json(&back)).unwrap(), text);
    }

    #[test]
    fn float_json_and_errors() {
        let v: Value = serde_json::from_str(
            r#"{"type":"pl","breakpoints":[[0,0],[1,0]],"tail":{"kind":"infinite"}}"#,
        )
        .unwrap();
        assert_eq!(json_mode(&v), Mode::Float);
        let f: PLFunction<f64> = from_json(&v).unwrap();
        assert_eq!(f, PLFunction::indicator(1.0).unwrap());
        let bad: Value = serde_json::from_str(r#"{"breakpoints":[[0,0],[1]],"tail":{"kind":"infinite"}}"#).unwrap();
        assert!(from_json::<f64>(&bad).is_err());
        let bad: Value = serde_json::from_str(r#"{"breakpoints":[[0,0]],"tail":{"kind":"wobbly"}}"#).unwrap();
        assert!(from_json::<f64>(&bad).is_err());
    }
}
