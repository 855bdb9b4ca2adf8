//! Arithmetic backends for piecewise-linear functions.
//!
//! Every exact operation in this crate is generic over [`Scalar`]. Two
//! implementations exist: [`Rational`] (arbitrary precision, no tolerance) and
//! `f64` (comparisons use an absolute/relative slack of [`FLOAT_TOL`]).

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Slack used by every float-mode comparison.
pub const FLOAT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Rational,
    Float,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" | "exact" => Ok(Mode::Rational),
            "float" => Ok(Mode::Float),
            other => Err(Error::InvalidArgument(format!("unknown mode '{other}'"))),
        }
    }
}

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    const MODE: Mode;

    fn from_int(n: i64) -> Self;
    fn ratio(num: i64, den: i64) -> Self;
    /// Exact conversion of a finite double (binary expansion for rationals).
    fn from_f64(x: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// Square root, `None` when not representable (irrational in exact mode).
    fn sqrt(&self) -> Option<Self>;
    /// Slack for comparisons: zero in exact mode.
    fn tol() -> f64;
    fn parse(text: &str) -> Result<Self>;
    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Self::parse(s),
            Value::Number(n) => {
                let x = n
                    .as_f64()
                    .ok_or_else(|| Error::Parse(format!("bad number {n}")))?;
                if Self::MODE == Mode::Rational {
                    // Integers written as JSON numbers are exact.
                    if let Some(i) = n.as_i64() {
                        return Ok(Self::from_int(i));
                    }
                }
                Self::from_f64(x).ok_or_else(|| Error::Parse(format!("bad number {n}")))
            }
            other => Err(Error::Parse(format!("expected number, got {other}"))),
        }
    }

    /// Strictly positive (unlike `Signed::is_positive`, false for `0.0`).
    fn gt0(&self) -> bool {
        *self > Self::zero()
    }

    /// Strictly negative (false for `-0.0`).
    fn lt0(&self) -> bool {
        *self < Self::zero()
    }

    /// `self <= other` up to the mode's slack.
    fn le_tol(&self, other: &Self) -> bool {
        if Self::tol() == 0.0 {
            self <= other
        } else {
            let (a, b) = (self.to_f64(), other.to_f64());
            a <= b + Self::tol() * (1.0 + a.abs().max(b.abs()))
        }
    }

    /// `self == other` up to the mode's slack.
    fn eq_tol(&self, other: &Self) -> bool {
        self.le_tol(other) && other.le_tol(self)
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Rational;

    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(x: f64) -> Option<Self> {
        Rational::from_float(x)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sqrt(&self) -> Option<Self> {
        if self.lt0() {
            return None;
        }
        let (n, d) = (self.numer(), self.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Some(Rational::new(rn, rd))
        } else {
            None
        }
    }

    fn tol() -> f64 {
        0.0
    }

    fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::Parse(format!("bad rational '{text}'"));
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        } else if let Ok(i) = t.parse::<BigInt>() {
            Ok(Rational::from_integer(i))
        } else {
            let x: f64 = t.parse().map_err(|_| bad())?;
            Rational::from_float(x).ok_or_else(bad)
        }
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn tol() -> f64 {
        FLOAT_TOL
    }

    fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: f64 = n.trim().parse().map_err(|_| Error::Parse(t.into()))?;
            let d: f64 = d.trim().parse().map_err(|_| Error::Parse(t.into()))?;
            return Ok(n / d);
        }
        t.parse().map_err(|_| Error::Parse(format!("bad float '{text}'")))
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }
}

/// Converts between the two backends (float → rational is exact).
pub fn convert<A: Scalar, B: Scalar>(a: &A) -> Result<B> {
    if A::MODE == B::MODE {
        // Display is exact for both backends.
        return B::parse(&a.to_string());
    }
    B::from_f64(a.to_f64()).ok_or_else(|| Error::Inexact(a.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_is_exact_or_none() {
        assert_eq!(Rational::ratio(9, 16).sqrt(), Some(Rational::ratio(3, 4)));
        assert_eq!(Rational::ratio(2, 1).sqrt(), None);
        assert_eq!(Rational::ratio(-1, 4).sqrt(), None);
    }

    #[test]
    fn rational_text_round_trip() {
        let r = Rational::ratio(10, 8);
        assert_eq!(r.to_string(), "5/4");
        assert_eq!(Rational::parse("5/4").unwrap(), r);
        assert_eq!(Rational::from_int(3).to_string(), "3");
        assert_eq!(Rational::parse("0.5").unwrap(), Rational::ratio(1, 2));
        assert!(Rational::parse("1/0").is_err());
    }

    #[test]
    fn float_tolerance_comparisons() {
        assert!(1.0f64.eq_tol(&(1.0 + 1e-14)));
        assert!(!1.0f64.eq_tol(&(1.0 + 1e-9)));
        assert!(!Rational::ratio(1, 3).le_tol(&Rational::ratio(333_333, 1_000_000)));
    }
}
