use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not convex: slope drops from {left} to {right} at x = {at}")]
    NotConvex { at: f64, left: f64, right: f64 },

    #[error("malformed function: {0}")]
    Malformed(String),

    #[error("value {0} has no exact rational representation")]
    Inexact(String),

    #[error("function dips below F(x) = sqrt(x^2 - 1): gap {gap} at x = {at}")]
    BelowCurve { gap: f64, at: f64 },

    #[error("function is not tangent to F: minimum gap {min_gap} at x = {argmin}")]
    NotTangent { min_gap: f64, argmin: f64 },

    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
