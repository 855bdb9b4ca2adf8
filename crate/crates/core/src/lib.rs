#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Polarity transform on nonnegative convex functions of the ray.
//!
//! - [`pl`]: exact piecewise-linear functions (rational or `f64` backend),
//!   lattice operations, JSON format.
//! - [`transforms`]: exact polar / Legendre transforms and numeric versions.
//! - [`selfpolar`]: the curve `F(x) = sqrt(x² − 1)`, tangency classes,
//!   envelope pairs, the splice construction and self-polarity checks.
//! - [`numeric_nd`]: planar grid polarity and radial lifts.
//! - [`santalo`]: radial integrals, Santaló products, exploratory search.
//! - [`cli`]: command-line surface.

pub mod cli;
pub mod error;
pub mod numeric_nd;
pub mod pl;
pub mod plot;
pub mod santalo;
pub mod scalar;
pub mod selfpolar;
pub mod transforms;

pub use error::{Error, Result};
pub use pl::{ExtValue, PLFunction, Tail};
pub use scalar::{Mode, Rational, Scalar};
