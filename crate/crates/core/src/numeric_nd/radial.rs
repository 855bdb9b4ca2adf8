use crate::pl::{ExtValue, PLFunction};
use crate::scalar::Scalar;
use crate::transforms::polar_pl;
use crate::{Error, Result};

/// `x ↦ ρ(|x|)` on `ℝⁿ`.
#[derive(Clone, Debug)]
pub struct RadialLift {
    profile: PLFunction<f64>,
    dim: usize,
}

pub fn radial_lift<S: Scalar>(rho: &PLFunction<S>, n: usize) -> Result<RadialLift> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    Ok(RadialLift {
        profile: rho.to_float(),
        dim: n,
    })
}

impl RadialLift {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn profile(&self) -> &PLFunction<f64> {
        &self.profile
    }

    pub fn eval(&self, x: &[f64]) -> Result<ExtValue<f64>> {
        if x.len() != self.dim {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, lift lives in dimension {}",
                x.len(),
                self.dim
            )));
        }
        let r = x.iter().map(|c| c * c).sum::<f64>().sqrt();
        self.profile.eval(&r)
    }

    /// The polar of a radial function is the lift of the polar profile.
    pub fn polar(&self) -> Result<RadialLift> {
        Ok(RadialLift {
            profile: polar_pl(&self.profile),
            dim: self.dim,
        })
    }
}
