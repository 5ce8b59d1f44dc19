use crate::analytic::{ac_mass, cdf_u, cdf_u_sorted};
use crate::error::Result;
use crate::params::ModelParams;
use crate::sim::Conditioning;
use crate::stats::ks::Cdf;

/// CDF of the interior part of `U(t)`, renormalised to a probability law.
///
/// For the unconditional law this is `P(U <= u | N(t) >= d)`; conditional
/// laws are already normalised. `scale` multiplies the density and is 1
/// except when a deliberately wrong law is wanted.
#[derive(Debug, Clone, Copy)]
pub struct LawCdf {
    pub params: ModelParams,
    pub conditioning: Conditioning,
    pub t: f64,
    pub scale: f64,
    mass: f64,
}

impl LawCdf {
    pub fn new(params: ModelParams, conditioning: Conditioning, t: f64) -> Result<Self> {
        let mass = match conditioning {
            Conditioning::Unconditional => ac_mass(&params, t)?,
            Conditioning::Events(_) => 1.0,
        };
        Ok(Self {
            params,
            conditioning,
            t,
            scale: 1.0,
            mass,
        })
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }
}

impl Cdf for LawCdf {
    fn cdf(&self, x: f64) -> f64 {
        cdf_u(&self.params, self.conditioning, self.t, x)
            .map_or(f64::NAN, |v| self.scale * v / self.mass)
    }

    fn cdf_sorted(&self, sorted: &[f64]) -> Result<Vec<f64>> {
        let raw = cdf_u_sorted(&self.params, self.conditioning, self.t, sorted)?;
        Ok(raw
            .into_iter()
            .map(|v| self.scale * v / self.mass)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renormalised_to_one() {
        let p = ModelParams::new(1.0, 1.0, 3).unwrap();
        let law = LawCdf::new(p, Conditioning::Unconditional, 1.0).unwrap();
        assert!((law.cdf(1.0) - 1.0).abs() < 1e-8);
        assert_eq!(law.cdf(0.0), 0.0);
        let sorted = law.cdf_sorted(&[0.2, 0.7, 1.0]).unwrap();
        assert!((sorted[2] - 1.0).abs() < 1e-8);
        assert!((sorted[0] - law.cdf(0.2)).abs() < 1e-12);
    }
}
