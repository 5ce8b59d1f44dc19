use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest dimension accepted by the simulator.
pub const MAX_DIM: usize = 8;

/// Speed, switching rate and dimension of a cyclic motion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    c: f64,
    lambda: f64,
    dim: usize,
}

impl ModelParams {
    pub fn new(c: f64, lambda: f64, dim: usize) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "speed c must be finite and > 0, got {c}"
            )));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "rate lambda must be finite and > 0, got {lambda}"
            )));
        }
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(Error::InvalidParameter(format!(
                "dimension must lie in 1..={MAX_DIM}, got {dim}"
            )));
        }
        Ok(Self { c, lambda, dim })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Same speed and rate in another dimension.
    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        Self::new(self.c, self.lambda, dim)
    }

    /// Radius `ct` of the support cross-polytope at time `t`.
    pub fn reach(&self, t: f64) -> f64 {
        self.c * t
    }

    /// `P(N(t) = k)` for the switching process.
    pub fn poisson_mass(&self, t: f64, k: usize) -> f64 {
        poisson_pmf(self.lambda * t, k)
    }
}

/// Poisson probability `e^{-m} m^k / k!`, evaluated in log space.
pub fn poisson_pmf(mean: f64, k: usize) -> f64 {
    if mean == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let log = -mean + k as f64 * mean.ln() - statrs::function::factorial::ln_factorial(k as u64);
    log.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(ModelParams::new(0.0, 1.0, 2).is_err());
        assert!(ModelParams::new(1.0, -1.0, 2).is_err());
        assert!(ModelParams::new(1.0, 1.0, 0).is_err());
        assert!(ModelParams::new(1.0, 1.0, MAX_DIM + 1).is_err());
        assert!(ModelParams::new(f64::NAN, 1.0, 2).is_err());
        assert!(ModelParams::new(1.0, 1.0, MAX_DIM).is_ok());
    }

    #[test]
    fn poisson_masses() {
        let e = (-1.0f64).exp();
        assert!((poisson_pmf(1.0, 0) - e).abs() < 1e-16);
        assert!((poisson_pmf(1.0, 2) - e / 2.0).abs() < 1e-16);
        assert!((poisson_pmf(2.0, 3) - (-2.0f64).exp() * 8.0 / 6.0).abs() < 1e-15);
        let total: f64 = (0..60).map(|k| poisson_pmf(5.0, k)).sum();
        assert!((total - 1.0).abs() < 1e-14);
    }
}
