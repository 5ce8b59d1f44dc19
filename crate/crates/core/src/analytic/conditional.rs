//! Laws of `U(t)` given the number of switches.
//!
//! With `v = u / ct` and `q = 1 - v^2` every conditional density is
//! `K q^j P(v) / ct` for a constant `K`, a power `j` and `P(v)` one of
//! `1`, `1 + v^2`, `1 + 3v^2`:
//!
//! ```text
//! d = 1, n = 2k+2:  (2k+2)! / (k! (k+1)! 2^{2k+1})          q^k
//! d = 1, n = 2k+1:  (2k+1)! / (k!^2 2^{2k})                 q^k
//! d = 2, n = 2k+2:  as d = 1
//! d = 2, n = 2k+1:  (2k+1)! / ((k-1)! (k+1)! 2^{2k})        q^{k-1} (1 + v^2)
//! d = 3, n = 2k+2:  (2k+2)! / ((k+2)! (k-1)! 2^{2k+1})      q^{k-1} (1 + 3v^2)
//! d = 3, n = 2k+1:  as d = 2
//! ```
//!
//! For `n < d` the particle is still on the boundary and there is no density.

use statrs::function::factorial::ln_factorial;

use crate::analytic::density::{check_time, unsupported_dim};
use crate::error::{Error, Result};
use crate::params::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Flat,
    Planar,
    Spatial,
}

/// A conditional law in normalised form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalLaw {
    pub dim: usize,
    pub n: usize,
    ln_constant: f64,
    power: i32,
    shape: Shape,
}

fn lf(k: usize) -> f64 {
    ln_factorial(k as u64)
}

impl ConditionalLaw {
    pub fn new(dim: usize, n: usize) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(unsupported_dim(dim));
        }
        if n < dim {
            return Err(Error::SingularStratum { dim, n });
        }
        let ln2 = std::f64::consts::LN_2;
        let even = n.is_multiple_of(2);
        let k = if even { (n - 2) / 2 } else { (n - 1) / 2 };
        let (ln_constant, power, shape) = match (dim, even) {
            (1, true) | (2, true) => (
                lf(n) - lf(k) - lf(k + 1) - (2 * k + 1) as f64 * ln2,
                k,
                Shape::Flat,
            ),
            (1, false) => (lf(n) - 2.0 * lf(k) - (2 * k) as f64 * ln2, k, Shape::Flat),
            (_, false) => (
                lf(n) - lf(k - 1) - lf(k + 1) - (2 * k) as f64 * ln2,
                k - 1,
                Shape::Planar,
            ),
            (_, true) => (
                lf(n) - lf(k + 2) - lf(k - 1) - (2 * k + 1) as f64 * ln2,
                k - 1,
                Shape::Spatial,
            ),
        };
        Ok(Self {
            dim,
            n,
            ln_constant,
            power: power as i32,
            shape,
        })
    }

    /// Density of `U / ct` at `v`; zero outside `[0, 1]`.
    pub fn density_scaled(&self, v: f64) -> f64 {
        if !(0.0..=1.0).contains(&v) {
            return 0.0;
        }
        let q = (1.0 - v) * (1.0 + v);
        let shape = match self.shape {
            Shape::Flat => 1.0,
            Shape::Planar => 1.0 + v * v,
            Shape::Spatial => 1.0 + 3.0 * v * v,
        };
        self.ln_constant.exp() * q.powi(self.power) * shape
    }

    /// `E[(U/ct)^m]`, exactly: the density is a polynomial in `v^2`.
    pub fn scaled_moment(&self, m: u32) -> f64 {
        // int_0^1 v^m q^j dv = B((m+1)/2, j+1) / 2
        let half_beta = |extra: u32| {
            let a = (m + extra + 1) as f64 / 2.0;
            let b = (self.power + 1) as f64;
            0.5 * (statrs::function::gamma::ln_gamma(a) + statrs::function::gamma::ln_gamma(b)
                - statrs::function::gamma::ln_gamma(a + b))
            .exp()
        };
        let poly = match self.shape {
            Shape::Flat => half_beta(0),
            Shape::Planar => half_beta(0) + half_beta(2),
            Shape::Spatial => half_beta(0) + 3.0 * half_beta(2),
        };
        self.ln_constant.exp() * poly
    }
}

/// Density of `U(t)` given `N(t) = n` for the motion in `params.dim()` dimensions.
pub fn conditional_density_u(params: &ModelParams, n: usize, t: f64, u: f64) -> Result<f64> {
    let law = ConditionalLaw::new(params.dim(), n)?;
    check_time(t)?;
    let reach = params.reach(t);
    if !(u >= 0.0 && u <= reach) {
        return Ok(0.0);
    }
    Ok(law.density_scaled(u / reach) / reach)
}

/// `sum_{n = d}^{n_max} P(N = n) p(u | n)`, the absolutely continuous density
/// rebuilt from its conditional parts.
pub fn mixture_density(params: &ModelParams, t: f64, u: f64, n_max: usize) -> Result<f64> {
    let mut total = 0.0;
    for n in params.dim()..=n_max {
        total += params.poisson_mass(t, n) * conditional_density_u(params, n, t, u)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::Quadrature;

    fn params(c: f64, dim: usize) -> ModelParams {
        ModelParams::new(c, 1.0, dim).unwrap()
    }

    #[test]
    fn tabulated_values() {
        let p = params(2.0, 2);
        for &u in &[0.0, 1.0, 3.3, 5.99] {
            assert!((conditional_density_u(&p, 2, 3.0, u).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        }
        assert!((conditional_density_u(&params(1.0, 3), 4, 1.0, 0.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(
            conditional_density_u(&params(1.0, 3), 5, 1.0, 1.0).unwrap(),
            0.0
        );
        assert!((conditional_density_u(&params(1.0, 1), 2, 1.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        // 3! (1 + v^2) / 2^3 and 5 (1 - v^4) / 4
        let p3 = params(1.0, 3);
        assert!((conditional_density_u(&p3, 3, 1.0, 0.5).unwrap() - 0.75 * 1.25).abs() < 1e-15);
        assert!(
            (conditional_density_u(&p3, 5, 1.0, 0.5).unwrap() - 1.25 * (1.0 - 0.0625)).abs()
                < 1e-15
        );
        assert_eq!(conditional_density_u(&p3, 5, 1.0, 1.5).unwrap(), 0.0);
    }

    #[test]
    fn boundary_counts_have_no_density() {
        assert_eq!(
            conditional_density_u(&params(1.0, 3), 2, 1.0, 0.5),
            Err(Error::SingularStratum { dim: 3, n: 2 })
        );
        assert!(matches!(
            conditional_density_u(&params(1.0, 2), 1, 1.0, 0.5),
            Err(Error::SingularStratum { .. })
        ));
        assert!(matches!(
            conditional_density_u(&params(1.0, 4), 9, 1.0, 0.5),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn normalised_with_exact_moments() {
        let q = Quadrature::default();
        for dim in 1..=3 {
            for n in dim..=12 {
                let law = ConditionalLaw::new(dim, n).unwrap();
                let mass = q
                    .integrate(|v| law.density_scaled(v), 0.0, 1.0)
                    .unwrap()
                    .value;
                assert!((mass - 1.0).abs() < 1e-10, "dim {dim} n {n}: {mass}");
                assert!((law.scaled_moment(0) - 1.0).abs() < 1e-12);
                let mean = q
                    .integrate(|v| v * law.density_scaled(v), 0.0, 1.0)
                    .unwrap()
                    .value;
                assert!((law.scaled_moment(1) - mean).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cross_dimension_coincidences() {
        for i in 0..=100 {
            let v = i as f64 / 100.0;
            for n in (2..=20).step_by(2) {
                let one = ConditionalLaw::new(1, n).unwrap().density_scaled(v);
                let two = ConditionalLaw::new(2, n).unwrap().density_scaled(v);
                assert_eq!(one, two);
            }
            for n in (3..=21).step_by(2) {
                let two = ConditionalLaw::new(2, n).unwrap().density_scaled(v);
                let three = ConditionalLaw::new(3, n).unwrap().density_scaled(v);
                assert_eq!(two, three);
            }
        }
    }
}
