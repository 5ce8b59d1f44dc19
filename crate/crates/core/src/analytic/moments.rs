use statrs::function::factorial::ln_factorial;

use crate::analytic::cdf::EDGE_SPLIT;
use crate::analytic::density::{check_time, density_u};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::quadrature::Quadrature;
use crate::special::bessel::{bessel_i_scaled, gamma_half_integer, BesselOrder};

fn require_planar(params: &ModelParams) -> Result<()> {
    if params.dim() == 2 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "closed-form moments are planar, got dimension {}",
            params.dim()
        )))
    }
}

/// `E U(t) = e^{-lambda t} [ (ct + 2c/lambda) I_0(lambda t) + ct I_1(lambda t) - 2c/lambda ]`
/// for the planar motion, singular part included.
pub fn mean_u(params: &ModelParams, t: f64) -> Result<f64> {
    require_planar(params)?;
    check_time(t)?;
    let (c, l) = (params.c(), params.lambda());
    let lt = l * t;
    let reach = params.reach(t);
    let i0 = bessel_i_scaled(BesselOrder::integer(0), lt)?;
    let i1 = bessel_i_scaled(BesselOrder::integer(1), lt)?;
    Ok((reach + 2.0 * c / l) * i0 + reach * i1 - 2.0 * c / l * (-lt).exp())
}

/// `E U(t)^m` for the planar motion, singular part included. With
/// `B = 2c^2 t / lambda`, `h = (m+1)/2` and `I_nu = I_nu(lambda t)`:
///
/// ```text
/// (e^{-lambda t} / c) [ (lambda/2) Gamma(h) B^h I_h - (2m c^2 / lambda) (ct)^{m-1}
///                       + Gamma(h) I_{h-1} ( (lambda/2) B^h + (2m c^2 / lambda) B^{h-1} ) ]
/// ```
pub fn moment_u(params: &ModelParams, m: u32, t: f64) -> Result<f64> {
    require_planar(params)?;
    check_time(t)?;
    let (c, l) = (params.c(), params.lambda());
    let lt = l * t;
    let b = 2.0 * c * c * t / l;
    let h = (m as f64 + 1.0) / 2.0;
    let gamma = gamma_half_integer(m + 1);
    let upper = bessel_i_scaled(BesselOrder::from_twice(m as i32 + 1)?, lt)?;
    let lower = bessel_i_scaled(BesselOrder::from_twice(m as i32 - 1)?, lt)?;
    let mm = m as f64;
    let edge = if m == 0 {
        0.0
    } else {
        2.0 * mm * c * c / l * params.reach(t).powi(m as i32 - 1) * (-lt).exp()
    };
    let bracket = 0.5 * l * gamma * b.powf(h) * upper - edge
        + gamma * lower * (0.5 * l * b.powf(h) + 2.0 * mm * c * c / l * b.powf(h - 1.0));
    Ok(bracket / c)
}

/// `E U(t)^m` from quadrature of the density plus the boundary part
/// `(ct)^m P(N(t) < d)`; valid for `d` in `1..=3`.
pub fn moment_u_quadrature(params: &ModelParams, m: u32, t: f64) -> Result<f64> {
    check_time(t)?;
    density_u(params, t, 0.0)?;
    let reach = params.reach(t);
    let q = Quadrature::with_tolerance(1e-13, 1e-13);
    let f = |u: f64| u.powi(m as i32) * density_u(params, t, u).expect("validated above");
    let interior = q
        .integrate_split(f, &[0.0, reach * EDGE_SPLIT, reach])?
        .value;
    let shell: f64 = (0..params.dim()).map(|k| params.poisson_mass(t, k)).sum();
    Ok(interior + reach.powi(m as i32) * shell)
}

fn split_count(n: usize) -> Result<(usize, bool)> {
    if n < 3 {
        return Err(Error::SingularStratum { dim: 3, n });
    }
    Ok(if n % 2 == 1 {
        ((n - 1) / 2, false)
    } else {
        ((n - 2) / 2, true)
    })
}

/// `E[U | N = n] / ct` in three dimensions:
/// `(2k+1)! (k+2) / (2^{2k+1} (k+1)!^2)` for `n = 2k+1` and
/// `(2k+1)! (k+4) / (2^{2k+1} k! (k+2)!)` for `n = 2k+2`.
pub fn conditional_mean_u(n: usize) -> Result<f64> {
    let (k, even) = split_count(n)?;
    let lf = |j: usize| ln_factorial(j as u64);
    let head = lf(2 * k + 1) - (2 * k + 1) as f64 * std::f64::consts::LN_2;
    let value = if even {
        (head - lf(k) - lf(k + 2)).exp() * (k + 4) as f64
    } else {
        (head - 2.0 * lf(k + 1)).exp() * (k + 2) as f64
    };
    Ok(value)
}

/// Catalan number `C_k = binom(2k, k) / (k + 1)`.
pub fn catalan(k: usize) -> f64 {
    (0..k).fold(1.0, |c, j| c * (2 * (2 * j + 1)) as f64 / (j + 2) as f64)
}

/// [`conditional_mean_u`] through `binom(2k+1, k+1) = (2k+1) C_k`.
pub fn conditional_mean_catalan(n: usize) -> Result<f64> {
    let (k, even) = split_count(n)?;
    let lead = (2 * k + 1) as f64 * catalan(k) / 2f64.powi(2 * k as i32 + 1);
    let tail = if even {
        (k + 4) as f64 / (k + 2) as f64
    } else {
        (k + 2) as f64 / (k + 1) as f64
    };
    Ok(lead * tail)
}

/// `E[U | N = 2k+1] / E[U | N = 2k+2] = (k+2)^2 / ((k+1)(k+4)) = 1 - k / ((k+1)(k+4))`.
pub fn conditional_mean_ratio(k: usize) -> f64 {
    let k = k as f64;
    1.0 - k / ((k + 1.0) * (k + 4.0))
}
