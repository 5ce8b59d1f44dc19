//! Absolutely continuous part of the law of the L1 radius `U(t)`.
//!
//! Three evaluations of the same density are provided:
//!
//! - [`density_u`], a sum of non-negative series `S_r` (see
//!   [`crate::special::kernel`]); this is the primary path and is finite at `u = ct`,
//! - [`density_u_coefficient_form`], the combination `sum_i A_i d_t^i g` of kernel derivatives,
//! - [`density_u_closed_form`], the planar `I_0`/`I_1` expression, which is `0/0` at the edge.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::params::ModelParams;
use crate::special::bessel::{bessel_i_scaled, BesselOrder};
use crate::special::kernel::{kernel_derivative_scaled, shifted_series_scaled, KernelPoint};

/// Coefficients `A_i` of `p = e^{-lambda t} sum_i A_i d^i_t g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityCoefficients {
    pub dim: usize,
    pub coeffs: Vec<f64>,
}

impl DensityCoefficients {
    pub fn new(params: &ModelParams) -> Result<Self> {
        let (c, l) = (params.c(), params.lambda());
        let raw = match params.dim() {
            1 => vec![l, 1.0],
            2 => vec![-l, 1.0, 2.0 / l],
            3 => vec![-l, -3.0, 2.0 / l, 4.0 / (l * l)],
            d => return Err(unsupported_dim(d)),
        };
        Ok(Self {
            dim: params.dim(),
            coeffs: raw.into_iter().map(|a| a / c).collect(),
        })
    }
}

pub(crate) fn unsupported_dim(dim: usize) -> Error {
    Error::Unsupported(format!(
        "closed-form laws exist for dimensions 1 to 3 only; dimension {dim} is simulation-only"
    ))
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("time must be finite and > 0, got {t}")))
    }
}

fn point(params: &ModelParams, t: f64, u: f64) -> Result<Option<KernelPoint>> {
    check_time(t)?;
    if !(u.is_finite() && u >= 0.0) {
        return Err(domain(format!("radius must be finite and >= 0, got {u}")));
    }
    if u > params.reach(t) {
        return Ok(None);
    }
    KernelPoint::new(*params, t, u).map(Some)
}

/// Density `p(u, t)` of `U(t)` on `[0, ct]` (zero beyond), for `d` in `1..=3`.
///
/// With `L = ct`, `a = (lambda/2c)^2` and `S~_r = e^{-lambda t} S_r`:
///
/// ```text
/// d = 1:  (1/c) [ lambda S~_0 + 2 c^2 t S~_1 ]
/// d = 2:  (lambda/c) [ (L^2 + u^2) S~_2 / a + (lambda t / 2) S~_1 / a ]
/// d = 3:  (lambda/c) [ (L^2 + u^2) S~_2 / a + (lambda t / 2)(L^2 + 3u^2) S~_3 / a^2 ]
/// ```
pub fn density_u(params: &ModelParams, t: f64, u: f64) -> Result<f64> {
    let dim = params.dim();
    if !(1..=3).contains(&dim) {
        return Err(unsupported_dim(dim));
    }
    let Some(p) = point(params, t, u)? else {
        return Ok(0.0);
    };
    let (c, l) = (params.c(), params.lambda());
    let a = (l / (2.0 * c)).powi(2);
    let reach2 = params.reach(t).powi(2);
    let lt = l * t;
    let s = |r| shifted_series_scaled(&p, r);
    Ok(match dim {
        1 => (l * s(0) + 2.0 * c * c * t * s(1)) / c,
        2 => l / c * ((reach2 + u * u) * s(2) + 0.5 * lt * s(1)) / a,
        _ => {
            l / c
                * ((reach2 + u * u) * s(2) / a + 0.5 * lt * (reach2 + 3.0 * u * u) * s(3) / (a * a))
        }
    })
}

/// The same density as `e^{-lambda t} sum_i A_i d^i_t g` from kernel derivatives.
pub fn density_u_coefficient_form(params: &ModelParams, t: f64, u: f64) -> Result<f64> {
    let coefficients = DensityCoefficients::new(params)?;
    let Some(p) = point(params, t, u)? else {
        return Ok(0.0);
    };
    let mut total = 0.0;
    for (order, a) in coefficients.coeffs.iter().enumerate() {
        total += a * kernel_derivative_scaled(&p, order as u32, 0)?;
    }
    Ok(total)
}

/// Planar density in the `I_0`/`I_1` form; defined for `0 <= u < ct` only.
pub fn density_u_closed_form(params: &ModelParams, t: f64, u: f64) -> Result<f64> {
    if params.dim() != 2 {
        return Err(Error::Unsupported(
            "the I0/I1 form is the planar density".into(),
        ));
    }
    check_time(t)?;
    let reach = params.reach(t);
    if !(u.is_finite() && u >= 0.0 && u < reach) {
        return Err(domain(format!(
            "the I0/I1 form needs 0 <= u < ct = {reach}, got {u}"
        )));
    }
    let p = KernelPoint::new(*params, t, u)?;
    let (c, l) = (params.c(), params.lambda());
    let s = p.gap();
    let xi = p.argument();
    let lt = l * t;
    let shift = (xi - lt).exp();
    let i0 = bessel_i_scaled(BesselOrder::integer(0), xi)? * shift;
    let i1 = bessel_i_scaled(BesselOrder::integer(1), xi)? * shift;
    let edge = reach * reach + u * u;
    Ok(l / c * edge / s * i0 + (lt * s - 2.0 * edge) / (s * s.sqrt()) * i1)
}
