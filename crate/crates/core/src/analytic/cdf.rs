use crate::analytic::conditional::{conditional_density_u, ConditionalLaw};
use crate::analytic::density::{check_time, density_u};
use crate::error::{domain, Result};
use crate::params::ModelParams;
use crate::quadrature::Quadrature;
use crate::sim::Conditioning;

/// Fraction of `ct` below which the quadrature is split off from the edge.
pub const EDGE_SPLIT: f64 = 1.0 - 1e-6;

/// Density of the interior part of `U(t)`: unconditional (sub-probability,
/// mass `P(N >= d)`) or given `N(t) = n`.
pub fn law_density(
    params: &ModelParams,
    conditioning: Conditioning,
    t: f64,
    u: f64,
) -> Result<f64> {
    match conditioning {
        Conditioning::Unconditional => density_u(params, t, u),
        Conditioning::Events(n) => conditional_density_u(params, n, t, u),
    }
}

fn integrate_law(
    params: &ModelParams,
    conditioning: Conditioning,
    t: f64,
    a: f64,
    b: f64,
) -> Result<f64> {
    if let Conditioning::Events(n) = conditioning {
        // validate once so the integrand can unwrap
        ConditionalLaw::new(params.dim(), n)?;
    } else {
        density_u(params, t, 0.0)?;
    }
    let split = params.reach(t) * EDGE_SPLIT;
    let f = |u: f64| law_density(params, conditioning, t, u).expect("validated above");
    let q = Quadrature::default();
    let mut points = vec![a];
    if a < split && split < b {
        points.push(split);
    }
    points.push(b);
    Ok(q.integrate_split(f, &points)?.value)
}

/// `P(U(t) <= u, interior)` (unconditional) or `P(U(t) <= u | N(t) = n)`.
pub fn cdf_u(params: &ModelParams, conditioning: Conditioning, t: f64, u: f64) -> Result<f64> {
    check_time(t)?;
    if u.is_nan() {
        return Err(domain("radius is NaN"));
    }
    let u = u.clamp(0.0, params.reach(t));
    integrate_law(params, conditioning, t, 0.0, u)
}

/// [`cdf_u`] at every point of a sorted slice, by accumulating the integral
/// between consecutive points.
pub fn cdf_u_sorted(
    params: &ModelParams,
    conditioning: Conditioning,
    t: f64,
    sorted: &[f64],
) -> Result<Vec<f64>> {
    check_time(t)?;
    if sorted
        .windows(2)
        .any(|w| w[0].partial_cmp(&w[1]).is_none_or(|o| o.is_gt()))
    {
        return Err(domain("cdf evaluation points must be sorted"));
    }
    let reach = params.reach(t);
    let mut out = Vec::with_capacity(sorted.len());
    let mut last = 0.0;
    let mut total = 0.0;
    for &u in sorted {
        let u = u.clamp(0.0, reach);
        total += integrate_law(params, conditioning, t, last, u)?;
        last = u;
        out.push(total);
    }
    Ok(out)
}
