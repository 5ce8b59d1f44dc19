use crate::analytic::density_u;
use crate::error::{domain, Result};
use crate::params::ModelParams;
use crate::pde::grid::{d1, d2, summarize, GridSpec, ResidualReport};
use crate::special::kernel::{kernel_derivative_scaled, KernelPoint};
use crate::stats::TestReport;

fn check_stencil(params: &ModelParams, grid: &GridSpec, reach_factor: f64) -> Result<()> {
    grid.validate()?;
    let c = params.c();
    let t0 = grid.t_range.0;
    let h = grid.h0 * reach_factor;
    // the outermost stencil point must stay strictly inside 0 < u < c (t - h)
    if !(t0 - h > 0.0 && grid.margin * c * t0 > h * (1.0 + c)) {
        return Err(domain(format!(
            "stencil spacing {} reaches the edge or the origin of the support at t = {t0}",
            grid.h0
        )));
    }
    Ok(())
}

/// Residual of `(d_t + lambda)^2 p - c^2 d_u^2 p - lambda^2 p` for an
/// arbitrary layer function `p(u, t)`, by central differences.
pub fn klein_gordon_residual_of<F>(
    name: &str,
    params: &ModelParams,
    grid: &GridSpec,
    p: F,
) -> Result<ResidualReport>
where
    F: Fn(f64, f64) -> f64,
{
    check_stencil(params, grid, 1.0)?;
    let (c, l) = (params.c(), params.lambda());
    let mut scale: f64 = 0.0;
    let mut levels = Vec::with_capacity(grid.levels);
    for h in grid.spacings() {
        let mut residuals = Vec::new();
        for t in grid.times() {
            for frac in grid.fractions() {
                let u = frac * params.reach(t);
                scale = scale.max(p(u, t).abs());
                let p_t = d1(|s| p(u, s), t, h);
                let p_tt = d2(|s| p(u, s), t, h);
                let p_uu = d2(|v| p(v, t), u, h);
                residuals.push(p_tt + 2.0 * l * p_t - c * c * p_uu);
            }
        }
        levels.push(summarize(h, &residuals));
    }
    Ok(ResidualReport::from_levels(name, levels, scale))
}

/// The layer equation on the density `p(u, t)` of [`density_u`].
pub fn klein_gordon_residual(params: &ModelParams, grid: &GridSpec) -> Result<ResidualReport> {
    density_u(params, grid.t_range.0, 0.0)?;
    let name = format!("klein_gordon_residual(d={})", params.dim());
    klein_gordon_residual_of(&name, params, grid, |u, t| {
        density_u(params, t, u).expect("stencil kept inside the support")
    })
}

/// `max |g_tt - c^2 g_uu - lambda^2 g| / max(|g_tt|, lambda^2 g)` over the grid
/// points, from the analytic kernel derivatives.
pub fn kernel_identity_check(
    params: &ModelParams,
    grid: &GridSpec,
    tolerance: f64,
) -> Result<TestReport> {
    grid.validate()?;
    let (c, l) = (params.c(), params.lambda());
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for t in grid.times() {
        for frac in grid.fractions() {
            let p = KernelPoint::new(*params, t, frac * params.reach(t))?;
            let g = kernel_derivative_scaled(&p, 0, 0)?;
            let g_tt = kernel_derivative_scaled(&p, 2, 0)?;
            let g_uu = kernel_derivative_scaled(&p, 0, 2)?;
            let residual = g_tt - c * c * g_uu - l * l * g;
            worst = worst.max(residual.abs() / g_tt.abs().max(l * l * g));
            count += 1;
        }
    }
    Ok(TestReport::from_bound(
        "kernel_identity",
        worst,
        tolerance,
        count,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_solves_the_layer_equation() {
        for dim in 2..=3 {
            let p = ModelParams::new(1.0, 1.0, dim).unwrap();
            let r = klein_gordon_residual(&p, &GridSpec::default()).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let p = ModelParams::new(2.0, 0.5, 3).unwrap();
        assert!(
            klein_gordon_residual(&p, &GridSpec::default())
                .unwrap()
                .pass
        );
    }

    #[test]
    fn a_non_solution_is_caught() {
        let p = ModelParams::new(1.0, 1.0, 2).unwrap();
        let r =
            klein_gordon_residual_of("u^2 t", &p, &GridSpec::default(), |u, t| u * u * t).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn kernel_identity() {
        let grid = GridSpec {
            margin: 0.01,
            ..GridSpec::default()
        };
        for &(c, l) in &[(1.0, 1.0), (3.0, 0.2), (0.5, 40.0)] {
            let p = ModelParams::new(c, l, 2).unwrap();
            assert!(kernel_identity_check(&p, &grid, 1e-10).unwrap().pass);
        }
    }

    #[test]
    fn stencil_must_fit() {
        let p = ModelParams::new(1.0, 1.0, 2).unwrap();
        let grid = GridSpec {
            h0: 0.5,
            ..GridSpec::default()
        };
        assert!(klein_gordon_residual(&p, &grid).is_err());
    }
}
