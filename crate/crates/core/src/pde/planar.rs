//! The planar fourth-order equation
//!
//! ```text
//! [(d_t + lambda)^2 - c^2 d_x^2] [(d_t + lambda)^2 - c^2 d_y^2] f - lambda^4 f = 0
//! ```
//!
//! and its exponentially shifted form `(d_t^2 - c^2 d_x^2)(d_t^2 - c^2 d_y^2) w - lambda^4 w = 0`
//! with `w = e^{lambda t} f`, checked by composing second-order central
//! difference operators in `(x, y, t)`.

use serde::{Deserialize, Serialize};

use crate::analytic::density_u;
use crate::error::{domain, Error, Result};
use crate::params::ModelParams;
use crate::pde::grid::{summarize, GridSpec, ResidualReport};

/// Which planar function is built from the layer density `p(u, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlanarField {
    /// `f(x, y, t) = p(|x| + |y|, t)`, constant on every square layer.
    Layer,
    /// `f(x, y, t) = p(u, t) / (4u)`, the point density whose layer
    /// integrals reproduce `p` (the layer `|x| + |y| = u` has length `4 sqrt 2 u`
    /// and `|grad u| = sqrt 2`).
    Coarea,
}

impl PlanarField {
    pub fn label(self) -> &'static str {
        match self {
            PlanarField::Layer => "layer",
            PlanarField::Coarea => "coarea",
        }
    }
}

/// Fractions of `u` carried by the `x` coordinate at the evaluation points.
const SPLITS: [f64; 3] = [0.3, 0.5, 0.7];

/// Evaluation points `(x, y, t)` in the open first quadrant.
pub fn planar_points(params: &ModelParams, grid: &GridSpec) -> Vec<(f64, f64, f64)> {
    let mut pts = Vec::new();
    for t in grid.times() {
        for frac in grid.fractions() {
            let u = frac * params.reach(t);
            for theta in SPLITS {
                pts.push((theta * u, (1.0 - theta) * u, t));
            }
        }
    }
    pts
}

fn check_planar(params: &ModelParams, grid: &GridSpec) -> Result<()> {
    grid.validate()?;
    if params.dim() != 2 {
        return Err(Error::Unsupported(
            "the fourth-order equation is planar".into(),
        ));
    }
    let (c, t0, h) = (params.c(), grid.t_range.0, grid.h0);
    let axis_gap = SPLITS[0] * grid.margin * c * t0;
    // nested operators shift u by up to 2h and t by up to 2h
    if !(t0 > 2.0 * h && axis_gap > h && grid.margin * c * t0 > 2.0 * h * (1.0 + c)) {
        return Err(domain(format!(
            "stencil spacing {h} touches u = 0, an axis or u = ct; enlarge the margin or refine h"
        )));
    }
    Ok(())
}

fn field(params: &ModelParams, kind: PlanarField) -> impl Fn(f64, f64, f64) -> f64 + '_ {
    move |x: f64, y: f64, t: f64| {
        let u = x.abs() + y.abs();
        let p = density_u(params, t, u).expect("stencil kept inside the support");
        match kind {
            PlanarField::Layer => p,
            PlanarField::Coarea => p / (4.0 * u),
        }
    }
}

/// `[(d_t + lambda)^2 - c^2 d_axis^2] g` at `(x, y, t)`, or with `shifted`
/// the operator `d_t^2 - c^2 d_axis^2`.
fn factor(
    g: &dyn Fn(f64, f64, f64) -> f64,
    axis: usize,
    (x, y, t): (f64, f64, f64),
    h: f64,
    c: f64,
    lambda: f64,
    shifted: bool,
) -> f64 {
    let centre = g(x, y, t);
    let (after, before) = (g(x, y, t + h), g(x, y, t - h));
    let g_tt = (after - 2.0 * centre + before) / (h * h);
    let (plus, minus) = if axis == 0 {
        (g(x + h, y, t), g(x - h, y, t))
    } else {
        (g(x, y + h, t), g(x, y - h, t))
    };
    let g_ss = (plus - 2.0 * centre + minus) / (h * h);
    if shifted {
        g_tt - c * c * g_ss
    } else {
        let g_t = (after - before) / (2.0 * h);
        g_tt + 2.0 * lambda * g_t + lambda * lambda * centre - c * c * g_ss
    }
}

fn residual_study(
    params: &ModelParams,
    grid: &GridSpec,
    kind: PlanarField,
    shifted: bool,
) -> Result<ResidualReport> {
    check_planar(params, grid)?;
    let (c, l) = (params.c(), params.lambda());
    let f = field(params, kind);
    let base: Box<dyn Fn(f64, f64, f64) -> f64> = if shifted {
        Box::new(move |x, y, t| (l * t).exp() * f(x, y, t))
    } else {
        Box::new(f)
    };
    let pts = planar_points(params, grid);
    let scale = pts
        .iter()
        .map(|&(x, y, t)| base(x, y, t).abs())
        .fold(0.0, f64::max);
    let mut levels = Vec::with_capacity(grid.levels);
    for h in grid.spacings() {
        let inner = |x: f64, y: f64, t: f64| factor(&*base, 1, (x, y, t), h, c, l, shifted);
        let residuals: Vec<f64> = pts
            .iter()
            .map(|&pt| factor(&inner, 0, pt, h, c, l, shifted) - l.powi(4) * base(pt.0, pt.1, pt.2))
            .collect();
        levels.push(summarize(h, &residuals));
    }
    let form = if shifted { "w-form" } else { "p-form" };
    let name = format!("planar_fourth_order_residual({}, {form})", kind.label());
    Ok(ResidualReport::from_levels(name, levels, scale))
}

/// Fourth-order equation on the planar field built from `density_u`.
pub fn planar_fourth_order_residual(
    params: &ModelParams,
    grid: &GridSpec,
    kind: PlanarField,
) -> Result<ResidualReport> {
    residual_study(params, grid, kind, false)
}

/// Same equation after `w = e^{lambda t} f`.
pub fn planar_w_form_residual(
    params: &ModelParams,
    grid: &GridSpec,
    kind: PlanarField,
) -> Result<ResidualReport> {
    residual_study(params, grid, kind, true)
}

/// Residual of the fourth-order operator at a single point and spacing.
pub fn planar_residual_at(
    params: &ModelParams,
    kind: PlanarField,
    point: (f64, f64, f64),
    h: f64,
) -> f64 {
    let (c, l) = (params.c(), params.lambda());
    let f = field(params, kind);
    let inner = |x: f64, y: f64, t: f64| factor(&f, 1, (x, y, t), h, c, l, false);
    factor(&inner, 0, point, h, c, l, false) - l.powi(4) * f(point.0, point.1, point.2)
}
