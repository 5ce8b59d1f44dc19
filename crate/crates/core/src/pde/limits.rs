use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::cdf::EDGE_SPLIT;
use crate::analytic::{ac_mass, density_u};
use crate::error::{domain, Result};
use crate::params::ModelParams;
use crate::quadrature::Quadrature;
use crate::sim::{derive_seed, simulate_positions_aggregated, Conditioning};
use crate::stats::TestReport;

/// `Var X_1(t)` for the cyclic motion started in a uniform direction:
///
/// ```text
/// (2c^2 / d^2) sum_{r odd, 0 < r < 2d} (e^{z t} - 1 - z t) / z^2,   z = lambda (e^{i pi r / d} - 1).
/// ```
///
/// When `c, lambda -> infinity` with `c^2 / lambda = 1` this tends to `t / d`.
pub fn coordinate_variance(params: &ModelParams, t: f64) -> f64 {
    let d = params.dim();
    let (c, l) = (params.c(), params.lambda());
    let mut sum = Complex64::new(0.0, 0.0);
    for r in (1..2 * d).step_by(2) {
        let angle = std::f64::consts::PI * r as f64 / d as f64;
        let z = l * (Complex64::from_polar(1.0, angle) - 1.0);
        let zt = z * t;
        // (e^w - 1 - w) / w^2 loses everything to cancellation for small |w|
        let kernel = if zt.norm() < 1e-3 {
            0.5 + zt / 6.0 + zt * zt / 24.0
        } else {
            (zt.exp() - 1.0 - zt) / (zt * zt)
        };
        sum += kernel * t * t;
    }
    2.0 * c * c / (d * d) as f64 * sum.re
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatLevel {
    pub c: f64,
    pub lambda: f64,
    /// Sample variance of the coordinates, pooled over axes.
    pub variance: f64,
    pub standard_error: f64,
    pub exact_variance: f64,
    pub means: Vec<f64>,
    pub mean_standard_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatLimitResult {
    pub target: f64,
    pub levels: Vec<HeatLevel>,
    pub reports: Vec<TestReport>,
}

impl HeatLimitResult {
    pub fn pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }
}

/// Simulates the motion along `lambda = c^2` for every `c` of `schedule` and
/// compares the per-coordinate variance with the diffusive value `t / d`.
///
/// Three reports: relative error at the largest `c` within `tolerance`;
/// errors non-increasing along the schedule up to three standard errors;
/// every coordinate mean within three standard errors of 0.
pub fn heat_limit_check(
    dim: usize,
    t: f64,
    schedule: &[f64],
    count: usize,
    seed: u64,
    tolerance: f64,
) -> Result<HeatLimitResult> {
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain(
            "the speed schedule must be non-empty and increasing",
        ));
    }
    if count < 2 {
        return Err(domain("need at least two paths per level"));
    }
    let target = t / dim as f64;
    let mut levels = Vec::with_capacity(schedule.len());
    for (i, &c) in schedule.iter().enumerate() {
        let params = ModelParams::new(c, c * c, dim)?;
        let flat = simulate_positions_aggregated(
            &params,
            t,
            count,
            derive_seed(seed, i as u64),
            Conditioning::Unconditional,
        )?;
        let n = count as f64;
        let means: Vec<f64> = (0..dim)
            .map(|a| flat.iter().skip(a).step_by(dim).sum::<f64>() / n)
            .collect();
        let mut second = 0.0;
        let mut fourth = 0.0;
        for row in flat.chunks(dim) {
            for (a, x) in row.iter().enumerate() {
                let dev2 = (x - means[a]).powi(2);
                second += dev2;
                fourth += dev2 * dev2;
            }
        }
        let cells = n * dim as f64;
        let variance = second / cells;
        let standard_error = ((fourth / cells - variance * variance) / cells).sqrt();
        levels.push(HeatLevel {
            c,
            lambda: c * c,
            variance,
            standard_error,
            exact_variance: coordinate_variance(&params, t),
            means,
            mean_standard_error: (variance / n).sqrt(),
        });
    }
    let last = levels.last().expect("schedule is non-empty");
    let rel = (last.variance - target).abs() / target;
    let variance_report = TestReport::from_bound(
        format!("heat_limit_variance(d={dim})"),
        rel,
        tolerance,
        count,
    )
    .with_detail(
        levels
            .iter()
            .map(|l| {
                format!(
                    "c={} var={:.5} exact={:.5}",
                    l.c, l.variance, l.exact_variance
                )
            })
            .collect::<Vec<_>>()
            .join("; "),
    );
    let mut worst_increase = f64::NEG_INFINITY;
    for w in levels.windows(2) {
        let before = (w[0].variance - target).abs();
        let after = (w[1].variance - target).abs();
        worst_increase =
            worst_increase.max(after - before - 3.0 * (w[0].standard_error + w[1].standard_error));
    }
    let decay_report = TestReport::from_bound(
        format!("heat_limit_decay(d={dim})"),
        worst_increase.max(0.0),
        0.0,
        count,
    )
    .with_detail("largest error increase beyond three standard errors");
    let worst_mean = levels
        .iter()
        .flat_map(|l| {
            l.means
                .iter()
                .map(move |m| m.abs() / (3.0 * l.mean_standard_error))
        })
        .fold(0.0, f64::max);
    let mean_report =
        TestReport::from_bound(format!("heat_limit_mean(d={dim})"), worst_mean, 1.0, count)
            .with_detail("largest |mean| in units of three standard errors");
    Ok(HeatLimitResult {
        target,
        levels,
        reports: vec![variance_report, decay_report, mean_report],
    })
}

/// `int_0^{ct} p(u, t) du` by adaptive quadrature.
pub fn density_mass(params: &ModelParams, t: f64) -> Result<f64> {
    density_u(params, t, 0.0)?;
    let reach = params.reach(t);
    let q = Quadrature::with_tolerance(1e-13, 1e-13);
    let f = |u: f64| density_u(params, t, u).expect("validated above");
    Ok(q.integrate_split(f, &[0.0, reach * EDGE_SPLIT, reach])?
        .value)
}

/// `|int p du - P(N(t) >= d)| < tolerance`.
pub fn normalization_check(params: &ModelParams, t: f64, tolerance: f64) -> Result<TestReport> {
    let mass = density_mass(params, t)?;
    let want = ac_mass(params, t)?;
    Ok(TestReport::from_bound(
        format!(
            "normalization(d={}, lambda*t={})",
            params.dim(),
            params.lambda() * t
        ),
        (mass - want).abs(),
        tolerance,
        1,
    )
    .with_detail(format!("integral={mass:.12} expected={want:.12}")))
}
