use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::stats::TestReport;

/// Residuals below `EXACT_FLOOR` times the solution scale count as exact.
pub const EXACT_FLOOR: f64 = 1e-10;

/// Evaluation points and stencil spacings of a refinement study.
///
/// Residuals are evaluated at fixed points `(u, t)` with `t` on `t_points`
/// values of `t_range` and `u = ct (margin + (1 - 2 margin) i / (u_points - 1))`;
/// only the stencil spacing changes, `h0 / 2^level`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub t_range: (f64, f64),
    pub t_points: usize,
    pub u_points: usize,
    pub margin: f64,
    pub h0: f64,
    pub levels: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            t_range: (0.5, 1.5),
            t_points: 5,
            u_points: 7,
            margin: 0.2,
            h0: 0.04,
            levels: 4,
        }
    }
}

impl GridSpec {
    /// Grid for the fourth-order planar operator. Its stencils reach `2h`
    /// and divide by `h^4`, so spacings below about `0.01` drown in roundoff.
    pub fn planar_default() -> Self {
        Self {
            t_range: (1.0, 1.4),
            t_points: 3,
            u_points: 4,
            margin: 0.2,
            h0: 0.04,
            levels: 3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (t0, t1) = self.t_range;
        if !(t0 > 0.0 && t1 >= t0 && t1.is_finite()) {
            return Err(domain(format!("invalid time range [{t0}, {t1}]")));
        }
        if !(self.margin > 0.0 && self.margin < 0.5) {
            return Err(domain(format!(
                "margin must lie in (0, 0.5), got {}",
                self.margin
            )));
        }
        if !(self.h0 > 0.0 && self.h0.is_finite()) {
            return Err(domain(format!("spacing must be positive, got {}", self.h0)));
        }
        if self.levels < 2 || self.t_points == 0 || self.u_points < 2 {
            return Err(domain(
                "need at least two levels, one time and two radius points",
            ));
        }
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        let (t0, t1) = self.t_range;
        if self.t_points == 1 {
            return vec![t0];
        }
        (0..self.t_points)
            .map(|i| t0 + (t1 - t0) * i as f64 / (self.t_points - 1) as f64)
            .collect()
    }

    /// Radius fractions `u / ct` in `[margin, 1 - margin]`.
    pub fn fractions(&self) -> Vec<f64> {
        (0..self.u_points)
            .map(|i| {
                self.margin + (1.0 - 2.0 * self.margin) * i as f64 / (self.u_points - 1) as f64
            })
            .collect()
    }

    pub fn spacings(&self) -> Vec<f64> {
        (0..self.levels)
            .map(|l| self.h0 / 2f64.powi(l as i32))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelResidual {
    pub h: f64,
    pub max_abs: f64,
    pub rms: f64,
}

/// Residuals of a discretised identity across refinement levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub name: String,
    pub levels: Vec<LevelResidual>,
    /// Least-squares slope of `log(max residual)` against `log h`; `None` when exact.
    pub order: Option<f64>,
    /// RMS deviation of the log-residuals from the fitted line.
    pub fit_residual: f64,
    /// Largest magnitude of the function being differenced.
    pub scale: f64,
    pub exact: bool,
    pub expected_order: f64,
    pub order_tolerance: f64,
    pub pass: bool,
}

impl ResidualReport {
    pub fn from_levels(name: impl Into<String>, levels: Vec<LevelResidual>, scale: f64) -> Self {
        let expected_order = 2.0;
        let order_tolerance = 0.3;
        let finite = levels
            .iter()
            .all(|l| l.max_abs.is_finite() && l.rms.is_finite());
        let exact = finite
            && levels
                .iter()
                .all(|l| l.max_abs <= EXACT_FLOOR * scale.max(f64::MIN_POSITIVE));
        let (order, fit_residual) = if exact || !finite {
            (None, 0.0)
        } else {
            let (slope, fit) = log_log_fit(&levels);
            (Some(slope), fit)
        };
        let pass = finite
            && (exact || order.is_some_and(|o| (o - expected_order).abs() <= order_tolerance));
        Self {
            name: name.into(),
            levels,
            order,
            fit_residual,
            scale,
            exact,
            expected_order,
            order_tolerance,
            pass,
        }
    }

    pub fn to_test_report(&self) -> TestReport {
        let n = self.levels.len();
        let report = match self.order {
            Some(order) => TestReport::from_bound(
                &self.name,
                (order - self.expected_order).abs(),
                self.order_tolerance,
                n,
            ),
            None if self.exact => TestReport::from_bound(&self.name, 0.0, self.order_tolerance, n),
            None => TestReport::from_bound(&self.name, f64::NAN, self.order_tolerance, n),
        };
        let residuals: Vec<String> = self
            .levels
            .iter()
            .map(|l| format!("{:.2e}@h={:.4}", l.max_abs, l.h))
            .collect();
        let detail = match self.order {
            Some(o) => format!("order={o:.3} residuals=[{}]", residuals.join(", ")),
            None if self.exact => {
                format!("exact to roundoff, residuals=[{}]", residuals.join(", "))
            }
            None => "non-finite residual".to_string(),
        };
        report.with_detail(detail)
    }
}

fn log_log_fit(levels: &[LevelResidual]) -> (f64, f64) {
    let pts: Vec<(f64, f64)> = levels
        .iter()
        .map(|l| (l.h.ln(), l.max_abs.max(f64::MIN_POSITIVE).ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let fit = (pts
        .iter()
        .map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    (slope, fit)
}

/// Max and RMS of a residual sample.
pub(crate) fn summarize(h: f64, residuals: &[f64]) -> LevelResidual {
    let max_abs = residuals.iter().fold(
        0.0f64,
        |m, r| if r.is_nan() { f64::NAN } else { m.max(r.abs()) },
    );
    let rms = (residuals.iter().map(|r| r * r).sum::<f64>() / residuals.len().max(1) as f64).sqrt();
    LevelResidual { h, max_abs, rms }
}

/// Central differences of a function of one variable.
pub(crate) fn d1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

pub(crate) fn d2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}
