//! Conditional characteristic functions of the planar motion.
//!
//! For `N(t) = n` and initial direction `j`, with `theta_k = alpha cos((k - j) pi / 2) - beta sin((k - j) pi / 2)`,
//!
//! ```text
//! F_n^j(t) = int_{0 < s_1 < ... < s_n < t} prod_{k=1}^{n+1} exp(i c (s_k - s_{k-1}) theta_k),
//! G_n^j = n! F_n^j / t^n,     dF_n^j/dt = F_{n-1}^j + i c theta_{n+1} F_n^j.
//! ```
//!
//! The phase sequence `theta_k` turns clockwise, `+x, -y, -x, +y`, while the
//! simulator turns counter-clockwise. Reversing the order of the segments
//! maps one cycle onto the other and the segment lengths are exchangeable,
//! so the laws averaged over a uniform initial direction coincide; only the
//! averaged transform is compared with simulation.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::params::ModelParams;
use crate::pde::grid::{summarize, ResidualReport};
use crate::quadrature::Quadrature;

/// Frequency pair `(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frequency {
    pub alpha: f64,
    pub beta: f64,
}

impl Frequency {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    /// `theta_k` for segment `k` (1-based) after starting in direction `j`.
    pub fn phase(&self, k: usize, j: usize) -> f64 {
        let angle = (k as f64 - j as f64) * FRAC_PI_2;
        self.alpha * angle.cos() - self.beta * angle.sin()
    }
}

fn check(params: &ModelParams, n: usize, j: usize, t: f64) -> Result<()> {
    if params.dim() != 2 {
        return Err(Error::Unsupported(
            "characteristic functions are planar".into(),
        ));
    }
    if n > 2 {
        return Err(Error::Unsupported(format!(
            "quadrature is provided for n <= 2 switches, got {n}"
        )));
    }
    if !(1..=4).contains(&j) {
        return Err(domain(format!("initial direction must be 1..=4, got {j}")));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(domain(format!("time must be finite and > 0, got {t}")));
    }
    Ok(())
}

fn quadrature() -> Quadrature {
    Quadrature::with_tolerance(1e-14, 1e-13)
}

/// `F_n^j(t)` by nested adaptive quadrature.
pub fn cf_integral(
    params: &ModelParams,
    n: usize,
    j: usize,
    freq: Frequency,
    t: f64,
) -> Result<Complex64> {
    check(params, n, j, t)?;
    let c = params.c();
    let i = Complex64::i();
    let th: Vec<f64> = (1..=n + 1).map(|k| freq.phase(k, j)).collect();
    let q = quadrature();
    match n {
        0 => Ok((i * c * th[0] * t).exp()),
        1 => q.integrate_complex(|s| (i * c * (th[0] * s + th[1] * (t - s))).exp(), 0.0, t),
        _ => {
            let inner = |s1: f64| {
                q.integrate_complex(
                    |s2| (i * c * (th[0] * s1 + th[1] * (s2 - s1) + th[2] * (t - s2))).exp(),
                    s1,
                    t,
                )
                .expect("smooth bounded integrand")
            };
            let re = q.integrate(|s1| inner(s1).re, 0.0, t)?.value;
            let im = q.integrate(|s1| inner(s1).im, 0.0, t)?.value;
            Ok(Complex64::new(re, im))
        }
    }
}

/// `G_n^j = E[exp(i(alpha X + beta Y)) | N(t) = n, D(0) = d_j]`.
pub fn conditional_cf_quadrature(
    params: &ModelParams,
    n: usize,
    j: usize,
    freq: Frequency,
    t: f64,
) -> Result<Complex64> {
    let f = cf_integral(params, n, j, freq, t)?;
    let factorial = (1..=n).product::<usize>() as f64;
    Ok(f * factorial / t.powi(n as i32))
}

/// `G_n` averaged over the four initial directions.
pub fn averaged_cf_quadrature(
    params: &ModelParams,
    n: usize,
    freq: Frequency,
    t: f64,
) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for j in 1..=4 {
        total += conditional_cf_quadrature(params, n, j, freq, t)?;
    }
    Ok(total / 4.0)
}

/// Checks `dF_n^j/dt = F_{n-1}^j + i c theta_{n+1} F_n^j` with a central
/// difference in `t` at every time of `times`, for `levels` halvings of `h0`.
pub fn cf_recursion_check(
    params: &ModelParams,
    n: usize,
    j: usize,
    freq: Frequency,
    times: &[f64],
    h0: f64,
    levels: usize,
) -> Result<ResidualReport> {
    if !(1..=2).contains(&n) {
        return Err(Error::Unsupported(format!(
            "the recursion is checked for n in 1..=2, got {n}"
        )));
    }
    if times.is_empty() || levels < 2 || times.iter().any(|&t| t - h0 <= 0.0) {
        return Err(domain(
            "need times beyond the first spacing and at least two levels",
        ));
    }
    let c = params.c();
    let theta = freq.phase(n + 1, j);
    let mut scale: f64 = 0.0;
    let mut rows = Vec::with_capacity(levels);
    for level in 0..levels {
        let h = h0 / 2f64.powi(level as i32);
        let mut residuals = Vec::with_capacity(times.len());
        for &t in times {
            let f = cf_integral(params, n, j, freq, t)?;
            let previous = cf_integral(params, n - 1, j, freq, t)?;
            let derivative = (cf_integral(params, n, j, freq, t + h)?
                - cf_integral(params, n, j, freq, t - h)?)
                / (2.0 * h);
            scale = scale.max(f.norm()).max(previous.norm());
            let rhs = previous + Complex64::i() * c * theta * f;
            residuals.push((derivative - rhs).norm());
        }
        rows.push(summarize(h, &residuals));
    }
    let name = format!(
        "cf_recursion(n={n}, j={j}, alpha={}, beta={})",
        freq.alpha, freq.beta
    );
    Ok(ResidualReport::from_levels(name, rows, scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planar() -> ModelParams {
        ModelParams::new(1.0, 1.0, 2).unwrap()
    }

    #[test]
    fn straight_runs() {
        let p = planar();
        let one = conditional_cf_quadrature(&p, 0, 1, Frequency::new(0.0, 0.0), 1.0).unwrap();
        assert_eq!(one, Complex64::new(1.0, 0.0));
        let z = conditional_cf_quadrature(&p, 0, 1, Frequency::new(0.7, 0.3), 2.0).unwrap();
        assert!((z - Complex64::new(0.0, 1.4).exp()).norm() < 1e-15);
    }

    #[test]
    fn closed_forms_for_one_and_two_switches() {
        let p = planar();
        let freq = Frequency::new(1.0, 1.0);
        let i = Complex64::i();
        for j in 1..=4 {
            let (a, b) = (freq.phase(1, j), freq.phase(2, j));
            let t = 1.3;
            let f1 = cf_integral(&p, 1, j, freq, t).unwrap();
            let want = if (a - b).abs() < 1e-12 {
                t * (i * a * t).exp()
            } else {
                ((i * a * t).exp() - (i * b * t).exp()) / (i * (a - b))
            };
            assert!((f1 - want).norm() < 1e-12, "j {j}");
        }
        // zero frequency gives t^n / n!
        let f2 = cf_integral(&p, 2, 3, Frequency::new(0.0, 0.0), 2.0).unwrap();
        assert!((f2 - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn recursion_holds() {
        let p = planar();
        let times = [0.6, 1.0, 1.4];
        for (n, j, a, b) in [(1, 1, 1.0, 0.0), (2, 3, 0.5, 0.5), (2, 2, 0.0, 1.0)] {
            let r = cf_recursion_check(&p, n, j, Frequency::new(a, b), &times, 0.1, 3).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let r = cf_recursion_check(&p, 2, 1, Frequency::new(0.0, 0.0), &times, 0.1, 3).unwrap();
        assert!(r.exact, "{r:?}");
    }

    #[test]
    fn a_wrong_phase_is_caught() {
        // the counter-clockwise phase breaks the recursion for a single direction
        let p = planar();
        let times = [0.6, 1.0, 1.4];
        let good = cf_recursion_check(&p, 1, 1, Frequency::new(0.0, 1.0), &times, 0.1, 3).unwrap();
        assert!(good.pass);
        let theta_ccw = 1.0; // +y after +x
        let f = |t: f64| cf_integral(&p, 1, 1, Frequency::new(0.0, 1.0), t).unwrap();
        let d = (f(1.0 + 1e-3) - f(1.0 - 1e-3)) / 2e-3;
        let rhs = cf_integral(&p, 0, 1, Frequency::new(0.0, 1.0), 1.0).unwrap()
            + Complex64::i() * theta_ccw * f(1.0);
        assert!((d - rhs).norm() > 0.1);
    }

    #[test]
    fn rejects_unsupported_requests() {
        let p = planar();
        assert!(conditional_cf_quadrature(&p, 3, 1, Frequency::new(1.0, 0.0), 1.0).is_err());
        assert!(conditional_cf_quadrature(&p, 1, 5, Frequency::new(1.0, 0.0), 1.0).is_err());
        let spatial = ModelParams::new(1.0, 1.0, 3).unwrap();
        assert!(conditional_cf_quadrature(&spatial, 1, 1, Frequency::new(1.0, 0.0), 1.0).is_err());
        assert!(cf_recursion_check(&p, 0, 1, Frequency::new(1.0, 0.0), &[1.0], 0.1, 3).is_err());
    }
}
