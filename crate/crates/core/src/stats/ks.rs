//! Kolmogorov-Smirnov tests with the asymptotic Kolmogorov distribution.

use crate::error::{domain, Result};
use crate::stats::report::{TestReport, LEVEL};

/// A cumulative distribution function.
pub trait Cdf {
    fn cdf(&self, x: f64) -> f64;

    /// The CDF at each point of a sorted slice; override when cumulative
    /// evaluation is cheaper than pointwise.
    fn cdf_sorted(&self, sorted: &[f64]) -> Result<Vec<f64>> {
        Ok(sorted.iter().map(|&x| self.cdf(x)).collect())
    }
}

impl<F: Fn(f64) -> f64> Cdf for F {
    fn cdf(&self, x: f64) -> f64 {
        self(x)
    }
}

/// `P(K > x)` for the Kolmogorov distribution.
pub fn kolmogorov_survival(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < 1.18 {
        // theta-function form, fast for small x
        let y = -std::f64::consts::PI.powi(2) / (8.0 * x * x);
        let mut sum = 0.0;
        for k in 1..=20 {
            let j = (2 * k - 1) as f64;
            sum += (j * j * y).exp();
        }
        (1.0 - (2.0 * std::f64::consts::PI).sqrt() / x * sum).clamp(0.0, 1.0)
    } else {
        let mut sum = 0.0;
        for k in 1..=100 {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * x * x).exp();
            sum += if k % 2 == 1 { term } else { -term };
            if term < 1e-300 {
                break;
            }
        }
        (2.0 * sum).clamp(0.0, 1.0)
    }
}

/// Asymptotic p-value of `D` for effective sample size `n`, with Stephens'
/// finite-sample correction `(sqrt n + 0.12 + 0.11 / sqrt n) D`.
pub fn ks_p_value(d: f64, n: f64) -> f64 {
    let root = n.sqrt();
    kolmogorov_survival((root + 0.12 + 0.11 / root) * d)
}

fn check_sorted(values: &[f64], what: &str) -> Result<()> {
    if values.len() < 10 {
        return Err(domain(format!(
            "{what}: need at least 10 values, got {}",
            values.len()
        )));
    }
    if values.iter().any(|v| v.is_nan()) || values.windows(2).any(|w| w[0] > w[1]) {
        return Err(domain(format!(
            "{what}: values must be sorted and free of NaN"
        )));
    }
    Ok(())
}

/// One-sample test of sorted `values` against `law`.
pub fn ks_one_sample<C: Cdf + ?Sized>(values: &[f64], law: &C) -> Result<TestReport> {
    check_sorted(values, "ks_one_sample")?;
    let f = law.cdf_sorted(values)?;
    let n = values.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &fi) in f.iter().enumerate() {
        if fi.is_nan() {
            return Err(domain("law returned NaN"));
        }
        d = d.max((i + 1) as f64 / n - fi).max(fi - i as f64 / n);
    }
    Ok(TestReport::from_p_value(
        "ks_one_sample",
        d,
        ks_p_value(d, n),
        LEVEL,
        values.len(),
    ))
}

/// Two-sample test of sorted `a` and `b`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<TestReport> {
    check_sorted(a, "ks_two_sample")?;
    check_sorted(b, "ks_two_sample")?;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let effective = na * nb / (na + nb);
    Ok(TestReport::from_p_value(
        "ks_two_sample",
        d,
        ks_p_value(d, effective),
        LEVEL,
        a.len() + b.len(),
    ))
}
