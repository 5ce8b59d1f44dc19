//! Globally adaptive Gauss-Kronrod (7/15 point) quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate meets `max(abs_tol, rel_tol * |value|)`.

use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{domain, Result};

const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Gauss weights for the odd-indexed Kronrod nodes (the 7-point Gauss rule).
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-12,
            max_intervals: 2000,
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * KRONROD_WEIGHTS[7];
    let mut gauss = fc * GAUSS_WEIGHTS[3];
    for (j, (&x, &w)) in KRONROD_NODES
        .iter()
        .zip(&KRONROD_WEIGHTS)
        .take(7)
        .enumerate()
    {
        let pair = f(centre - half * x) + f(centre + half * x);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += GAUSS_WEIGHTS[j / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

impl Quadrature {
    pub fn with_tolerance(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<Estimate> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(domain("quadrature limits must be finite"));
        }
        if a == b {
            return Ok(Estimate {
                value: 0.0,
                error: 0.0,
                intervals: 0,
            });
        }
        let first = kronrod(&f, a, b);
        let mut value = first.value;
        let mut error = first.error;
        let mut heap = BinaryHeap::new();
        heap.push(first);
        while error > self.abs_tol.max(self.rel_tol * value.abs()) {
            if heap.len() >= self.max_intervals {
                return Err(domain(format!(
                    "quadrature did not converge on [{a}, {b}]: error {error:e} after {} panels",
                    heap.len()
                )));
            }
            let worst = heap.pop().expect("heap is never empty");
            let mid = 0.5 * (worst.a + worst.b);
            let left = kronrod(&f, worst.a, mid);
            let right = kronrod(&f, mid, worst.b);
            value += left.value + right.value - worst.value;
            error += left.error + right.error - worst.error;
            heap.push(left);
            heap.push(right);
        }
        if !value.is_finite() {
            return Err(domain("integrand produced a non-finite value"));
        }
        // recompute from the panels to shed accumulated update roundoff
        let value = heap.iter().map(|p| p.value).sum();
        let error = heap.iter().map(|p| p.error).sum();
        Ok(Estimate {
            value,
            error,
            intervals: heap.len(),
        })
    }

    /// Integral over consecutive sub-intervals `[points[i], points[i+1]]`, summed.
    pub fn integrate_split<F: Fn(f64) -> f64>(&self, f: F, points: &[f64]) -> Result<Estimate> {
        let mut total = Estimate {
            value: 0.0,
            error: 0.0,
            intervals: 0,
        };
        for w in points.windows(2) {
            let e = self.integrate(&f, w[0], w[1])?;
            total.value += e.value;
            total.error += e.error;
            total.intervals += e.intervals;
        }
        Ok(total)
    }

    pub fn integrate_complex<F: Fn(f64) -> Complex64>(
        &self,
        f: F,
        a: f64,
        b: f64,
    ) -> Result<Complex64> {
        let re = self.integrate(|x| f(x).re, a, b)?.value;
        let im = self.integrate(|x| f(x).im, a, b)?.value;
        Ok(Complex64::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_integrate_constants() {
        let q = Quadrature::default();
        let e = q.integrate(|_| 1.0, -1.0, 1.0).unwrap();
        assert!((e.value - 2.0).abs() < 1e-15);
        let e = q.integrate(|x| x.powi(12), 0.0, 1.0).unwrap();
        assert!((e.value - 1.0 / 13.0).abs() < 1e-15);
    }

    #[test]
    fn adapts_to_sharp_features() {
        let q = Quadrature::with_tolerance(1e-12, 1e-12);
        let e = q.integrate(|x| x.sqrt(), 0.0, 1.0).unwrap();
        assert!((e.value - 2.0 / 3.0).abs() < 1e-11);
        let e = q.integrate(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!(((e.value - exact) / exact).abs() < 1e-11);
    }

    #[test]
    fn complex_and_split() {
        let q = Quadrature::default();
        let z = q
            .integrate_complex(|x| Complex64::new(0.0, x).exp(), 0.0, 1.0)
            .unwrap();
        let want = (Complex64::new(0.0, 1.0).exp() - 1.0) / Complex64::new(0.0, 1.0);
        assert!((z - want).norm() < 1e-13);
        let s = q.integrate_split(|x| x.exp(), &[0.0, 0.3, 1.0]).unwrap();
        assert!((s.value - (1f64.exp() - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn reports_failure() {
        let q = Quadrature {
            max_intervals: 4,
            ..Quadrature::with_tolerance(1e-15, 0.0)
        };
        assert!(q.integrate(|x| (1.0 / x).sin(), 1e-6, 1.0).is_err());
        assert!(q.integrate(|x| x, 0.0, f64::INFINITY).is_err());
    }
}
