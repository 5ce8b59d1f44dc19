use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{domain, Result};
use crate::stats::report::{TestReport, LEVEL};

/// Pearson chi-square of cell counts against cell probabilities, `cells - 1` degrees of freedom.
pub fn chi_square_masses(observed: &[u64], expected: &[f64]) -> Result<TestReport> {
    if observed.len() != expected.len() || observed.len() < 2 {
        return Err(domain(
            "chi-square needs matching count and mass vectors with at least two cells",
        ));
    }
    if expected.iter().any(|&p| p.is_nan() || p <= 0.0) {
        return Err(domain("every expected mass must be positive"));
    }
    let total_mass: f64 = expected.iter().sum();
    if (total_mass - 1.0).abs() > 1e-9 {
        return Err(domain(format!(
            "expected masses sum to {total_mass}, not 1"
        )));
    }
    let n: u64 = observed.iter().sum();
    if n < 1000 {
        return Err(domain(format!(
            "chi-square needs at least 1000 counts, got {n}"
        )));
    }
    let statistic: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &p)| {
            let e = p * n as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let p_value = chi_square_survival(statistic, (observed.len() - 1) as f64);
    Ok(TestReport::from_p_value(
        "chi_square_masses",
        statistic,
        p_value,
        LEVEL,
        n as usize,
    ))
}

pub fn chi_square_survival(statistic: f64, dof: f64) -> f64 {
    ChiSquared::new(dof)
        .expect("positive degrees of freedom")
        .sf(statistic)
}

/// Sample mean of `x^m` against `analytic`; passes iff the difference is
/// within three standard errors.
pub fn moment_compare(samples: &[f64], analytic: f64, m: u32) -> Result<TestReport> {
    if samples.len() < 2 {
        return Err(domain("moment comparison needs at least two samples"));
    }
    let n = samples.len() as f64;
    let powers: Vec<f64> = samples.iter().map(|x| x.powi(m as i32)).collect();
    let mean = powers.iter().sum::<f64>() / n;
    let var = powers.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (n - 1.0);
    if !(mean.is_finite() && var.is_finite()) {
        return Err(domain("sample moments are not finite"));
    }
    let se = (var / n).sqrt();
    Ok(TestReport::from_bound(
        "moment_compare",
        (mean - analytic).abs(),
        3.0 * se,
        samples.len(),
    )
    .with_detail(format!("m={m} sample={mean:.8} analytic={analytic:.8}")))
}

/// Observed frequency `hits / n` against `p`, within three binomial standard errors.
pub fn proportion_compare(hits: usize, n: usize, p: f64) -> Result<TestReport> {
    if n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(domain("proportion comparison needs n > 0 and p in [0, 1]"));
    }
    let freq = hits as f64 / n as f64;
    let se = (p * (1.0 - p) / n as f64).sqrt();
    Ok(
        TestReport::from_bound("proportion_compare", (freq - p).abs(), 3.0 * se, n)
            .with_detail(format!("observed={freq:.6} expected={p:.6}")),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::rng::substream;
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn perfect_counts() {
        let r = chi_square_masses(&[250, 250, 500], &[0.25, 0.25, 0.5]).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, Some(1.0));
    }

    #[test]
    fn chi_square_reference() {
        // scipy.stats.chi2.sf(7.815, 3) = 0.04999...
        assert!((chi_square_survival(7.814_727_903_251_178, 3.0) - 0.05).abs() < 1e-12);
    }

    #[test]
    fn chi_square_input_errors() {
        assert!(chi_square_masses(&[500, 500], &[1.0, 0.0]).is_err());
        assert!(chi_square_masses(&[5, 5], &[0.5, 0.5]).is_err());
        assert!(chi_square_masses(&[500, 500], &[0.5, 0.6]).is_err());
    }

    #[test]
    fn chi_square_null_rate() {
        let probs = [0.1, 0.2, 0.3, 0.4];
        let passes = (0..100)
            .filter(|&s| {
                let mut rng = substream(900 + s, 0);
                let mut counts = [0u64; 4];
                for _ in 0..5000 {
                    let x: f64 = rng.random();
                    let cell = if x < 0.1 {
                        0
                    } else if x < 0.3 {
                        1
                    } else if x < 0.6 {
                        2
                    } else {
                        3
                    };
                    counts[cell] += 1;
                }
                chi_square_masses(&counts, &probs).unwrap().pass
            })
            .count();
        assert!(passes >= 95, "{passes}");
    }

    #[test]
    fn moments() {
        let mut rng = substream(77, 0);
        let v: Vec<f64> = (0..100_000).map(|_| rng.random()).collect();
        assert!(moment_compare(&v, 0.5, 1).unwrap().pass);
        assert!(moment_compare(&v, 1.0 / 3.0, 2).unwrap().pass);
        let zero = moment_compare(&v, 1.0, 0).unwrap();
        assert!(zero.pass && zero.statistic == 0.0);
        assert!(!moment_compare(&v, 0.51, 1).unwrap().pass);
    }

    #[test]
    fn proportions() {
        assert!(proportion_compare(500, 1000, 0.5).unwrap().pass);
        assert!(!proportion_compare(600, 1000, 0.5).unwrap().pass);
        assert!(proportion_compare(1, 0, 0.5).is_err());
    }

    proptest! {
        #[test]
        fn chi_square_p_decreases(a in 0.0f64..50.0, b in 0.0f64..50.0, dof in 1u32..10) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(chi_square_survival(lo, dof as f64) >= chi_square_survival(hi, dof as f64));
        }
    }
}
