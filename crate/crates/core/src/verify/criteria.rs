//! One function per verification target. Each returns the reports it
//! produced; evaluation errors become failed reports instead of aborting.

use num_complex::Complex64;

use crate::analytic::{
    ac_mass, conditional_mean_u, density_u, density_u_closed_form, density_u_coefficient_form,
    mean_u, mixture_density, moment_u, moment_u_quadrature, ConditionalLaw,
};
use crate::error::Result;
use crate::params::ModelParams;
use crate::pde::{
    averaged_cf_quadrature, cf_recursion_check, density_mass, heat_limit_check,
    kernel_identity_check, klein_gordon_residual, normalization_check,
    planar_fourth_order_residual, planar_w_form_residual, Frequency, GridSpec, PlanarField,
};
use crate::quadrature::Quadrature;
use crate::sim::{
    derive_seed, empirical_char_function, simulate_ensemble, Conditioning, Direction, Stratum,
};
use crate::stats::{
    chi_square_masses, ks_one_sample, ks_two_sample, moment_compare, proportion_compare, LawCdf,
    TestReport,
};
use crate::verify::VerifyConfig;

fn seed_for(cfg: &VerifyConfig, name: &str) -> u64 {
    // FNV-1a, so seeds depend on the check and not on the order checks run in
    let tag = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    });
    derive_seed(cfg.seed, tag)
}

fn guard(name: &str, r: Result<TestReport>) -> TestReport {
    r.map(|rep| rep.renamed(name))
        .unwrap_or_else(|e| TestReport::errored(name, e.to_string()))
}

fn unit(dim: usize) -> ModelParams {
    ModelParams::new(1.0, 1.0, dim).expect("valid")
}

/// Fraction of planar paths ending on the boundary at `lambda = c = t = 1`.
pub fn boundary_mass_2d(cfg: &VerifyConfig) -> Vec<TestReport> {
    let name = "boundary_mass_2d";
    let r = simulate_ensemble(
        &unit(2),
        1.0,
        cfg.samples,
        seed_for(cfg, name),
        Conditioning::Unconditional,
    )
    .and_then(|set| {
        let hits = set
            .outcomes
            .iter()
            .filter(|o| o.stratum != Stratum::Interior)
            .count();
        proportion_compare(hits, set.len(), 2.0 * (-1.0f64).exp())
    });
    vec![guard(name, r)]
}

/// Strata masses and vertex uniformity in three dimensions.
pub fn strata_masses_3d(cfg: &VerifyConfig) -> Vec<TestReport> {
    let mut out = Vec::new();
    for lt in [0.5, 1.0, 2.0] {
        let params = ModelParams::new(1.0, lt, 3).expect("valid");
        let name = format!("strata_masses_3d(lambda*t={lt})");
        let set = simulate_ensemble(
            &params,
            1.0,
            cfg.samples,
            seed_for(cfg, &name),
            Conditioning::Unconditional,
        );
        let set = match set {
            Ok(s) => s,
            Err(e) => {
                out.push(TestReport::errored(name, e.to_string()));
                continue;
            }
        };
        let counts = set.stratum_counts();
        let get = |s: Stratum| *counts.get(&s).unwrap_or(&0) as u64;
        let observed = [
            get(Stratum::Vertex),
            get(Stratum::BoundaryFace(1)),
            get(Stratum::BoundaryFace(2)),
            get(Stratum::Interior),
        ];
        let masses: Vec<f64> = (0..3).map(|k| params.poisson_mass(1.0, k)).collect();
        let expected = [
            masses[0],
            masses[1],
            masses[2],
            1.0 - masses.iter().sum::<f64>(),
        ];
        out.push(guard(&name, chi_square_masses(&observed, &expected)));

        let vertex_name = format!("vertex_uniformity_3d(lambda*t={lt})");
        let by_vertex = set.vertex_counts();
        let observed: Vec<u64> = (1..=6)
            .map(|j| {
                *by_vertex
                    .get(&Direction::new(j, 3).expect("valid"))
                    .unwrap_or(&0) as u64
            })
            .collect();
        out.push(guard(
            &vertex_name,
            chi_square_masses(&observed, &[1.0 / 6.0; 6]),
        ));
    }
    out
}

/// `U / ct` given two switches in the plane against the uniform law.
pub fn conditional_uniformity_2d(cfg: &VerifyConfig) -> Vec<TestReport> {
    let name = "conditional_uniformity_2d(n=2)";
    let r = simulate_ensemble(
        &unit(2),
        1.0,
        cfg.samples,
        seed_for(cfg, name),
        Conditioning::Events(2),
    )
    .and_then(|set| {
        ks_one_sample(&set.sorted_scaled_u(), &|v: f64| {
            (cfg.density_scale * v).clamp(0.0, 1.0)
        })
    });
    vec![guard(name, r)]
}

/// Simulated conditional radii against the closed-form conditional laws.
pub fn conditional_laws(cfg: &VerifyConfig) -> Vec<TestReport> {
    let mut out = Vec::new();
    for dim in [2, 3] {
        for n in 3..=6 {
            let name = format!("ks_conditional_law(d={dim}, n={n})");
            let params = unit(dim);
            let r = simulate_ensemble(
                &params,
                1.0,
                cfg.samples,
                seed_for(cfg, &name),
                Conditioning::Events(n),
            )
            .and_then(|set| {
                let law = LawCdf::new(params, Conditioning::Events(n), 1.0)?
                    .with_scale(cfg.density_scale);
                ks_one_sample(&set.sorted_u(), &law)
            });
            out.push(guard(&name, r));
        }
    }
    out
}

/// Simulated and closed-form conditional means in three dimensions.
pub fn conditional_means_3d(cfg: &VerifyConfig) -> Vec<TestReport> {
    let mut out = Vec::new();
    for n in 3..=5 {
        let name = format!("conditional_mean_mc(d=3, n={n})");
        let r = simulate_ensemble(
            &unit(3),
            1.0,
            cfg.samples,
            seed_for(cfg, &name),
            Conditioning::Events(n),
        )
        .and_then(|set| moment_compare(&set.u_values(), conditional_mean_u(n)?, 1));
        out.push(guard(&name, r));
    }
    let q = Quadrature::with_tolerance(1e-14, 1e-14);
    for n in 3..=12 {
        let name = format!("conditional_mean_quadrature(d=3, n={n})");
        let r = ConditionalLaw::new(3, n).and_then(|law| {
            let integral = q.integrate(|v| v * law.density_scaled(v), 0.0, 1.0)?.value;
            let closed = conditional_mean_u(n)?;
            Ok(
                TestReport::from_bound(&name, (integral - closed).abs(), 1e-10, 1)
                    .with_detail(format!("closed={closed:.15} quadrature={integral:.15}")),
            )
        });
        out.push(guard(&name, r));
    }
    out
}

/// Interior mass of the density against the Poisson tail.
pub fn normalization(cfg: &VerifyConfig) -> Vec<TestReport> {
    let mut out = Vec::new();
    for dim in [2, 3] {
        for lt in [0.5, 1.0, 2.0, 5.0] {
            let params = ModelParams::new(1.0, lt, dim).expect("valid");
            let name = format!("normalization(d={dim}, lambda*t={lt})");
            let r = if cfg.density_scale == 1.0 {
                normalization_check(&params, 1.0, 1e-8)
            } else {
                (|| {
                    let mass = cfg.density_scale * density_mass(&params, 1.0)?;
                    let want = ac_mass(&params, 1.0)?;
                    Ok(TestReport::from_bound(&name, (mass - want).abs(), 1e-8, 1)
                        .with_detail(format!("integral={mass:.12} expected={want:.12}")))
                })()
            };
            out.push(guard(&name, r));
        }
    }
    out
}

/// Planar mean and moments against quadrature, simulation and each other.
pub fn mean_and_moments(cfg: &VerifyConfig) -> Vec<TestReport> {
    let params = unit(2);
    let mut out = Vec::new();
    let r = (|| {
        let closed = mean_u(&params, 1.0)?;
        let oracle = moment_u_quadrature(&params, 1, 1.0)?;
        Ok(
            TestReport::from_bound("mean_u_quadrature", (closed - oracle).abs(), 1e-8, 1)
                .with_detail(format!("closed={closed:.12} oracle={oracle:.12}")),
        )
    })();
    out.push(guard("mean_u_quadrature", r));

    let name = "mean_u_monte_carlo";
    let r = simulate_ensemble(
        &params,
        1.0,
        cfg.samples,
        seed_for(cfg, name),
        Conditioning::Unconditional,
    )
    .and_then(|set| moment_compare(&set.u_values(), mean_u(&params, 1.0)?, 1));
    out.push(guard(name, r));

    for m in 0..=6u32 {
        let name = format!("moment_u_quadrature(m={m})");
        let r = (|| {
            let closed = moment_u(&params, m, 1.0)?;
            let oracle = moment_u_quadrature(&params, m, 1.0)?;
            Ok(TestReport::from_bound(
                &name,
                (closed - oracle).abs() / oracle.abs().max(1.0),
                1e-8,
                1,
            )
            .with_detail(format!("closed={closed:.12} oracle={oracle:.12}")))
        })();
        out.push(guard(&name, r));
    }
    let r = moment_u(&params, 0, 1.0)
        .map(|m0| TestReport::from_bound("moment_u_zero_is_one", (m0 - 1.0).abs(), 1e-14, 1));
    out.push(guard("moment_u_zero_is_one", r));
    let r = (|| {
        let (m1, mean) = (moment_u(&params, 1, 1.0)?, mean_u(&params, 1.0)?);
        Ok(TestReport::from_bound(
            "moment_u_one_is_mean",
            (m1 - mean).abs() / mean,
            1e-14,
            1,
        ))
    })();
    out.push(guard("moment_u_one_is_mean", r));
    out
}

fn max_relative_gap<F, G>(points: &[f64], a: F, b: G) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
    G: Fn(f64) -> Result<f64>,
{
    let mut worst: f64 = 0.0;
    for &u in points {
        let (x, y) = (a(u)?, b(u)?);
        worst = worst.max((x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE));
    }
    Ok(worst)
}

/// Series, kernel-derivative and `I_0`/`I_1` forms of the density.
pub fn representation_agreement(_cfg: &VerifyConfig) -> Vec<TestReport> {
    let mut out = Vec::new();
    for &(c, l, t) in &[(1.0, 1.0, 1.0), (2.0, 0.5, 3.0), (1.0, 4.0, 2.0)] {
        let tag = format!("c={c}, lambda={l}, t={t}");
        for dim in [2, 3] {
            let params = ModelParams::new(c, l, dim).expect("valid");
            let reach = params.reach(t);
            let points: Vec<f64> = (0..1000)
                .map(|i| reach * (i as f64 + 0.5) / 1000.0)
                .collect();
            let series = |u| density_u(&params, t, u);
            let name = format!("series_vs_coefficients(d={dim}, {tag})");
            let r = max_relative_gap(&points, series, |u| {
                density_u_coefficient_form(&params, t, u)
            })
            .map(|gap| TestReport::from_bound(&name, gap, 1e-9, points.len()));
            out.push(guard(&name, r));
            if dim == 2 {
                let name = format!("series_vs_bessel_form(d=2, {tag})");
                let r = max_relative_gap(&points, series, |u| density_u_closed_form(&params, t, u))
                    .map(|gap| TestReport::from_bound(&name, gap, 1e-9, points.len()));
                out.push(guard(&name, r));
                let name = format!("coefficients_vs_bessel_form(d=2, {tag})");
                let r = max_relative_gap(
                    &points,
                    |u| density_u_coefficient_form(&params, t, u),
                    |u| density_u_closed_form(&params, t, u),
                )
                .map(|gap| TestReport::from_bound(&name, gap, 1e-9, points.len()));
                out.push(guard(&name, r));
            }
        }
    }
    out
}

/// Poisson mixture of the conditional laws against the density.
pub fn mixture_identity(_cfg: &VerifyConfig) -> Vec<TestReport> {
    let mut out = Vec::new();
    for dim in [2, 3] {
        for lt in [0.5, 1.0, 2.0] {
            let params = ModelParams::new(1.0, lt, dim).expect("valid");
            let name = format!("mixture_identity(d={dim}, lambda*t={lt})");
            let r = (|| {
                let mut worst: f64 = 0.0;
                for i in 0..=200 {
                    let u = i as f64 / 200.0;
                    worst = worst.max(
                        (mixture_density(&params, 1.0, u, 60)? - density_u(&params, 1.0, u)?).abs(),
                    );
                }
                Ok(TestReport::from_bound(&name, worst, 1e-8, 201))
            })();
            out.push(guard(&name, r));
        }
    }
    out
}

/// Kernel identity, layer equations and the planar fourth-order equation.
pub fn pde_residuals(_cfg: &VerifyConfig) -> Vec<TestReport> {
    let mut out = Vec::new();
    let grid = GridSpec::default();
    out.push(guard(
        "kernel_identity",
        kernel_identity_check(&unit(2), &grid, 1e-10),
    ));
    for dim in [2, 3] {
        let name = format!("klein_gordon_residual(d={dim})");
        out.push(guard(
            &name,
            klein_gordon_residual(&unit(dim), &grid).map(|r| r.to_test_report()),
        ));
    }
    let planar = GridSpec::planar_default();
    let p = unit(2);
    out.push(guard(
        "planar_fourth_order(layer field)",
        planar_fourth_order_residual(&p, &planar, PlanarField::Layer).map(|r| r.to_test_report()),
    ));
    out.push(guard(
        "planar_fourth_order_w_form(layer field)",
        planar_w_form_residual(&p, &planar, PlanarField::Layer).map(|r| r.to_test_report()),
    ));
    let coarea = guard(
        "planar_fourth_order(coarea field p/4u)",
        planar_fourth_order_residual(&p, &planar, PlanarField::Coarea).map(|r| r.to_test_report()),
    );
    out.push(coarea.non_blocking());
    out
}

fn cf_against_samples(cfg: &VerifyConfig, n: usize, freq: Frequency) -> Result<TestReport> {
    let params = unit(2);
    let name = format!(
        "cf_monte_carlo(n={n}, alpha={}, beta={})",
        freq.alpha, freq.beta
    );
    let set = simulate_ensemble(
        &params,
        1.0,
        cfg.samples,
        seed_for(cfg, &name),
        Conditioning::Events(n),
    )?;
    let z = empirical_char_function(&set, freq.alpha, freq.beta)?;
    let exact = averaged_cf_quadrature(&params, n, freq, 1.0)?;
    let count = set.len() as f64;
    let (mut vc, mut vs) = (0.0, 0.0);
    for o in &set.outcomes {
        let w = Complex64::from_polar(1.0, freq.alpha * o.position[0] + freq.beta * o.position[1]);
        vc += (w.re - z.re).powi(2);
        vs += (w.im - z.im).powi(2);
    }
    let se_re = (vc / (count - 1.0) / count).sqrt().max(f64::MIN_POSITIVE);
    let se_im = (vs / (count - 1.0) / count).sqrt().max(f64::MIN_POSITIVE);
    let score = ((z.re - exact.re).abs() / se_re).max((z.im - exact.im).abs() / se_im);
    Ok(
        TestReport::from_bound(name, score, 3.0, set.len()).with_detail(format!(
            "sample={z:.6} quadrature={exact:.6} (statistic in standard errors)"
        )),
    )
}

/// Difference-differential recursions of the conditional transforms, and
/// the averaged transform against simulation.
pub fn cf_recursions(cfg: &VerifyConfig) -> Vec<TestReport> {
    let mut out = Vec::new();
    let params = unit(2);
    let freqs = [
        Frequency::new(1.0, 0.0),
        Frequency::new(0.0, 1.0),
        Frequency::new(0.5, 0.5),
    ];
    let times = [0.6, 1.0, 1.4];
    for n in 1..=2 {
        for j in 1..=4 {
            for f in freqs {
                let name = format!(
                    "cf_recursion(n={n}, j={j}, alpha={}, beta={})",
                    f.alpha, f.beta
                );
                let r = cf_recursion_check(&params, n, j, f, &times, 0.1, 3)
                    .map(|r| r.to_test_report());
                out.push(guard(&name, r));
            }
        }
    }
    for n in 1..=2 {
        for f in freqs.iter().copied().chain([Frequency::new(1.0, 1.0)]) {
            let name = format!("cf_monte_carlo(n={n}, alpha={}, beta={})", f.alpha, f.beta);
            out.push(guard(&name, cf_against_samples(cfg, n, f)));
        }
    }
    out
}

/// Diffusive limit along `lambda = c^2`.
pub fn heat_limit(cfg: &VerifyConfig) -> Vec<TestReport> {
    let mut out = Vec::new();
    for dim in [2, 3] {
        let name = format!("heat_limit(d={dim})");
        match heat_limit_check(
            dim,
            1.0,
            &[8.0, 16.0, 32.0],
            cfg.heat_samples,
            seed_for(cfg, &name),
            0.05,
        ) {
            Ok(result) => out.extend(result.reports),
            Err(e) => out.push(TestReport::errored(name, e.to_string())),
        }
    }
    out
}

fn pair_counts(low_dim: usize) -> [usize; 2] {
    // n must be at least the larger dimension and of the parity the pair is about
    let parity = if low_dim % 2 == 1 { 0 } else { 1 };
    let mut n = low_dim + 1;
    if n % 2 != parity {
        n += 1;
    }
    [n, n + 2]
}

/// Two-sample comparisons of conditional radii in neighbouring dimensions:
/// even counts for `(2m - 1, 2m)`, odd counts for `(2m, 2m + 1)`. Pairs up
/// to dimension 3 are the proved equalities; higher pairs test the
/// conjectured extension and never block.
pub fn equality_in_law(cfg: &VerifyConfig) -> Vec<TestReport> {
    let mut out = Vec::new();
    let top = cfg.max_dim.clamp(2, crate::params::MAX_DIM);
    for low in 1..top {
        for n in pair_counts(low) {
            let kind = if low < 3 {
                "equality_in_law"
            } else {
                "conjecture_support"
            };
            let name = format!("{kind}(d={low} vs d={}, n={n})", low + 1);
            let r = (|| {
                let a = simulate_ensemble(
                    &unit(low),
                    1.0,
                    cfg.samples,
                    seed_for(cfg, &format!("{name}/a")),
                    Conditioning::Events(n),
                )?;
                let b = simulate_ensemble(
                    &unit(low + 1),
                    1.0,
                    cfg.samples,
                    seed_for(cfg, &format!("{name}/b")),
                    Conditioning::Events(n),
                )?;
                ks_two_sample(&a.sorted_u(), &b.sorted_u())
            })();
            let report = guard(&name, r);
            out.push(if low < 3 {
                report
            } else {
                report.non_blocking()
            });
        }
    }
    out
}
