//! Acceptance criteria, one test each. Every test prints one line of the
//! form `criterion N: PASS|FAIL` followed by the individual reports. The
//! lines go straight to the process stdout so they show up even when the
//! harness captures output of passing tests.

use std::io::Write;

use cyclic_motion::stats::TestReport;
use cyclic_motion::verify::{self, VerifyConfig};

fn config() -> VerifyConfig {
    VerifyConfig::default()
}

fn judge(number: u32, title: &str, reports: Vec<TestReport>) {
    assert!(
        !reports.is_empty(),
        "criterion {number} produced no reports"
    );
    let pass = reports.iter().all(|r| r.pass || !r.blocking);
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut text = format!("criterion {number}: {verdict} {title}\n");
    for r in &reports {
        text.push_str(&format!("    {r}\n"));
    }
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).expect("stdout is writable");
    out.flush().expect("stdout is writable");
    assert!(pass, "criterion {number} failed");
}

#[test]
fn criterion_01_boundary_mass_2d() {
    judge(
        1,
        "boundary mass in the plane",
        verify::boundary_mass_2d(&config()),
    );
}

#[test]
fn criterion_02_strata_masses_3d() {
    judge(
        2,
        "strata masses and vertex uniformity in 3D",
        verify::strata_masses_3d(&config()),
    );
}

#[test]
fn criterion_03_conditional_uniformity() {
    judge(
        3,
        "U/ct given two switches is uniform",
        verify::conditional_uniformity_2d(&config()),
    );
}

#[test]
fn criterion_04_conditional_laws() {
    judge(
        4,
        "conditional laws of U",
        verify::conditional_laws(&config()),
    );
}

#[test]
fn criterion_05_conditional_means() {
    judge(
        5,
        "conditional means in 3D",
        verify::conditional_means_3d(&config()),
    );
}

#[test]
fn criterion_06_normalization() {
    judge(
        6,
        "normalization of the interior density",
        verify::normalization(&config()),
    );
}

#[test]
fn criterion_07_mean_and_moments() {
    judge(
        7,
        "planar mean and moments",
        verify::mean_and_moments(&config()),
    );
}

#[test]
fn criterion_08_representation_agreement() {
    judge(
        8,
        "density representations agree",
        verify::representation_agreement(&config()),
    );
}

#[test]
fn criterion_09_mixture_identity() {
    judge(
        9,
        "Poisson mixture of conditional laws",
        verify::mixture_identity(&config()),
    );
}

#[test]
fn criterion_10_pde_residuals() {
    judge(
        10,
        "PDE residuals and kernel identity",
        verify::pde_residuals(&config()),
    );
}

#[test]
fn criterion_11_cf_recursions() {
    judge(
        11,
        "characteristic function recursions",
        verify::cf_recursions(&config()),
    );
}

#[test]
fn criterion_12_heat_limit() {
    judge(12, "diffusive limit", verify::heat_limit(&config()));
}

#[test]
fn criterion_13_equality_in_law() {
    judge(
        13,
        "equality in law across dimensions",
        verify::equality_in_law(&config()),
    );
}
