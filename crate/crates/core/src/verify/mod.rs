//! Verification suites: every check of the artifact, grouped and seeded.

pub mod criteria;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::stats::TestReport;

pub use criteria::*;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Largest dimension used by the conjecture pairs.
    pub max_dim: usize,
    pub samples: usize,
    pub heat_samples: usize,
    /// Multiplies every analytic CDF handed to a goodness-of-fit test and
    /// the integrated density of the normalization check. Anything other
    /// than 1 is a deliberately broken law.
    pub density_scale: f64,
    /// Keep only reports whose name contains this string.
    pub filter: Option<String>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            max_dim: 5,
            samples: 100_000,
            heat_samples: 1_000_000,
            density_scale: 1.0,
            filter: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Distributions,
    Moments,
    Pde,
    Limits,
    Conjecture,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = [
        "distributions",
        "moments",
        "pde",
        "limits",
        "conjecture",
        "all",
    ];

    fn checks(self) -> Vec<fn(&VerifyConfig) -> Vec<TestReport>> {
        match self {
            Suite::Distributions => vec![
                boundary_mass_2d,
                strata_masses_3d,
                conditional_uniformity_2d,
                conditional_laws,
                conditional_means_3d,
                normalization,
                representation_agreement,
                mixture_identity,
            ],
            Suite::Moments => vec![mean_and_moments],
            Suite::Pde => vec![pde_residuals, cf_recursions],
            Suite::Limits => vec![heat_limit],
            Suite::Conjecture => vec![equality_in_law],
            Suite::All => [
                Suite::Distributions,
                Suite::Moments,
                Suite::Pde,
                Suite::Limits,
                Suite::Conjecture,
            ]
            .into_iter()
            .flat_map(Suite::checks)
            .collect(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        f.write_str(Self::NAMES[i])
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let all = [
            Suite::Distributions,
            Suite::Moments,
            Suite::Pde,
            Suite::Limits,
            Suite::Conjecture,
            Suite::All,
        ];
        all.into_iter().find(|v| v.to_string() == s).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "unknown suite {s:?}, expected one of {}",
                Self::NAMES.join(", ")
            ))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VerifyReport {
    pub reports: Vec<TestReport>,
}

impl VerifyReport {
    /// True when every blocking report passed.
    pub fn pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass || !r.blocking)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TestReport> {
        self.reports.iter().filter(|r| !r.pass && r.blocking)
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> VerifyReport {
    let mut reports: Vec<TestReport> = suite
        .checks()
        .into_iter()
        .flat_map(|check| check(cfg))
        .collect();
    if let Some(filter) = &cfg.filter {
        reports.retain(|r| r.name.contains(filter.as_str()));
    }
    VerifyReport { reports }
}
