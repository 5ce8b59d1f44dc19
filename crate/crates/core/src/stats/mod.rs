//! Goodness-of-fit and moment comparisons between samples and laws.

pub mod compare;
pub mod ks;
pub mod law;
pub mod report;

pub use compare::{chi_square_masses, chi_square_survival, moment_compare, proportion_compare};
pub use ks::{kolmogorov_survival, ks_one_sample, ks_p_value, ks_two_sample, Cdf};
pub use law::LawCdf;
pub use report::{TestReport, LEVEL};
