//! Closed-form laws of the L1 radius `U(t)`.

pub mod cdf;
pub mod conditional;
pub mod density;
pub mod masses;
pub mod moments;

pub use cdf::{cdf_u, cdf_u_sorted, law_density};
pub use conditional::{conditional_density_u, mixture_density, ConditionalLaw};
pub use density::{
    density_u, density_u_closed_form, density_u_coefficient_form, DensityCoefficients,
};
pub use masses::{ac_mass, analytic_singular_masses, singular_masses, StratumMass};
pub use moments::{
    catalan, conditional_mean_catalan, conditional_mean_ratio, conditional_mean_u, mean_u,
    moment_u, moment_u_quadrature,
};
