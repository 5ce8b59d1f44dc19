//! Finite-difference checks of the governing equations, the characteristic
//! function recursions and the diffusive limit.

pub mod cf;
pub mod grid;
pub mod klein_gordon;
pub mod limits;
pub mod planar;

pub use cf::{
    averaged_cf_quadrature, cf_integral, cf_recursion_check, conditional_cf_quadrature, Frequency,
};
pub use grid::{GridSpec, LevelResidual, ResidualReport, EXACT_FLOOR};
pub use klein_gordon::{kernel_identity_check, klein_gordon_residual, klein_gordon_residual_of};
pub use limits::{
    coordinate_variance, density_mass, heat_limit_check, normalization_check, HeatLevel,
    HeatLimitResult,
};
pub use planar::{
    planar_fourth_order_residual, planar_points, planar_residual_at, planar_w_form_residual,
    PlanarField,
};
