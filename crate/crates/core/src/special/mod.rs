//! Modified Bessel functions and the Klein-Gordon kernel built from `I_0`.

pub mod bessel;
pub mod kernel;

pub use bessel::{bessel_i, bessel_i_scaled, gamma_half_integer, BesselOrder};
pub use kernel::{
    kernel_derivative, kernel_derivative_scaled, kernel_integral, kernel_integral_scaled,
    shifted_series_scaled, KernelPoint,
};
