//! Cyclic random motions at finite velocity with orthogonal directions.
//!
//! A particle in `R^d` moves at speed `c` along one of the `2d` signed axis
//! directions `+e_1, ..., +e_d, -e_1, ..., -e_d` and, at the epochs of a
//! homogeneous Poisson process of rate `lambda`, steps to the next direction
//! of that cycle. The crate provides
//!
//! - [`special`]: modified Bessel functions and the kernel
//!   `g(u,t) = I_0((lambda/c) sqrt(c^2 t^2 - u^2))` with its derivatives and integrals,
//! - [`sim`]: exact path simulation and reproducible parallel ensembles,
//! - [`analytic`]: closed-form densities, conditional laws, masses and moments
//!   of the L1 radius `U(t) = sum |X_i(t)|`,
//! - [`stats`]: Kolmogorov-Smirnov, chi-square and moment comparisons,
//! - [`pde`]: finite-difference residuals of the governing equations,
//!   characteristic-function recursions and the diffusive limit,
//! - [`verify`]: the grouped verification suites driven by the CLI.

pub mod analytic;
pub mod error;
pub mod params;
pub mod pde;
pub mod quadrature;
pub mod sim;
pub mod special;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
pub use params::ModelParams;
