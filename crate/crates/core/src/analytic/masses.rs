use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma_lr;

use crate::analytic::density::{check_time, unsupported_dim};
use crate::error::Result;
use crate::params::ModelParams;
use crate::sim::path::Stratum;

/// Probability carried by one boundary stratum.
///
/// After `k < d` switches the particle sits on the `k`-face spanned by `k + 1`
/// consecutive cycle directions. Each of the `2d` starting directions gives
/// a different face, so `cells = 2d` faces share `mass` equally; for `d = 3`
/// that is 6 of the 12 edges and 6 of the 8 triangles of the octahedron.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StratumMass {
    pub stratum: Stratum,
    pub cells: usize,
    pub mass: f64,
}

impl StratumMass {
    pub fn per_cell(&self) -> f64 {
        self.mass / self.cells as f64
    }
}

/// Masses of the vertex and face strata, `P(N(t) = k)` for `k < d`.
pub fn singular_masses(params: &ModelParams, t: f64) -> Result<Vec<StratumMass>> {
    check_time(t)?;
    let dim = params.dim();
    Ok((0..dim)
        .map(|k| StratumMass {
            stratum: if k == 0 {
                Stratum::Vertex
            } else {
                Stratum::BoundaryFace(k)
            },
            cells: 2 * dim,
            mass: params.poisson_mass(t, k),
        })
        .collect())
}

/// Total mass of the interior, `P(N(t) >= d)`.
pub fn ac_mass(params: &ModelParams, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(gamma_lr(params.dim() as f64, params.lambda() * t))
}

/// Singular masses for the dimensions with closed-form laws.
pub fn analytic_singular_masses(params: &ModelParams, t: f64) -> Result<Vec<StratumMass>> {
    if !(1..=3).contains(&params.dim()) {
        return Err(unsupported_dim(params.dim()));
    }
    singular_masses(params, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_and_spatial_masses() {
        let e = (-1.0f64).exp();
        let p2 = ModelParams::new(1.0, 1.0, 2).unwrap();
        let m = singular_masses(&p2, 1.0).unwrap();
        assert_eq!(m.len(), 2);
        assert!((m[0].mass - e).abs() < 1e-15 && (m[1].mass - e).abs() < 1e-15);
        assert!((m[0].per_cell() - e / 4.0).abs() < 1e-15);
        assert!((ac_mass(&p2, 1.0).unwrap() - (1.0 - 2.0 * e)).abs() < 1e-14);

        let p3 = ModelParams::new(1.0, 1.0, 3).unwrap();
        let m = singular_masses(&p3, 1.0).unwrap();
        assert!((m[0].per_cell() - e / 6.0).abs() < 1e-15);
        assert!((m[2].mass - e / 2.0).abs() < 1e-15);
        assert_eq!(m[2].stratum, Stratum::BoundaryFace(2));
        assert!((ac_mass(&p3, 1.0).unwrap() - (1.0 - 2.5 * e)).abs() < 1e-14);

        let p1 = ModelParams::new(1.0, 1.0, 1).unwrap();
        assert!((singular_masses(&p1, 1.0).unwrap()[0].per_cell() - e / 2.0).abs() < 1e-15);
    }

    #[test]
    fn short_times_stay_on_vertices() {
        let p = ModelParams::new(1.0, 1.0, 3).unwrap();
        let m = singular_masses(&p, 1e-9).unwrap();
        assert!((m[0].mass - 1.0).abs() < 1e-8);
        assert!(ac_mass(&p, 1e-9).unwrap() < 1e-25);
        assert!(singular_masses(&p, 0.0).is_err());
    }

    #[test]
    fn masses_sum_to_one() {
        for dim in 1..=8 {
            let p = ModelParams::new(1.3, 0.7, dim).unwrap();
            let total: f64 = singular_masses(&p, 2.0)
                .unwrap()
                .iter()
                .map(|m| m.mass)
                .sum::<f64>()
                + ac_mass(&p, 2.0).unwrap();
            assert!((total - 1.0).abs() < 1e-14);
        }
    }
}
