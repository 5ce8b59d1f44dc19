use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::sim::direction::Direction;

/// Relative tolerance of the `u = ct` shell test.
pub const SHELL_TOLERANCE: f64 = 1e-9;

/// Where a final position sits in the support cross-polytope.
///
/// `BoundaryFace(k)` is the relative interior of a `k`-dimensional face of
/// the boundary (edges for `k = 1`, triangles of the octahedron for `k = 2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Stratum {
    Vertex,
    BoundaryFace(usize),
    Interior,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stratum::Vertex => write!(f, "vertex"),
            Stratum::BoundaryFace(k) => write!(f, "face{k}"),
            Stratum::Interior => write!(f, "interior"),
        }
    }
}

impl FromStr for Stratum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertex" => Ok(Stratum::Vertex),
            "interior" => Ok(Stratum::Interior),
            _ => s
                .strip_prefix("face")
                .and_then(|k| k.parse().ok())
                .filter(|&k: &usize| k >= 1)
                .map(Stratum::BoundaryFace)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown stratum {s:?}"))),
        }
    }
}

/// One realisation of the switching epochs on `(0, horizon)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotionPath {
    pub params: ModelParams,
    pub horizon: f64,
    pub initial_direction: Direction,
    pub switch_times: Vec<f64>,
}

impl MotionPath {
    pub fn new(
        params: ModelParams,
        horizon: f64,
        initial_direction: Direction,
        switch_times: Vec<f64>,
    ) -> Result<Self> {
        check_horizon(horizon)?;
        Direction::new(initial_direction.index(), params.dim())?;
        let mut previous = 0.0;
        for &s in &switch_times {
            if !(s > previous && s < horizon) {
                return Err(Error::InvalidParameter(format!(
                    "switch times must increase strictly inside (0, {horizon})"
                )));
            }
            previous = s;
        }
        Ok(Self {
            params,
            horizon,
            initial_direction,
            switch_times,
        })
    }

    pub fn n_events(&self) -> usize {
        self.switch_times.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotionOutcome {
    pub position: Vec<f64>,
    pub u: f64,
    pub n_events: usize,
    pub final_direction: Direction,
    pub stratum: Stratum,
}

fn check_horizon(horizon: f64) -> Result<()> {
    if horizon.is_finite() && horizon > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "horizon must be finite and > 0, got {horizon}"
        )))
    }
}

fn uniform_direction<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Direction {
    Direction::new(rng.random_range(1..=2 * dim), dim).expect("index drawn in range")
}

/// Uniform initial direction and Poisson switching epochs (exponential gaps).
pub fn sample_path<R: Rng + ?Sized>(
    params: &ModelParams,
    horizon: f64,
    rng: &mut R,
) -> Result<MotionPath> {
    check_horizon(horizon)?;
    let initial_direction = uniform_direction(params.dim(), rng);
    let gaps = Exp::new(params.lambda()).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut switch_times = Vec::new();
    let mut s = 0.0;
    loop {
        s += gaps.sample(rng);
        if s >= horizon {
            break;
        }
        switch_times.push(s);
    }
    Ok(MotionPath {
        params: *params,
        horizon,
        initial_direction,
        switch_times,
    })
}

/// Path conditioned on exactly `n` switches: the epochs are `n` sorted uniforms.
pub fn sample_path_conditional<R: Rng + ?Sized>(
    params: &ModelParams,
    horizon: f64,
    n: usize,
    rng: &mut R,
) -> Result<MotionPath> {
    check_horizon(horizon)?;
    let initial_direction = uniform_direction(params.dim(), rng);
    let mut switch_times: Vec<f64> = (0..n).map(|_| horizon * rng.random::<f64>()).collect();
    switch_times.sort_unstable_by(f64::total_cmp);
    Ok(MotionPath {
        params: *params,
        horizon,
        initial_direction,
        switch_times,
    })
}

/// Integrates the piecewise-linear trajectory up to the horizon.
pub fn evolve(path: &MotionPath) -> MotionOutcome {
    let dim = path.params.dim();
    let c = path.params.c();
    let mut position = vec![0.0; dim];
    let mut direction = path.initial_direction;
    let mut last = 0.0;
    for &s in path
        .switch_times
        .iter()
        .chain(std::iter::once(&path.horizon))
    {
        position[direction.axis(dim)] += direction.sign(dim) * c * (s - last);
        last = s;
        if s < path.horizon {
            direction = direction.advance(1, dim);
        }
    }
    let u: f64 = position.iter().map(|x| x.abs()).sum();
    let stratum = classify(&position, u, path.params.reach(path.horizon));
    MotionOutcome {
        position,
        u,
        n_events: path.n_events(),
        final_direction: direction,
        stratum,
    }
}

/// Shell test `u >= ct (1 - tol)`; on the shell the face dimension is the
/// number of nonzero coordinates minus one.
pub fn classify(position: &[f64], u: f64, reach: f64) -> Stratum {
    let tol = SHELL_TOLERANCE * reach;
    if u < reach - tol {
        return Stratum::Interior;
    }
    let nonzero = position.iter().filter(|x| x.abs() > tol).count();
    match nonzero {
        0 | 1 => Stratum::Vertex,
        k => Stratum::BoundaryFace(k - 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::rng::substream;

    fn planar() -> ModelParams {
        ModelParams::new(1.0, 1.0, 2).unwrap()
    }

    #[test]
    fn hand_integrated_planar_path() {
        let d1 = Direction::new(1, 2).unwrap();
        let path = MotionPath::new(planar(), 1.0, d1, vec![0.3, 0.7]).unwrap();
        let out = evolve(&path);
        assert!(out.position[0].abs() < 1e-15);
        assert!((out.position[1] - 0.4).abs() < 1e-15);
        assert!((out.u - 0.4).abs() < 1e-15);
        assert_eq!(out.stratum, Stratum::Interior);
        assert_eq!(out.final_direction.index(), 3);
        assert_eq!(out.n_events, 2);
    }

    #[test]
    fn straight_run_ends_on_a_vertex() {
        let params = ModelParams::new(2.0, 1.0, 2).unwrap();
        let path = MotionPath::new(params, 1.0, Direction::new(1, 2).unwrap(), vec![]).unwrap();
        let out = evolve(&path);
        assert_eq!(out.position, vec![2.0, 0.0]);
        assert_eq!(out.u, 2.0);
        assert_eq!(out.stratum, Stratum::Vertex);
    }

    #[test]
    fn two_switches_in_space_stay_on_a_face() {
        let params = ModelParams::new(1.0, 1.0, 3).unwrap();
        let path =
            MotionPath::new(params, 1.0, Direction::new(1, 3).unwrap(), vec![0.25, 0.6]).unwrap();
        let out = evolve(&path);
        assert!((out.u - 1.0).abs() < 1e-15);
        assert_eq!(out.stratum, Stratum::BoundaryFace(2));
    }

    #[test]
    fn rejects_bad_paths() {
        let d1 = Direction::new(1, 2).unwrap();
        assert!(MotionPath::new(planar(), 1.0, d1, vec![0.5, 0.4]).is_err());
        assert!(MotionPath::new(planar(), 1.0, d1, vec![1.0]).is_err());
        assert!(MotionPath::new(planar(), 0.0, d1, vec![]).is_err());
        assert!(sample_path(&planar(), -1.0, &mut substream(1, 0)).is_err());
    }

    #[test]
    fn conditional_paths_have_sorted_epochs() {
        let mut rng = substream(3, 0);
        for n in 0..6 {
            let path = sample_path_conditional(&planar(), 2.0, n, &mut rng).unwrap();
            assert_eq!(path.n_events(), n);
            assert!(path.switch_times.windows(2).all(|w| w[0] < w[1]));
            assert!(path.switch_times.iter().all(|&s| s > 0.0 && s < 2.0));
        }
    }

    #[test]
    fn same_stream_same_path() {
        let a = sample_path(&planar(), 3.0, &mut substream(11, 5)).unwrap();
        let b = sample_path(&planar(), 3.0, &mut substream(11, 5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn stratum_text_round_trip() {
        for s in [
            Stratum::Vertex,
            Stratum::BoundaryFace(1),
            Stratum::BoundaryFace(4),
            Stratum::Interior,
        ] {
            assert_eq!(s.to_string().parse::<Stratum>().unwrap(), s);
        }
        assert!("face0".parse::<Stratum>().is_err());
        assert!("edge".parse::<Stratum>().is_err());
    }
}
