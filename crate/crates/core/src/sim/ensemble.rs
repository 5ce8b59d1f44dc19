use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Gamma, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::params::ModelParams;
use crate::sim::direction::Direction;
use crate::sim::path::{evolve, sample_path, sample_path_conditional, MotionOutcome, Stratum};
use crate::sim::rng::substream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conditioning {
    Unconditional,
    /// Exactly this many switches on `(0, t)`.
    Events(usize),
}

impl fmt::Display for Conditioning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conditioning::Unconditional => write!(f, "none"),
            Conditioning::Events(n) => write!(f, "n={n}"),
        }
    }
}

impl FromStr for Conditioning {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "none" {
            return Ok(Conditioning::Unconditional);
        }
        s.strip_prefix("n=")
            .and_then(|n| n.parse().ok())
            .map(Conditioning::Events)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown conditioning {s:?}")))
    }
}

/// Seeded Monte Carlo draws together with everything needed to reproduce them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub params: ModelParams,
    pub horizon: f64,
    pub conditioning: Conditioning,
    pub seed: u64,
    pub outcomes: Vec<MotionOutcome>,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn u_values(&self) -> Vec<f64> {
        self.outcomes.iter().map(|o| o.u).collect()
    }

    pub fn sorted_u(&self) -> Vec<f64> {
        let mut u = self.u_values();
        u.sort_unstable_by(f64::total_cmp);
        u
    }

    /// `U / ct`, sorted.
    pub fn sorted_scaled_u(&self) -> Vec<f64> {
        let reach = self.params.reach(self.horizon);
        self.sorted_u().into_iter().map(|u| u / reach).collect()
    }

    pub fn coordinate(&self, axis: usize) -> Vec<f64> {
        self.outcomes.iter().map(|o| o.position[axis]).collect()
    }

    pub fn stratum_counts(&self) -> BTreeMap<Stratum, usize> {
        let mut counts = BTreeMap::new();
        for o in &self.outcomes {
            *counts.entry(o.stratum).or_insert(0) += 1;
        }
        counts
    }

    /// Counts of the vertex `±e_i` reached, keyed by the final direction.
    pub fn vertex_counts(&self) -> BTreeMap<Direction, usize> {
        let mut counts = BTreeMap::new();
        for o in self
            .outcomes
            .iter()
            .filter(|o| o.stratum == Stratum::Vertex)
        {
            *counts.entry(o.final_direction).or_insert(0) += 1;
        }
        counts
    }
}

/// Simulates `count` independent paths; replication `i` uses stream `(seed, i)`.
pub fn simulate_ensemble(
    params: &ModelParams,
    horizon: f64,
    count: usize,
    seed: u64,
    conditioning: Conditioning,
) -> Result<SampleSet> {
    if count == 0 {
        return Err(Error::InvalidParameter(
            "ensemble size must be at least 1".into(),
        ));
    }
    let outcomes = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i);
            let path = match conditioning {
                Conditioning::Unconditional => sample_path(params, horizon, &mut rng),
                Conditioning::Events(n) => sample_path_conditional(params, horizon, n, &mut rng),
            }?;
            Ok(evolve(&path))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleSet {
        params: *params,
        horizon,
        conditioning,
        seed,
        outcomes,
    })
}

/// Final position drawn without walking the path.
///
/// Given `N = n`, the `n + 1` segment durations are `t` times a flat
/// Dirichlet vector, so the time spent in each of the `2d` directions is a
/// normalised sum of independent `Gamma(m_r, 1)` variables, `m_r` being the
/// number of segments run in direction `r`. The cost is independent of `n`,
/// which matters when `lambda t` is in the thousands.
pub fn sample_position_aggregated<R: Rng + ?Sized>(
    params: &ModelParams,
    horizon: f64,
    conditioning: Conditioning,
    rng: &mut R,
) -> Result<(Vec<f64>, usize)> {
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "horizon must be finite and > 0, got {horizon}"
        )));
    }
    let dim = params.dim();
    let cycle = 2 * dim;
    let first = rng.random_range(0..cycle);
    let n = match conditioning {
        Conditioning::Events(n) => n,
        Conditioning::Unconditional => {
            let poisson = Poisson::new(params.lambda() * horizon)
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            poisson.sample(rng) as usize
        }
    };
    let segments = n + 1;
    let mut time = vec![0.0; cycle];
    let mut total = 0.0;
    for (r, slot) in time.iter_mut().enumerate() {
        let offset = (r + cycle - first) % cycle;
        if offset >= segments {
            continue;
        }
        let m = (segments - offset).div_ceil(cycle);
        let g = Gamma::new(m as f64, 1.0).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        *slot = g.sample(rng);
        total += *slot;
    }
    let scale = params.reach(horizon) / total;
    let mut position = vec![0.0; dim];
    for (r, &tau) in time.iter().enumerate() {
        let sign = if r < dim { 1.0 } else { -1.0 };
        position[r % dim] += sign * tau * scale;
    }
    Ok((position, n))
}

/// Final positions of `count` replications from [`sample_position_aggregated`],
/// flattened row-major (`count x dim`).
pub fn simulate_positions_aggregated(
    params: &ModelParams,
    horizon: f64,
    count: usize,
    seed: u64,
    conditioning: Conditioning,
) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::InvalidParameter(
            "ensemble size must be at least 1".into(),
        ));
    }
    let rows = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            sample_position_aggregated(params, horizon, conditioning, &mut substream(seed, i))
                .map(|p| p.0)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.concat())
}

/// Sample mean of `exp(i (alpha X + beta Y))` over a planar ensemble.
pub fn empirical_char_function(samples: &SampleSet, alpha: f64, beta: f64) -> Result<Complex64> {
    if samples.params.dim() != 2 {
        return Err(domain(format!(
            "characteristic function needs planar samples, got dim {}",
            samples.params.dim()
        )));
    }
    if samples.is_empty() {
        return Err(domain("empty sample"));
    }
    let sum: Complex64 = samples
        .outcomes
        .iter()
        .map(|o| Complex64::from_polar(1.0, alpha * o.position[0] + beta * o.position[1]))
        .sum();
    Ok(sum / samples.len() as f64)
}
