use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the `2d` signed axis directions, numbered `1..=2d`.
///
/// Direction `j <= d` is `+e_j` and direction `j > d` is `-e_{j-d}`, so the
/// cycle runs `+e_1, ..., +e_d, -e_1, ..., -e_d` and any `d` consecutive
/// directions lie on distinct axes. In the plane this is the
/// counter-clockwise order `(1,0), (0,1), (-1,0), (0,-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Direction(usize);

impl Direction {
    pub fn new(index: usize, dim: usize) -> Result<Self> {
        if index == 0 || index > 2 * dim {
            return Err(Error::InvalidParameter(format!(
                "direction index {index} outside 1..={}",
                2 * dim
            )));
        }
        Ok(Self(index))
    }

    pub fn index(self) -> usize {
        self.0
    }

    /// Zero-based coordinate axis this direction moves along.
    pub fn axis(self, dim: usize) -> usize {
        (self.0 - 1) % dim
    }

    pub fn sign(self, dim: usize) -> f64 {
        if self.0 <= dim {
            1.0
        } else {
            -1.0
        }
    }

    pub fn unit_vector(self, dim: usize) -> Vec<f64> {
        let mut v = vec![0.0; dim];
        v[self.axis(dim)] = self.sign(dim);
        v
    }

    /// The direction `steps` places further along the cycle.
    pub fn advance(self, steps: usize, dim: usize) -> Self {
        Self((self.0 - 1 + steps) % (2 * dim) + 1)
    }
}

/// Next direction of the cycle, wrapping `2d -> 1`.
pub fn cycle_successor(direction: Direction, dim: usize) -> Direction {
    direction.advance(1, dim)
}
