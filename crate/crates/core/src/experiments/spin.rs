//! The spin sign model: `θ^a = sign(cos(a, φ))` with φ uniform on the circle
//! or sphere.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::{Cursor, RngStream};

use super::run_blocks;

/// Random words consumed per trial, whatever the dimension.
pub const WORDS_PER_TRIAL: u64 = 2;

const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpinModel {
    dimension: usize,
    directions: Vec<[f64; 3]>,
}

impl SpinModel {
    /// Directions in the plane, given as angles in degrees.
    pub fn planar(angles_deg: &[f64]) -> Self {
        let directions = angles_deg
            .iter()
            .map(|a| {
                let r = a.to_radians();
                [r.cos(), r.sin(), 0.0]
            })
            .collect();
        Self {
            dimension: 2,
            directions,
        }
    }

    /// Directions on the sphere; each must be a unit vector.
    pub fn spatial(directions: Vec<[f64; 3]>) -> Result<Self> {
        for d in &directions {
            let n = d.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (n - 1.0).abs() > UNIT_TOL {
                return Err(Error::InvalidSetting(format!(
                    "direction {d:?} has norm {n}"
                )));
            }
        }
        Ok(Self {
            dimension: 3,
            directions,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn directions(&self) -> &[[f64; 3]] {
        &self.directions
    }
}

/// `+1` if `direction · phi >= 0`, else `-1`. Exact zeros count as `+1`.
pub fn sign_of_projection(direction: &[f64; 3], phi: &[f64; 3]) -> i8 {
    let d: f64 = direction.iter().zip(phi).map(|(a, b)| a * b).sum();
    if d >= 0.0 {
        1
    } else {
        -1
    }
}

/// Uniform point on the circle (`dimension == 2`) or the sphere, drawn from
/// the next [`WORDS_PER_TRIAL`] words of `cursor`.
pub fn sample_phi(dimension: usize, cursor: &mut Cursor) -> [f64; 3] {
    let u = cursor.next_f64();
    let v = cursor.next_f64();
    if dimension == 2 {
        let t = TAU * u;
        [t.cos(), t.sin(), 0.0]
    } else {
        // Archimedes: z uniform on [-1, 1]
        let z = 2.0 * u - 1.0;
        let r = (1.0 - z * z).max(0.0).sqrt();
        let t = TAU * v;
        [r * t.cos(), r * t.sin(), z]
    }
}

/// One draw of `θ^a` for trial `trial` of stream `rng`.
pub fn spin_sample(model: &SpinModel, direction_index: usize, rng: &RngStream, trial: u64) -> i8 {
    let mut cursor = rng.cursor(trial * WORDS_PER_TRIAL);
    let phi = sample_phi(model.dimension, &mut cursor);
    sign_of_projection(&model.directions[direction_index], &phi)
}

/// Angle between two directions, in `[0, π]`.
pub fn angle_between(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    (dot / (na * nb)).clamp(-1.0, 1.0).acos()
}

/// `E(θ^a θ^b) = 1 − 2γ/π` for the shared-φ sign model, `γ` the angle between
/// the two directions.
pub fn lhv_correlation(gamma: f64) -> f64 {
    1.0 - 2.0 * gamma / PI
}

/// Aggregated sign-model statistics; every direction is evaluated on the same
/// φ in each trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpinStatistics {
    pub n: u64,
    pub plus_counts: Vec<u64>,
    /// `pair_sums[i][j] = Σ θ_i θ_j` over trials.
    pub pair_sums: Vec<Vec<i64>>,
}

impl SpinStatistics {
    pub fn marginal(&self, i: usize) -> f64 {
        self.plus_counts[i] as f64 / self.n as f64
    }

    /// `0.5 / √n`, the binomial standard error at `p = 1/2`.
    pub fn marginal_stderr(&self) -> f64 {
        0.5 / (self.n as f64).sqrt()
    }

    pub fn correlation(&self, i: usize, j: usize) -> f64 {
        self.pair_sums[i][j] as f64 / self.n as f64
    }

    /// Standard error of a ±1 product mean with true correlation `e`.
    pub fn correlation_stderr(&self, e: f64) -> f64 {
        ((1.0 - e * e).max(0.0) / self.n as f64).sqrt()
    }
}

pub fn spin_monte_carlo(
    model: &SpinModel,
    n: u64,
    rng: &RngStream,
    workers: usize,
) -> SpinStatistics {
    let m = model.directions.len();
    let blocks = run_blocks(n, workers, |start, end| {
        let mut plus = vec![0u64; m];
        let mut pairs = vec![vec![0i64; m]; m];
        let mut cursor = rng.cursor(start * WORDS_PER_TRIAL);
        let mut signs = vec![0i8; m];
        for _ in start..end {
            let phi = sample_phi(model.dimension, &mut cursor);
            for (s, d) in signs.iter_mut().zip(&model.directions) {
                *s = sign_of_projection(d, &phi);
            }
            for i in 0..m {
                if signs[i] > 0 {
                    plus[i] += 1;
                }
                for j in 0..m {
                    pairs[i][j] += i64::from(signs[i] * signs[j]);
                }
            }
        }
        (plus, pairs)
    });
    let mut plus_counts = vec![0u64; m];
    let mut pair_sums = vec![vec![0i64; m]; m];
    for (plus, pairs) in blocks {
        for i in 0..m {
            plus_counts[i] += plus[i];
            for j in 0..m {
                pair_sums[i][j] += pairs[i][j];
            }
        }
    }
    SpinStatistics {
        n,
        plus_counts,
        pair_sums,
    }
}
