//! `S = E(AB) + E(A'B) + E(AB') − E(A'B')`, evaluated in the singlet state
//! and by a local hidden variable simulation.

use std::f64::consts::PI;

use serde::Serialize;

use crate::born::expectation;
use crate::error::{Error, Result};
use crate::hilbert::{singlet_state, spin_in_plane, DensityOperator, Tensor};
use crate::rng::RngStream;

use super::run_blocks;
use super::spin::{lhv_correlation, WORDS_PER_TRIAL};

pub const CHSH_TERMS: [&str; 4] = ["E(AB)", "E(A'B)", "E(AB')", "E(A'B')"];

pub const MIN_LHV_SAMPLES: u64 = 1000;

/// Measurement directions as angles in degrees within one plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshSetting {
    pub a: f64,
    pub a_prime: f64,
    pub b: f64,
    pub b_prime: f64,
}

impl ChshSetting {
    pub fn new(a: f64, a_prime: f64, b: f64, b_prime: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("a'", a_prime), ("b", b), ("b'", b_prime)] {
            if !(0.0..360.0).contains(&v) {
                return Err(Error::InvalidSetting(format!(
                    "angle {name} = {v} outside [0, 360)"
                )));
            }
        }
        Ok(Self {
            a,
            a_prime,
            b,
            b_prime,
        })
    }

    /// Reaches `S = 2√2` in the singlet state for this sign arrangement.
    pub fn optimal() -> Self {
        Self {
            a: 0.0,
            a_prime: 90.0,
            b: 225.0,
            b_prime: 135.0,
        }
    }

    /// `(alice, bob)` angle pairs in [`CHSH_TERMS`] order.
    pub fn pairs(&self) -> [(f64, f64); 4] {
        [
            (self.a, self.b),
            (self.a_prime, self.b),
            (self.a, self.b_prime),
            (self.a_prime, self.b_prime),
        ]
    }

    pub fn label(&self) -> String {
        format!(
            "a={} a'={} b={} b'={}",
            self.a, self.a_prime, self.b, self.b_prime
        )
    }
}

pub fn chsh_combination(terms: [f64; 4]) -> f64 {
    terms[0] + terms[1] + terms[2] - terms[3]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshQuantum {
    pub terms: [f64; 4],
    pub s: f64,
}

/// `trace(ρ_singlet · (σ·a)⊗(σ·b))` with both angles in degrees.
pub fn singlet_correlation(alice_deg: f64, bob_deg: f64) -> Result<f64> {
    let rho = DensityOperator::pure(&singlet_state());
    let op = spin_in_plane(alice_deg.to_radians()).tensor(&spin_in_plane(bob_deg.to_radians()));
    expectation(&rho, &op)
}

pub fn chsh_quantum(setting: &ChshSetting) -> Result<ChshQuantum> {
    let mut terms = [0.0; 4];
    for (t, (x, y)) in terms.iter_mut().zip(setting.pairs()) {
        *t = singlet_correlation(x, y)?;
    }
    Ok(ChshQuantum {
        terms,
        s: chsh_combination(terms),
    })
}

fn planar_gap(x_deg: f64, y_deg: f64) -> f64 {
    let d = (x_deg - y_deg).rem_euclid(360.0);
    d.min(360.0 - d).to_radians()
}

/// Exact shared-φ correlations `1 − 2γ/π` per term.
pub fn chsh_lhv_exact(setting: &ChshSetting) -> [f64; 4] {
    setting
        .pairs()
        .map(|(x, y)| lhv_correlation(planar_gap(x, y)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TermEstimate {
    pub value: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshEstimate {
    pub n: u64,
    pub s: f64,
    pub stderr: f64,
    pub terms: [TermEstimate; 4],
}

impl ChshEstimate {
    /// `|S| ≤ 2 + k·stderr`
    pub fn within_bound(&self, k: f64) -> bool {
        self.s.abs() <= 2.0 + k * self.stderr
    }
}

#[inline]
fn sign_cos(direction: f64, phi: f64) -> i64 {
    if (direction - phi).cos() >= 0.0 {
        1
    } else {
        -1
    }
}

/// Local hidden variable simulation: each trial draws one φ uniform on the
/// circle, and all four outcomes `sign(cos(direction − φ))` are read off that
/// same φ.
pub fn chsh_lhv(
    setting: &ChshSetting,
    n: u64,
    rng: &RngStream,
    workers: usize,
) -> Result<ChshEstimate> {
    if n < MIN_LHV_SAMPLES {
        return Err(Error::InvalidSetting(format!(
            "need at least {MIN_LHV_SAMPLES} samples, got {n}"
        )));
    }
    let dirs = [setting.a, setting.a_prime, setting.b, setting.b_prime].map(f64::to_radians);
    let blocks = run_blocks(n, workers, |start, end| {
        let mut sums = [0i64; 5];
        let mut cursor = rng.cursor(start * WORDS_PER_TRIAL);
        for _ in start..end {
            let phi = 2.0 * PI * cursor.next_f64();
            // second word is reserved so trials line up with the spin model
            cursor.next_u64();
            let [a, a2, b, b2] = dirs.map(|d| sign_cos(d, phi));
            let t = [a * b, a2 * b, a * b2, a2 * b2];
            for k in 0..4 {
                sums[k] += t[k];
            }
            sums[4] += t[0] + t[1] + t[2] - t[3];
        }
        sums
    });
    let mut sums = [0i64; 5];
    for b in blocks {
        for k in 0..5 {
            sums[k] += b[k];
        }
    }
    let nf = n as f64;
    let terms = [0, 1, 2, 3].map(|k| {
        let value = sums[k] as f64 / nf;
        TermEstimate {
            value,
            stderr: ((1.0 - value * value).max(0.0) / nf).sqrt(),
        }
    });
    let s = sums[4] as f64 / nf;
    // each trial contributes ±2, so S is a rescaled binomial proportion
    let stderr = ((4.0 - s * s).max(0.0) / nf).sqrt();
    Ok(ChshEstimate {
        n,
        s,
        stderr,
        terms,
    })
}
