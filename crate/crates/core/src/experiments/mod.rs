//! Runnable experiments over the variable and Hilbert-space layers.
//!
//! Monte Carlo loops split their trials into fixed blocks of
//! [`BLOCK_TRIALS`] counters. Blocks are evaluated on any number of workers
//! and combined in block order, so aggregate statistics depend only on
//! `(seed, n)`.

mod bell;
mod chsh;
mod epr;
mod spin;
mod tables;

pub use bell::{theorem3_demo, BellVariables};
pub use chsh::{
    chsh_combination, chsh_lhv, chsh_lhv_exact, chsh_quantum, singlet_correlation, ChshEstimate,
    ChshQuantum, ChshSetting, TermEstimate, CHSH_TERMS, MIN_LHV_SAMPLES,
};
pub use epr::{epr_bohm_report, same_direction_probabilities, EPR_DIRECTIONS};
pub use spin::{
    angle_between, lhv_correlation, sample_phi, sign_of_projection, spin_monte_carlo, spin_sample,
    SpinModel, SpinStatistics, WORDS_PER_TRIAL,
};
pub use tables::{born_table, variable_system_check, TheoremTriple};

use rayon::prelude::*;

/// Trials per Monte Carlo block.
pub const BLOCK_TRIALS: u64 = 1 << 14;

/// Evaluates `block(start, end)` over consecutive trial ranges covering
/// `0..n` and returns the results in block order. `workers == 0` uses the
/// global rayon pool.
pub(crate) fn run_blocks<T, F>(n: u64, workers: usize, block: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    let ranges: Vec<(u64, u64)> = (0..n.div_ceil(BLOCK_TRIALS))
        .map(|b| (b * BLOCK_TRIALS, ((b + 1) * BLOCK_TRIALS).min(n)))
        .collect();
    let eval = || {
        ranges
            .par_iter()
            .map(|&(s, e)| block(s, e))
            .collect::<Vec<T>>()
    };
    if workers == 0 {
        eval()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool")
            .install(eval)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_cover_range_in_order() {
        let n = 3 * BLOCK_TRIALS + 5;
        for workers in [0, 1, 3] {
            let got = run_blocks(n, workers, |s, e| (s, e));
            assert_eq!(got.len(), 4);
            assert_eq!(got[0], (0, BLOCK_TRIALS));
            assert_eq!(got[3], (3 * BLOCK_TRIALS, n));
        }
        assert!(run_blocks(0, 2, |s, e| (s, e)).is_empty());
    }
}
