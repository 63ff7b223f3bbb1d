//! Set partitions of `0..n` in restricted-growth form.
//!
//! A partition is stored as one block index per element, with blocks numbered
//! in order of first appearance (`[0, 0, 1, 0, 2]`). Two labelings induce the
//! same partition iff their canonical forms are equal.

use std::collections::HashMap;
use std::hash::Hash;

/// Canonical restricted-growth string of a labeling.
pub fn canonical<T: Eq + Hash>(labels: &[T]) -> Vec<usize> {
    let mut seen: HashMap<&T, usize> = HashMap::with_capacity(labels.len());
    labels
        .iter()
        .map(|l| {
            let next = seen.len();
            *seen.entry(l).or_insert(next)
        })
        .collect()
}

pub fn block_count(rgs: &[usize]) -> usize {
    rgs.iter().max().map_or(0, |m| m + 1)
}

/// Block sizes sorted in descending order.
pub fn block_profile(rgs: &[usize]) -> Vec<usize> {
    let mut sizes = vec![0usize; block_count(rgs)];
    for &b in rgs {
        sizes[b] += 1;
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// True iff `fine` refines `coarse`: equal blocks in `fine` imply equal blocks
/// in `coarse`.
pub fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    debug_assert_eq!(fine.len(), coarse.len());
    let mut image: Vec<Option<usize>> = vec![None; block_count(fine)];
    for (&f, &c) in fine.iter().zip(coarse) {
        match image[f] {
            None => image[f] = Some(c),
            Some(prev) if prev != c => return false,
            Some(_) => {}
        }
    }
    true
}

/// Iterator over every set partition of `0..n`, in lexicographic RGS order.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    current: Vec<usize>,
    // running maximum of current[..i]
    max_prefix: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        Self {
            current: vec![0; n],
            max_prefix: vec![0; n],
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.current.len();
        if n <= 1 {
            return false;
        }
        for i in (1..n).rev() {
            let bound = self.max_prefix[i] + 1;
            if self.current[i] < bound {
                self.current[i] += 1;
                let m = self.max_prefix[i].max(self.current[i]);
                for j in i + 1..n {
                    self.current[j] = 0;
                    self.max_prefix[j] = m;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        if !self.advance() {
            self.done = true;
        }
        Some(out)
    }
}

/// All partitions that `rgs` refines (its coarsenings), in canonical form.
pub fn coarsenings(rgs: &[usize]) -> Vec<Vec<usize>> {
    SetPartitions::new(block_count(rgs))
        .map(|merge| canonical(&rgs.iter().map(|&b| merge[b]).collect::<Vec<_>>()))
        .collect()
}

/// Bell numbers B(0)..B(n).
pub fn bell_numbers(n: usize) -> Vec<u128> {
    let mut row = vec![1u128];
    let mut bells = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
        bells.push(row[0]);
    }
    bells
}
