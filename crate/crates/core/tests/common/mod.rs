#![allow(dead_code)]

use std::sync::Arc;

use qvars::hilbert::{gram_schmidt, CMatrix, DensityOperator, HermitianOperator, StateVector, C64};
use qvars::partition::canonical;
use qvars::varlattice::{PhiSpace, Variable};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn complex(rng: &mut StdRng) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_vector(rng: &mut StdRng, n: usize) -> Vec<C64> {
    (0..n).map(|_| complex(rng)).collect()
}

pub fn random_state(rng: &mut StdRng, n: usize) -> StateVector {
    loop {
        if let Ok(s) = StateVector::normalized(random_vector(rng, n)) {
            return s;
        }
    }
}

fn random_matrix(rng: &mut StdRng, n: usize) -> CMatrix {
    let entries = random_vector(rng, n * n);
    CMatrix::from_fn(n, |r, c| entries[r * n + c])
}

pub fn random_hermitian(rng: &mut StdRng, n: usize) -> HermitianOperator {
    let m = random_matrix(rng, n);
    HermitianOperator::new((&m + &m.adjoint()).scale_re(0.5)).unwrap()
}

/// Unitary whose columns are Gram-Schmidt orthonormalized random vectors.
pub fn random_unitary(rng: &mut StdRng, n: usize) -> CMatrix {
    loop {
        let cols: Vec<Vec<C64>> = (0..n).map(|_| random_vector(rng, n)).collect();
        if let Ok(basis) = gram_schmidt(&cols) {
            if basis.len() == n {
                return CMatrix::from_fn(n, |r, c| basis[c].amplitudes()[r]);
            }
        }
    }
}

/// `U · diag(values) · U†` for a random unitary `U`.
pub fn hermitian_with_spectrum(rng: &mut StdRng, values: &[f64]) -> HermitianOperator {
    let u = random_unitary(rng, values.len());
    let m = &(&u * &CMatrix::diag(values)) * &u.adjoint();
    HermitianOperator::new((&m + &m.adjoint()).scale_re(0.5)).unwrap()
}

/// Random integer spectrum with repeats allowed, so degenerate eigenspaces occur.
pub fn degenerate_spectrum(rng: &mut StdRng, n: usize) -> Vec<f64> {
    let distinct = rng.random_range(1..=n);
    (0..n)
        .map(|_| rng.random_range(0..distinct) as f64 - 1.5)
        .collect()
}

pub fn random_density(rng: &mut StdRng, n: usize) -> DensityOperator {
    let m = random_matrix(rng, n);
    let p = &m * &m.adjoint();
    let t = p.trace().re;
    DensityOperator::new(p.scale_re(1.0 / t)).unwrap()
}

pub fn phi(n: usize) -> Arc<PhiSpace> {
    Arc::new(PhiSpace::new((0..n).map(|i| format!("p{i}"))).unwrap())
}

pub fn variable(name: &str, phi: &Arc<PhiSpace>, blocks: &[usize]) -> Variable {
    Variable::new(name, phi, blocks.iter().map(|b| format!("v{b}"))).unwrap()
}

pub fn random_partition(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let k = rng.random_range(1..=n.max(1));
    let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    canonical(&labels)
}

/// Maximum deviation between two sorted spectra.
pub fn spectrum_gap(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
