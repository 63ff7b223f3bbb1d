mod common;

use nalgebra::DMatrix;
use proptest::prelude::*;
use qvars::hilbert::{
    conjugate, is_maximal_operator, jacobi_eigen, spectral_decompose, CMatrix, HermitianOperator,
    C64,
};

use common::{
    degenerate_spectrum, hermitian_with_spectrum, random_hermitian, random_unitary, rng,
    spectrum_gap,
};

fn nalgebra_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let n = m.dim();
    let a = DMatrix::<C64>::from_fn(n, n, |r, c| m.get(r, c));
    let mut v: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

fn expanded(op: &HermitianOperator) -> Vec<f64> {
    let d = spectral_decompose(op).unwrap();
    d.eigenvalues()
        .iter()
        .zip(d.multiplicities())
        .flat_map(|(&v, &m)| std::iter::repeat_n(v, m))
        .collect()
}

#[test]
fn jacobi_agrees_with_nalgebra() {
    let mut r = rng(17);
    for n in 1..=16 {
        for _ in 0..5 {
            let h = random_hermitian(&mut r, n);
            let mut ours = jacobi_eigen(h.matrix()).unwrap().values;
            ours.sort_by(f64::total_cmp);
            let theirs = nalgebra_eigenvalues(h.matrix());
            assert!(spectrum_gap(&ours, &theirs) < 1e-10, "n = {n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_invariants(seed in any::<u64>(), n in 1usize..=10, degenerate in any::<bool>()) {
        let mut r = rng(seed);
        let h = if degenerate {
            let values = degenerate_spectrum(&mut r, n);
            hermitian_with_spectrum(&mut r, &values)
        } else {
            random_hermitian(&mut r, n)
        };
        let d = spectral_decompose(&h).unwrap();
        prop_assert!(d.reconstruct().max_abs_diff(h.matrix()) < 1e-10);
        let mut total = CMatrix::zeros(n);
        for (i, p) in d.projections().iter().enumerate() {
            prop_assert!(p.idempotence_deviation() < 1e-10);
            prop_assert!((p.trace() - d.multiplicities()[i] as f64).abs() < 1e-10);
            for q in &d.projections()[i + 1..] {
                prop_assert!((p.matrix() * q.matrix()).max_abs() < 1e-10);
            }
            total = &total + p.matrix();
        }
        prop_assert!(total.max_abs_diff(&CMatrix::identity(n)) < 1e-10);
        prop_assert_eq!(d.multiplicities().iter().sum::<usize>(), n);
        prop_assert_eq!(
            is_maximal_operator(&h).unwrap(),
            d.multiplicities().iter().all(|&m| m == 1)
        );
    }

    #[test]
    fn conjugation_preserves_spectrum(seed in any::<u64>(), n in 1usize..=8) {
        let mut r = rng(seed);
        let h = random_hermitian(&mut r, n);
        let u = random_unitary(&mut r, n);
        let c = conjugate(&h, &u).unwrap();
        prop_assert!(spectrum_gap(&expanded(&h), &expanded(&c)) < 1e-10);
    }
}

#[test]
fn known_degeneracies_are_grouped() {
    let mut r = rng(5);
    let h = hermitian_with_spectrum(&mut r, &[2.0, -1.0, 2.0, 2.0, -1.0]);
    let d = spectral_decompose(&h).unwrap();
    assert_eq!(d.multiplicities(), &[2, 3]);
    assert!((d.eigenvalues()[0] + 1.0).abs() < 1e-12);
    assert!(!is_maximal_operator(&h).unwrap());
}

#[test]
fn non_unitary_conjugation_is_rejected() {
    let h = HermitianOperator::diag(&[1.0, 2.0]);
    let w = CMatrix::diag(&[1.0, 2.0]);
    assert!(conjugate(&h, &w).is_err());
}
