mod common;

use proptest::prelude::*;
use qvars::born::{
    born_simple, born_trace, clamp_probability, data_expectation, expectation, likelihood_effect,
    mixed_state, prob_event, DiscreteDistribution, LikelihoodModel,
};
use qvars::hilbert::{spectral_decompose, DensityOperator, HermitianOperator};
use rand::Rng;

use common::{random_density, random_hermitian, random_state, rng};

fn random_model(
    r: &mut rand::rngs::StdRng,
    theta_values: Vec<f64>,
    data: usize,
) -> LikelihoodModel {
    let data_values: Vec<f64> = (0..data).map(|i| i as f64 * 0.5 - 1.0).collect();
    let mut table = vec![vec![0.0; theta_values.len()]; data];
    for col in 0..theta_values.len() {
        let w: Vec<f64> = (0..data).map(|_| r.random_range(0.01..1.0)).collect();
        let total: f64 = w.iter().sum();
        let mut used = 0.0;
        for (i, row) in table.iter_mut().enumerate() {
            // the last row takes the remainder so the column sums to 1
            row[col] = if i + 1 == data {
                1.0 - used
            } else {
                w[i] / total
            };
            used += row[col];
        }
    }
    LikelihoodModel::new(data_values, theta_values, table).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_form_matches_overlap(seed in any::<u64>(), n in 1usize..=8) {
        let mut r = rng(seed);
        let a = random_state(&mut r, n);
        let b = random_state(&mut r, n);
        let p = born_simple(&a, &b).unwrap();
        let t = born_trace(&DensityOperator::pure(&a), &b.projector()).unwrap();
        prop_assert!((p - t).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert!((p - born_simple(&b, &a).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn expectation_is_spectral_sum(seed in any::<u64>(), n in 1usize..=8) {
        let mut r = rng(seed);
        let rho = random_density(&mut r, n);
        let h = random_hermitian(&mut r, n);
        let d = spectral_decompose(&h).unwrap();
        let sum: f64 = d
            .eigenvalues()
            .iter()
            .zip(d.projections())
            .map(|(u, p)| u * born_trace(&rho, p).unwrap())
            .sum();
        prop_assert!((expectation(&rho, &h).unwrap() - sum).abs() < 1e-10);
        let all = prob_event(&rho, &d, d.eigenvalues()).unwrap();
        prop_assert!((all - 1.0).abs() < 1e-10);
    }

    #[test]
    fn outcome_probabilities_sum_to_one(seed in any::<u64>(), n in 1usize..=8) {
        let mut r = rng(seed);
        let psi = random_state(&mut r, n);
        let d = spectral_decompose(&random_hermitian(&mut r, n)).unwrap();
        let total: f64 = d
            .eigenvectors()
            .iter()
            .flatten()
            .map(|e| born_simple(&psi, e).unwrap())
            .sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn mixed_state_reproduces_distribution(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(seed);
        let d = spectral_decompose(&random_hermitian(&mut r, n)).unwrap();
        let w: Vec<f64> = (0..d.len()).map(|_| r.random_range(0.0..1.0)).collect();
        let total: f64 = w.iter().sum();
        let probs: Vec<f64> = w.iter().map(|x| x / total).collect();
        let dist = DiscreteDistribution::new(d.eigenvalues().to_vec(), probs.clone()).unwrap();
        let rho = mixed_state(&dist, &d).unwrap();
        prop_assert!((rho.trace() - 1.0).abs() < 1e-10);
        for (u, p) in d.eigenvalues().iter().zip(&probs) {
            prop_assert!((prob_event(&rho, &d, &[*u]).unwrap() - p).abs() < 1e-10);
        }
    }

    #[test]
    fn data_expectation_matches_double_sum(seed in any::<u64>(), n in 1usize..=8, data in 2usize..=4) {
        let mut r = rng(seed);
        let rho = random_density(&mut r, n);
        let d = spectral_decompose(&random_hermitian(&mut r, n)).unwrap();
        let model = random_model(&mut r, d.eigenvalues().to_vec(), data);
        let mut oracle = 0.0;
        for (j, p) in d.projections().iter().enumerate() {
            let pj = born_trace(&rho, p).unwrap();
            for (i, z) in model.data_values().iter().enumerate() {
                oracle += z * model.probability(i, j) * pj;
            }
        }
        prop_assert!((data_expectation(&rho, &model, &d).unwrap() - oracle).abs() < 1e-10);
    }

    #[test]
    fn likelihood_effects_sum_to_identity(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(seed);
        let d = spectral_decompose(&random_hermitian(&mut r, n)).unwrap();
        let basis: Vec<_> = d.eigenvectors().iter().flatten().cloned().collect();
        let model = random_model(&mut r, d.eigenvalues().to_vec(), 3);
        let mut total = HermitianOperator::diag(&vec![0.0; n]);
        for &z in model.data_values() {
            let f = likelihood_effect(&model, z, &basis).unwrap();
            total = total.plus(&f);
        }
        prop_assert!(total.matrix().max_abs_diff(HermitianOperator::identity(n).matrix()) < 1e-10);
    }

    #[test]
    fn clamping_policy(x in -1.0f64..2.0) {
        let out = clamp_probability(x);
        if (0.0..=1.0).contains(&x) {
            prop_assert_eq!(out.unwrap(), x);
        } else if x > -1e-10 && x < 1.0 + 1e-10 {
            prop_assert!((0.0..=1.0).contains(&out.unwrap()));
        } else {
            prop_assert!(out.is_err());
        }
    }
}
