//! Noisy readings: data operators and likelihood effects.

use qvars::born::{data_expectation, data_operator, likelihood_effect, LikelihoodModel};
use qvars::hilbert::{sigma_z, spectral_decompose, DensityOperator, StateVector};

fn main() -> qvars::Result<()> {
    let noise = LikelihoodModel::bit_flip(0.1)?;
    let z = spectral_decompose(&sigma_z())?;
    let a = data_operator(&noise, &z)?;
    println!("data operator for a 10% bit flip on sigma_z:");
    for r in 0..2 {
        println!(
            "  [{:+.3} {:+.3}]",
            a.matrix().get(r, 0).re,
            a.matrix().get(r, 1).re
        );
    }

    let rho = DensityOperator::pure(&StateVector::from_real(&[1.0, 0.0])?);
    println!("E(z | up) = {}", data_expectation(&rho, &noise, &z)?);

    let basis = [StateVector::basis(2, 1), StateVector::basis(2, 0)];
    for reading in [-1.0, 1.0] {
        let f = likelihood_effect(&noise, reading, &basis)?;
        println!(
            "effect for z = {reading:+}: diag({:.2}, {:.2}); separates values: {}",
            f.matrix().get(0, 0).re,
            f.matrix().get(1, 1).re,
            noise.distinguishes_values(reading)?,
        );
    }
    Ok(())
}
