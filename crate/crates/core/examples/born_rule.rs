//! Born probabilities for spin states: pure, mixed, expectations, events.

use qvars::born::{
    born_simple, born_trace, expectation, mixed_state, prob_event, DiscreteDistribution,
};
use qvars::hilbert::{
    sigma_z, spectral_decompose, spin_in_plane, DensityOperator, HermitianOperator,
};

fn up_along(angle_deg: f64) -> qvars::Result<qvars::hilbert::StateVector> {
    let d = spectral_decompose(&spin_in_plane(angle_deg.to_radians()))?;
    Ok(d.eigenvectors()[1][0].clone())
}

fn main() -> qvars::Result<()> {
    let prepared = up_along(0.0)?;
    println!("prepared +1 along 0 deg; P(+1 along alpha) against cos^2(alpha/2):");
    for alpha in [0.0, 60.0, 90.0, 120.0, 180.0] {
        let p = born_simple(&prepared, &up_along(alpha)?)?;
        let law = (f64::to_radians(alpha) / 2.0).cos().powi(2);
        println!("  alpha = {alpha:>5}: {p:.12}  law {law:.12}");
    }

    let rho = DensityOperator::pure(&prepared);
    let z = spectral_decompose(&sigma_z())?;
    let p_up = born_trace(&rho, z.projection_for(1.0).unwrap())?;
    println!("\ntrace(rho P_up) = {p_up}");
    println!("<sigma_z> = {}", expectation(&rho, &sigma_z())?);

    let dist = DiscreteDistribution::new(vec![-1.0, 1.0], vec![0.25, 0.75])?;
    let mixed = mixed_state(&dist, &z)?;
    println!("\nmixed state from P(-1) = 0.25, P(+1) = 0.75:");
    println!("  <sigma_z> = {}", expectation(&mixed, &sigma_z())?);
    println!(
        "  P(sigma_z in {{-1, 1}}) = {}",
        prob_event(&mixed, &z, &[-1.0, 1.0])?
    );
    println!(
        "  <I> = {}",
        expectation(&mixed, &HermitianOperator::identity(2))?
    );
    Ok(())
}
