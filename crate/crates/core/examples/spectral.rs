//! Spectral decomposition of Hermitian operators and the simple-spectrum test.

use qvars::hilbert::{
    conjugate, dot_product_operator, is_maximal_operator, sigma_x, spectral_decompose, spin_along,
    CMatrix, HermitianOperator,
};

fn main() -> qvars::Result<()> {
    let xi = dot_product_operator();
    let d = spectral_decompose(&xi)?;
    println!("sum of sigma_c (x) sigma_c:");
    for e in d.summary() {
        println!(
            "  eigenvalue {:+.12} multiplicity {}",
            e.value, e.multiplicity
        );
    }
    println!(
        "  reconstruction error {:e}",
        d.reconstruct().max_abs_diff(xi.matrix())
    );
    println!("  simple spectrum: {}", is_maximal_operator(&xi)?);

    let n = [0.6, 0.0, 0.8];
    let spin = spin_along(n);
    let s = spectral_decompose(&spin)?;
    println!("\nspin along {n:?}: eigenvalues {:?}", s.eigenvalues());
    for (v, p) in s.eigenvalues().iter().zip(s.projections()) {
        println!(
            "  P({v:+}) idempotence deviation {:e}",
            p.idempotence_deviation()
        );
    }

    // conjugating by a unitary keeps the spectrum
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let hadamard = CMatrix::from_real_rows(&[&[h, h], &[h, -h]])?;
    let rotated = conjugate(&sigma_x(), &hadamard)?;
    println!(
        "\nH sigma_x H = sigma_z: {}",
        rotated
            .matrix()
            .approx_eq(qvars::hilbert::sigma_z().matrix(), 1e-12)
    );

    let degenerate = HermitianOperator::diag(&[1.0, 1.0, 2.0]);
    println!(
        "diag(1, 1, 2) simple spectrum: {}",
        is_maximal_operator(&degenerate)?
    );
    Ok(())
}
