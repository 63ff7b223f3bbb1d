use crate::born::born_trace;
use crate::error::Result;
use crate::hilbert::{
    dot_product_operator, singlet_state, spectral_decompose, spin_in_plane, DensityOperator,
    HermitianOperator, Tensor,
};
use crate::report::Report;

const EXACT_TOL: f64 = 1e-10;

/// Eight directions spanning the measurement plane, in degrees.
pub const EPR_DIRECTIONS: [f64; 8] = [0.0, 45.0, 90.0, 135.0, 180.0, 225.0, 270.0, 315.0];

/// Projection onto outcome `s = ±1` of the spin component at `angle_deg`:
/// `(I + s·σ_n) / 2`.
fn outcome_projection(angle_deg: f64, s: f64) -> HermitianOperator {
    HermitianOperator::identity(2)
        .plus(&spin_in_plane(angle_deg.to_radians()).scaled(s))
        .scaled(0.5)
}

/// `[P(+,+), P(−,−), P(+,−) + P(−,+)]` for both particles measured along the
/// same direction in the singlet state.
pub fn same_direction_probabilities(angle_deg: f64) -> Result<[f64; 3]> {
    let rho = DensityOperator::pure(&singlet_state());
    let up = outcome_projection(angle_deg, 1.0);
    let down = outcome_projection(angle_deg, -1.0);
    let pp = born_trace(&rho, &up.tensor(&up))?;
    let mm = born_trace(&rho, &down.tensor(&down))?;
    let opposite = born_trace(&rho, &up.tensor(&down))? + born_trace(&rho, &down.tensor(&up))?;
    Ok([pp, mm, opposite])
}

/// Spectrum of the dot-product operator, its −3 eigenvector, and perfect
/// anti-correlation along [`EPR_DIRECTIONS`]. No sampling is involved.
pub fn epr_bohm_report() -> Result<Report> {
    let mut report = Report::new("epr_bohm");
    report.input("directions_deg", EPR_DIRECTIONS);

    let xi = dot_product_operator();
    let decomposition = spectral_decompose(&xi)?;
    let eigen = decomposition.summary();
    let spectrum_ok = eigen.len() == 2
        && (eigen[0].value + 3.0).abs() <= EXACT_TOL
        && eigen[0].multiplicity == 1
        && (eigen[1].value - 1.0).abs() <= EXACT_TOL
        && eigen[1].multiplicity == 3;
    report.check(
        "xi spectrum is {-3 (x1), +1 (x3)}",
        spectrum_ok,
        format!("{eigen:?}"),
    );

    let singlet = singlet_state();
    let distance = decomposition
        .eigenvectors()
        .first()
        .filter(|v| v.len() == 1)
        .map_or(f64::INFINITY, |v| v[0].distance_up_to_phase(&singlet));
    report.check(
        "-3 eigenvector is the singlet",
        distance <= EXACT_TOL,
        format!("max amplitude difference {distance:e}"),
    );

    let image = xi.apply(&singlet);
    let residual = image
        .iter()
        .zip(singlet.amplitudes())
        .map(|(a, b)| (a + b * 3.0).norm())
        .fold(0.0, f64::max);
    report.check(
        "xi singlet = -3 singlet",
        residual <= EXACT_TOL,
        format!("residual {residual:e}"),
    );

    let mut worst_equal: f64 = 0.0;
    let mut worst_opposite: f64 = 0.0;
    for &angle in &EPR_DIRECTIONS {
        let [pp, mm, opposite] = same_direction_probabilities(angle)?;
        worst_equal = worst_equal.max(pp).max(mm);
        worst_opposite = worst_opposite.max((1.0 - opposite).abs());
        let setting = format!("direction={angle}");
        report
            .row(&setting, "P(+,+)", pp)
            .row(&setting, "P(-,-)", mm)
            .row(&setting, "P(opposite)", opposite);
    }
    report.check(
        "equal outcomes along the same direction have probability 0",
        worst_equal <= EXACT_TOL,
        format!("largest P(s,s) = {worst_equal:e}"),
    );
    report.check(
        "opposite outcomes along the same direction have probability 1",
        worst_opposite <= EXACT_TOL,
        format!("largest |1 - P(opposite)| = {worst_opposite:e}"),
    );

    report
        .result("xi_eigenvalues", &eigen)
        .result("xi_matrix", xi.matrix().to_pairs())
        .result("singlet_amplitudes", singlet.to_pairs())
        .result("max_equal_outcome_probability", worst_equal);
    for e in &eigen {
        report.row("xi", format!("eigenvalue x{}", e.multiplicity), e.value);
    }
    Ok(report)
}
