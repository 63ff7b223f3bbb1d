//! The Born-rule family over finite-dimensional states.
//!
//! Probabilities computed here go through [`clamp_probability`]: values within
//! `PROBABILITY_SLACK` of `[0, 1]` are clamped, anything further out is an
//! error.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    orthonormality_deviation, CMatrix, DensityOperator, HermitianOperator, SpectralDecomposition,
    StateVector, C64, ORTHONORMAL_TOL,
};

pub const PROBABILITY_SLACK: f64 = 1e-10;
pub const DISTRIBUTION_TOL: f64 = 1e-12;
pub const PROJECTION_TOL: f64 = 1e-10;
pub const IMAGINARY_TOL: f64 = 1e-10;

pub fn clamp_probability(p: f64) -> Result<f64> {
    if !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// `trace(A·B)` without forming the product.
fn trace_of_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.dim();
    let mut s = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            s += a.get(i, j) * b.get(j, i);
        }
    }
    s
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A probability distribution over real variable values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDistribution")]
pub struct DiscreteDistribution {
    support: Vec<f64>,
    probabilities: Vec<f64>,
}

#[derive(Deserialize)]
struct RawDistribution {
    support: Vec<f64>,
    probabilities: Vec<f64>,
}

impl TryFrom<RawDistribution> for DiscreteDistribution {
    type Error = Error;

    fn try_from(raw: RawDistribution) -> Result<Self> {
        Self::new(raw.support, raw.probabilities)
    }
}

impl DiscreteDistribution {
    pub fn new(support: Vec<f64>, probabilities: Vec<f64>) -> Result<Self> {
        if support.len() != probabilities.len() || support.is_empty() {
            return Err(Error::InvalidDistribution(format!(
                "{} values with {} probabilities",
                support.len(),
                probabilities.len()
            )));
        }
        for (i, u) in support.iter().enumerate() {
            if support[..i].contains(u) {
                return Err(Error::InvalidDistribution(format!("value {u} repeated")));
            }
        }
        if let Some(p) = probabilities.iter().find(|p| p.is_nan() || **p < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "negative probability {p}"
            )));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > DISTRIBUTION_TOL {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Self {
            support,
            probabilities,
        })
    }

    pub fn uniform(support: Vec<f64>) -> Result<Self> {
        let p = 1.0 / support.len() as f64;
        let n = support.len();
        // spread rounding so the sum is exactly 1 in the last slot
        let mut probs = vec![p; n];
        if n > 0 {
            probs[n - 1] = 1.0 - p * (n - 1) as f64;
        }
        Self::new(support, probs)
    }

    pub fn point_mass(value: f64) -> Self {
        Self {
            support: vec![value],
            probabilities: vec![1.0],
        }
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }
}

/// `p(z | θ = u_j)`: rows are data values, columns are variable values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLikelihood")]
pub struct LikelihoodModel {
    data_values: Vec<f64>,
    theta_values: Vec<f64>,
    table: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawLikelihood {
    data_values: Vec<f64>,
    theta_values: Vec<f64>,
    table: Vec<Vec<f64>>,
}

impl TryFrom<RawLikelihood> for LikelihoodModel {
    type Error = Error;

    fn try_from(raw: RawLikelihood) -> Result<Self> {
        Self::new(raw.data_values, raw.theta_values, raw.table)
    }
}

impl LikelihoodModel {
    pub fn new(
        data_values: Vec<f64>,
        theta_values: Vec<f64>,
        table: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if table.len() != data_values.len() || data_values.is_empty() {
            return Err(Error::InvalidLikelihood(format!(
                "{} rows for {} data values",
                table.len(),
                data_values.len()
            )));
        }
        if theta_values.is_empty() {
            return Err(Error::InvalidLikelihood("no variable values".into()));
        }
        for (label, values) in [("data", &data_values), ("variable", &theta_values)] {
            for (i, v) in values.iter().enumerate() {
                if values[..i].contains(v) {
                    return Err(Error::InvalidLikelihood(format!(
                        "{label} value {v} repeated"
                    )));
                }
            }
        }
        for (z, row) in data_values.iter().zip(&table) {
            if row.len() != theta_values.len() {
                return Err(Error::InvalidLikelihood(format!(
                    "row z = {z} has {} entries, expected {}",
                    row.len(),
                    theta_values.len()
                )));
            }
            if let Some(p) = row.iter().find(|p| !(0.0..=1.0).contains(*p)) {
                return Err(Error::InvalidLikelihood(format!(
                    "entry {p} outside [0, 1]"
                )));
            }
        }
        for (j, u) in theta_values.iter().enumerate() {
            let total: f64 = table.iter().map(|row| row[j]).sum();
            if (total - 1.0).abs() > DISTRIBUTION_TOL {
                return Err(Error::InvalidLikelihood(format!(
                    "p(z | u = {u}) sums to {total}"
                )));
            }
        }
        Ok(Self {
            data_values,
            theta_values,
            table,
        })
    }

    /// `p(z = u | u) = 1`.
    pub fn noiseless(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        let table = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self::new(values.clone(), values, table)
    }

    /// ±1 variable reported with its sign flipped with probability `eps`.
    pub fn bit_flip(eps: f64) -> Result<Self> {
        Self::new(
            vec![1.0, -1.0],
            vec![1.0, -1.0],
            vec![vec![1.0 - eps, eps], vec![eps, 1.0 - eps]],
        )
    }

    pub fn data_values(&self) -> &[f64] {
        &self.data_values
    }

    pub fn theta_values(&self) -> &[f64] {
        &self.theta_values
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.table
    }

    /// `p(data_values[z] | theta_values[u])`
    pub fn probability(&self, z: usize, u: usize) -> f64 {
        self.table[z][u]
    }

    /// The likelihood `L(θ; z)` as a row over the variable values.
    pub fn likelihood(&self, z: f64) -> Result<&[f64]> {
        let i = self
            .data_values
            .iter()
            .position(|&d| d == z)
            .ok_or_else(|| Error::SupportMismatch(format!("data value {z} not in model")))?;
        Ok(&self.table[i])
    }

    /// `E(z | θ = u_j) = Σ_z z·p(z | u_j)`
    pub fn conditional_mean(&self, u: usize) -> f64 {
        self.data_values
            .iter()
            .zip(&self.table)
            .map(|(z, row)| z * row[u])
            .sum()
    }

    /// Whether the likelihood at `z` separates every pair of variable values,
    /// the condition under which the focused likelihood principle holds for
    /// noisy data. Reported only, never enforced.
    pub fn distinguishes_values(&self, z: f64) -> Result<bool> {
        let row = self.likelihood(z)?;
        Ok(row
            .iter()
            .enumerate()
            .all(|(i, a)| row[..i].iter().all(|b| b != a)))
    }
}

/// `|⟨a;i|b;j⟩|²`
pub fn born_simple(prepared: &StateVector, outcome: &StateVector) -> Result<f64> {
    same_dim(prepared.dim(), outcome.dim())?;
    for v in [prepared, outcome] {
        let n = v.norm();
        if (n - 1.0).abs() > crate::hilbert::NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
    }
    clamp_probability(prepared.inner(outcome).norm_sqr())
}

/// Map from decomposition eigenvalue index to a probability, matching values
/// within the decomposition's grouping tolerance.
fn align_support(
    dist: &DiscreteDistribution,
    decomposition: &SpectralDecomposition,
) -> Result<Vec<f64>> {
    let mut weights = vec![0.0; decomposition.len()];
    for (&u, &p) in dist.support().iter().zip(dist.probabilities()) {
        let k = decomposition
            .index_of(u)
            .ok_or_else(|| Error::SupportMismatch(format!("value {u} is not an eigenvalue")))?;
        weights[k] += p;
    }
    Ok(weights)
}

/// `ρ = Σ_j P(u_j) · Π_{u_j} / trace(Π_{u_j})`.
///
/// Eigenvalues missing from the distribution's support get probability 0.
/// Degenerate eigenspaces are weighted uniformly, which keeps `trace(ρ) = 1`.
pub fn mixed_state(
    dist: &DiscreteDistribution,
    decomposition: &SpectralDecomposition,
) -> Result<DensityOperator> {
    let weights = align_support(dist, decomposition)?;
    let mut rho = CMatrix::zeros(decomposition.dim());
    for (w, p) in weights.iter().zip(decomposition.projections()) {
        if *w > 0.0 {
            rho = &rho + &p.matrix().scale_re(w / p.trace());
        }
    }
    DensityOperator::new(rho)
}

/// `trace(ρ·Π)` for a projection `Π`.
pub fn born_trace(rho: &DensityOperator, projection: &HermitianOperator) -> Result<f64> {
    same_dim(rho.dim(), projection.dim())?;
    let dev = projection.idempotence_deviation();
    if dev > PROJECTION_TOL {
        return Err(Error::NotAProjection(dev));
    }
    clamp_probability(trace_of_product(rho.matrix(), projection.matrix()).re)
}

/// `trace(ρ·A)`
pub fn expectation(rho: &DensityOperator, op: &HermitianOperator) -> Result<f64> {
    same_dim(rho.dim(), op.dim())?;
    let t = trace_of_product(rho.matrix(), op.matrix());
    if t.im.abs() > IMAGINARY_TOL * t.re.abs().max(1.0) {
        return Err(Error::ComplexExpectation(t.im));
    }
    Ok(t.re)
}

/// `trace(ρ · Σ_{v∈B} Π_v)`
pub fn prob_event(
    rho: &DensityOperator,
    decomposition: &SpectralDecomposition,
    event: &[f64],
) -> Result<f64> {
    same_dim(rho.dim(), decomposition.dim())?;
    let mut indices: Vec<usize> = Vec::with_capacity(event.len());
    for &v in event {
        let k = decomposition.index_of(v).ok_or(Error::NotInSpectrum(v))?;
        if !indices.contains(&k) {
            indices.push(k);
        }
    }
    let mut total = CMatrix::zeros(rho.dim());
    for k in indices {
        total = &total + decomposition.projections()[k].matrix();
    }
    born_trace(rho, &HermitianOperator::new(total)?)
}

/// Eigenvalue index for each model column; every eigenvalue must be covered.
fn align_model(
    model: &LikelihoodModel,
    decomposition: &SpectralDecomposition,
) -> Result<Vec<usize>> {
    let mut cols = Vec::with_capacity(model.theta_values().len());
    for &u in model.theta_values() {
        cols.push(
            decomposition
                .index_of(u)
                .ok_or_else(|| Error::SupportMismatch(format!("value {u} is not an eigenvalue")))?,
        );
    }
    for (k, v) in decomposition.eigenvalues().iter().enumerate() {
        if !cols.contains(&k) {
            return Err(Error::SupportMismatch(format!(
                "eigenvalue {v} has no likelihood column"
            )));
        }
    }
    Ok(cols)
}

/// `A^z = Σ_j E(z | θ = u_j) · Π_{u_j}`: the operator of noisy data `z`
/// read as the conditional expectation of `z` on each eigenspace.
pub fn data_operator(
    model: &LikelihoodModel,
    decomposition: &SpectralDecomposition,
) -> Result<HermitianOperator> {
    let cols = align_model(model, decomposition)?;
    let mut m = CMatrix::zeros(decomposition.dim());
    for (j, &k) in cols.iter().enumerate() {
        let mean = model.conditional_mean(j);
        m = &m + &decomposition.projections()[k].matrix().scale_re(mean);
    }
    HermitianOperator::new(m)
}

/// `E(z | ρ) = trace(ρ · A^z)`
pub fn data_expectation(
    rho: &DensityOperator,
    model: &LikelihoodModel,
    decomposition: &SpectralDecomposition,
) -> Result<f64> {
    expectation(rho, &data_operator(model, decomposition)?)
}

/// `F = Σ_i p(z | u_i) |a;i⟩⟨a;i|`, with `basis[i]` the state of `u_i`.
pub fn likelihood_effect(
    model: &LikelihoodModel,
    z: f64,
    basis: &[StateVector],
) -> Result<HermitianOperator> {
    if basis.len() != model.theta_values().len() {
        return Err(Error::SupportMismatch(format!(
            "{} basis states for {} variable values",
            basis.len(),
            model.theta_values().len()
        )));
    }
    let dim = basis[0].dim();
    if basis.iter().any(|b| b.dim() != dim) || dim != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: dim,
        });
    }
    let dev = orthonormality_deviation(basis);
    if dev > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal(dev));
    }
    let row = model.likelihood(z)?;
    let mut m = CMatrix::zeros(dim);
    for (p, b) in row.iter().zip(basis) {
        m = &m + &CMatrix::outer(b.amplitudes(), b.amplitudes()).scale_re(*p);
    }
    HermitianOperator::new(m)
}

/// Amplitude of the joint event for two independent events: `z1·z2`.
pub fn compose_independent(z1: C64, z2: C64) -> C64 {
    z1 * z2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{
        dot_product_operator, sigma_z, singlet_state, spectral_decompose, spin_in_plane, Tensor,
    };

    #[test]
    fn born_simple_basics() {
        let up = StateVector::basis(2, 0);
        let down = StateVector::basis(2, 1);
        assert_eq!(born_simple(&up, &up).unwrap(), 1.0);
        assert_eq!(born_simple(&up, &down).unwrap(), 0.0);
        assert!(born_simple(&up, &StateVector::basis(3, 0)).is_err());
    }

    #[test]
    fn clamping_policy() {
        assert_eq!(clamp_probability(1.0 + 5e-11).unwrap(), 1.0);
        assert_eq!(clamp_probability(-5e-11).unwrap(), 0.0);
        assert!(clamp_probability(1.0 + 1e-9).is_err());
        assert!(clamp_probability(f64::NAN).is_err());
    }

    #[test]
    fn mixed_state_examples() {
        let d = spectral_decompose(&HermitianOperator::diag(&[1.0, 2.0, 3.0])).unwrap();
        let rho = mixed_state(
            &DiscreteDistribution::uniform(vec![1.0, 2.0, 3.0]).unwrap(),
            &d,
        )
        .unwrap();
        assert!(rho
            .matrix()
            .approx_eq(&CMatrix::identity(3).scale_re(1.0 / 3.0), 1e-15));

        let rho = mixed_state(&DiscreteDistribution::point_mass(2.0), &d).unwrap();
        assert_eq!(rho, DensityOperator::pure(&StateVector::basis(3, 1)));

        let xi = spectral_decompose(&dot_product_operator()).unwrap();
        let dist = DiscreteDistribution::new(vec![-3.0, 1.0], vec![0.5, 0.5]).unwrap();
        let rho = mixed_state(&dist, &xi).unwrap();
        let expected = &xi.projections()[0].matrix().scale_re(0.5)
            + &xi.projections()[1].matrix().scale_re(1.0 / 6.0);
        assert!(rho.matrix().approx_eq(&expected, 1e-12));
        assert!((rho.trace() - 1.0).abs() < 1e-12);

        let bad = DiscreteDistribution::point_mass(7.0);
        assert!(matches!(
            mixed_state(&bad, &xi),
            Err(Error::SupportMismatch(_))
        ));
    }

    #[test]
    fn born_trace_examples() {
        let rho = DensityOperator::maximally_mixed(2);
        assert!((born_trace(&rho, &HermitianOperator::identity(2)).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            born_trace(&rho, &sigma_z()),
            Err(Error::NotAProjection(_))
        ));

        // singlet: both +1 along the same axis never happens
        let rho = DensityOperator::pure(&singlet_state());
        let up = StateVector::basis(2, 0);
        let p = born_trace(&rho, &up.tensor(&up).projector()).unwrap();
        assert!(p.abs() < 1e-15);
    }

    #[test]
    fn expectation_singlet_correlation() {
        let rho = DensityOperator::pure(&singlet_state());
        for deg in [0.0_f64, 45.0, 90.0] {
            let g = deg.to_radians();
            let op = spin_in_plane(0.0).tensor(&spin_in_plane(g));
            let e = expectation(&rho, &op).unwrap();
            assert!((e + g.cos()).abs() < 1e-12, "{deg}: {e}");
        }
        assert!((expectation(&rho, &HermitianOperator::identity(4)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn prob_event_edges() {
        let d = spectral_decompose(&dot_product_operator()).unwrap();
        let rho = DensityOperator::maximally_mixed(4);
        assert!((prob_event(&rho, &d, &[-3.0, 1.0]).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(prob_event(&rho, &d, &[]).unwrap(), 0.0);
        assert!((prob_event(&rho, &d, &[1.0]).unwrap() - 0.75).abs() < 1e-12);
        assert_eq!(
            prob_event(&rho, &d, &[2.0]).unwrap_err(),
            Error::NotInSpectrum(2.0)
        );
    }

    #[test]
    fn data_operator_examples() {
        let d = spectral_decompose(&sigma_z()).unwrap();
        let noiseless = LikelihoodModel::noiseless(vec![1.0, -1.0]).unwrap();
        assert!(data_operator(&noiseless, &d)
            .unwrap()
            .matrix()
            .approx_eq(sigma_z().matrix(), 1e-15));

        let eps = 0.2;
        let flip = LikelihoodModel::bit_flip(eps).unwrap();
        assert!(data_operator(&flip, &d)
            .unwrap()
            .matrix()
            .approx_eq(sigma_z().scaled(1.0 - 2.0 * eps).matrix(), 1e-15));

        let constant =
            LikelihoodModel::new(vec![4.5], vec![1.0, -1.0], vec![vec![1.0, 1.0]]).unwrap();
        assert!(data_operator(&constant, &d)
            .unwrap()
            .matrix()
            .approx_eq(&CMatrix::identity(2).scale_re(4.5), 1e-15));

        let partial = LikelihoodModel::noiseless(vec![1.0]).unwrap();
        assert!(matches!(
            data_operator(&partial, &d),
            Err(Error::SupportMismatch(_))
        ));
    }

    #[test]
    fn data_expectation_examples() {
        let d = spectral_decompose(&sigma_z()).unwrap();
        let up = DensityOperator::pure(&StateVector::basis(2, 0));
        let noiseless = LikelihoodModel::noiseless(vec![1.0, -1.0]).unwrap();
        assert!((data_expectation(&up, &noiseless, &d).unwrap() - 1.0).abs() < 1e-15);
        let flip = LikelihoodModel::bit_flip(0.3).unwrap();
        let mixed = DensityOperator::maximally_mixed(2);
        assert!(data_expectation(&mixed, &flip, &d).unwrap().abs() < 1e-15);
    }

    #[test]
    fn likelihood_effect_examples() {
        let basis = [StateVector::basis(2, 0), StateVector::basis(2, 1)];
        let noiseless = LikelihoodModel::noiseless(vec![1.0, -1.0]).unwrap();
        let f = likelihood_effect(&noiseless, -1.0, &basis).unwrap();
        assert_eq!(f, StateVector::basis(2, 1).projector());

        let flat = LikelihoodModel::new(
            vec![0.0, 1.0],
            vec![1.0, -1.0],
            vec![vec![0.25, 0.25], vec![0.75, 0.75]],
        )
        .unwrap();
        let f = likelihood_effect(&flat, 0.0, &basis).unwrap();
        assert!(f
            .matrix()
            .approx_eq(&CMatrix::identity(2).scale_re(0.25), 1e-15));
        assert!(!flat.distinguishes_values(0.0).unwrap());
        assert!(LikelihoodModel::bit_flip(0.1)
            .unwrap()
            .distinguishes_values(1.0)
            .unwrap());
        assert!(likelihood_effect(&flat, 9.0, &basis).is_err());
    }

    #[test]
    fn likelihood_model_validation() {
        assert!(LikelihoodModel::new(vec![0.0], vec![1.0], vec![vec![0.5]]).is_err());
        assert!(
            LikelihoodModel::new(vec![0.0, 1.0], vec![1.0], vec![vec![1.5], vec![-0.5]]).is_err()
        );
        assert!(
            LikelihoodModel::new(vec![0.0, 0.0], vec![1.0], vec![vec![0.5], vec![0.5]]).is_err()
        );
        assert!(LikelihoodModel::new(vec![0.0], vec![1.0, 2.0], vec![vec![1.0]]).is_err());
    }

    #[test]
    fn distribution_validation() {
        assert!(DiscreteDistribution::new(vec![1.0, 2.0], vec![0.5, 0.6]).is_err());
        assert!(DiscreteDistribution::new(vec![1.0, 1.0], vec![0.5, 0.5]).is_err());
        assert!(DiscreteDistribution::new(vec![1.0, 2.0], vec![1.5, -0.5]).is_err());
        assert!(DiscreteDistribution::new(vec![], vec![]).is_err());
        let u = DiscreteDistribution::uniform(vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]).unwrap();
        assert_eq!(u.probabilities().len(), 7);
    }

    #[test]
    fn compose_amplitudes() {
        let z1 = C64::from_polar(0.6, 0.3);
        assert_eq!(compose_independent(z1, C64::new(1.0, 0.0)), z1);
        let z2 = C64::from_polar(1.0, -1.1);
        let z = compose_independent(C64::from_polar(1.0, 0.4), z2);
        assert!((z.norm() - 1.0).abs() < 1e-15);
    }
}
