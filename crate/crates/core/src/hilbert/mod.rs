//! Finite-dimensional Hilbert-space objects and the operator constructions
//! built on them: operators from variable values, unitary conjugation,
//! spectral decomposition, tensor products, spin operators and the
//! two-particle dot-product operator.

mod eigen;
mod matrix;

use serde::Serialize;

use crate::error::{Error, Result};

pub use eigen::{jacobi_eigen, JacobiEigen, MAX_SWEEPS, OFF_DIAGONAL_TOL};
pub use matrix::{inner, norm, CMatrix, C64};

use matrix::{ONE, ZERO};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const NORM_TOL: f64 = 1e-12;
pub const ORTHONORMAL_TOL: f64 = 1e-10;
pub const UNITARY_TOL: f64 = 1e-10;
pub const DENSITY_TRACE_TOL: f64 = 1e-10;
pub const DENSITY_PSD_TOL: f64 = 1e-10;
/// Relative eigenvalue grouping tolerance, applied to the spectral radius.
pub const GROUPING_TOL: f64 = 1e-8;
pub const GROUPING_FLOOR: f64 = 1e-12;
/// Amplitudes at or below this magnitude are skipped by the phase convention.
pub const PHASE_EPS: f64 = 1e-10;

/// Unit vector with its first non-negligible amplitude real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

fn fix_phase(amps: &mut [C64]) {
    if let Some(first) = amps.iter().find(|a| a.norm() > PHASE_EPS).copied() {
        let rot = first.conj() / first.norm();
        for a in amps.iter_mut() {
            *a *= rot;
        }
    }
}

impl StateVector {
    /// Requires norm 1 within `NORM_TOL`.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        let n = norm(&amps);
        if amps.is_empty() || (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
        let mut amps = amps;
        fix_phase(&mut amps);
        Ok(Self { amps })
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalized(amps: Vec<C64>) -> Result<Self> {
        let n = norm(&amps);
        if amps.is_empty() || n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized(n));
        }
        let amps: Vec<C64> = amps.into_iter().map(|a| a / n).collect();
        Self::new(amps)
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::normalized(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Standard basis vector `|i⟩`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut amps = vec![ZERO; dim];
        amps[i] = ONE;
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> C64 {
        inner(&self.amps, &other.amps)
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    /// `|ψ⟩⟨ψ|`
    pub fn projector(&self) -> HermitianOperator {
        HermitianOperator::from_hermitian_unchecked(CMatrix::outer(&self.amps, &self.amps))
    }

    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        self.amps.iter().map(|c| [c.re, c.im]).collect()
    }

    /// Largest amplitude difference after both vectors are phase-normalized.
    pub fn distance_up_to_phase(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn symmetrize(m: &CMatrix) -> CMatrix {
    (m + &m.adjoint()).scale_re(0.5)
}

/// A conjugate-symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: CMatrix,
}

impl HermitianOperator {
    /// Accepts deviations up to `HERMITIAN_TOL · max(1, max|a_ij|)` and stores
    /// the exactly symmetrized matrix.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let dev = matrix.hermitian_deviation();
        if dev > HERMITIAN_TOL * matrix.max_abs().max(1.0) {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self {
            matrix: symmetrize(&matrix),
        })
    }

    pub(crate) fn from_hermitian_unchecked(matrix: CMatrix) -> Self {
        Self {
            matrix: symmetrize(&matrix),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim),
        }
    }

    pub fn diag(values: &[f64]) -> Self {
        Self {
            matrix: CMatrix::diag(values),
        }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::new(CMatrix::from_real_rows(rows)?)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn scaled(&self, s: f64) -> HermitianOperator {
        Self {
            matrix: self.matrix.scale_re(s),
        }
    }

    pub fn plus(&self, other: &HermitianOperator) -> HermitianOperator {
        Self {
            matrix: &self.matrix + &other.matrix,
        }
    }

    pub fn apply(&self, v: &StateVector) -> Vec<C64> {
        self.matrix.mul_vec(v.amplitudes())
    }

    /// Largest entry of `|P² − P|`.
    pub fn idempotence_deviation(&self) -> f64 {
        (&self.matrix * &self.matrix).max_abs_diff(&self.matrix)
    }
}

/// A positive semidefinite, unit-trace Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: CMatrix,
}

impl DensityOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let h = HermitianOperator::new(matrix).map_err(|e| Error::InvalidDensity(e.to_string()))?;
        let tr = h.trace();
        if (tr - 1.0).abs() > DENSITY_TRACE_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let eig = jacobi_eigen(h.matrix())?;
        let min = eig.values.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -DENSITY_PSD_TOL {
            return Err(Error::InvalidDensity(format!("eigenvalue {min}")));
        }
        Ok(Self {
            matrix: h.into_matrix(),
        })
    }

    /// `|ψ⟩⟨ψ|`
    pub fn pure(state: &StateVector) -> Self {
        Self {
            matrix: state.projector().into_matrix(),
        }
    }

    /// `I / r`
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim).scale_re(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }
}

/// Distinct eigenvalues (ascending) with their eigenspace projections.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    multiplicities: Vec<usize>,
    projections: Vec<HermitianOperator>,
    eigenvectors: Vec<Vec<StateVector>>,
    tolerance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenvalueSummary {
    pub value: f64,
    pub multiplicity: usize,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn projections(&self) -> &[HermitianOperator] {
        &self.projections
    }

    /// Orthonormal, phase-normalized eigenvectors of each eigenspace.
    pub fn eigenvectors(&self) -> &[Vec<StateVector>] {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.projections.first().map_or(0, HermitianOperator::dim)
    }

    /// Grouping tolerance used for this decomposition.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Index of the eigenvalue matching `value` within the grouping tolerance.
    pub fn index_of(&self, value: f64) -> Option<usize> {
        self.eigenvalues
            .iter()
            .position(|&e| (e - value).abs() <= self.tolerance.max(GROUPING_FLOOR))
    }

    pub fn projection_for(&self, value: f64) -> Option<&HermitianOperator> {
        self.index_of(value).map(|i| &self.projections[i])
    }

    /// `Σ λ_k P_k`
    pub fn reconstruct(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim());
        for (v, p) in self.eigenvalues.iter().zip(&self.projections) {
            out = &out + &p.matrix().scale_re(*v);
        }
        out
    }

    pub fn summary(&self) -> Vec<EigenvalueSummary> {
        self.eigenvalues
            .iter()
            .zip(&self.multiplicities)
            .map(|(&value, &multiplicity)| EigenvalueSummary {
                value,
                multiplicity,
            })
            .collect()
    }
}

/// Modified Gram-Schmidt. Fails if the vectors are linearly dependent.
pub fn gram_schmidt(vectors: &[Vec<C64>]) -> Result<Vec<StateVector>> {
    let mut out: Vec<Vec<C64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &out {
                let c = inner(u, &w);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= c * ui;
                }
            }
        }
        let n = norm(&w);
        if n < 1e-10 * norm(v).max(f64::MIN_POSITIVE) {
            return Err(Error::NotOrthonormal(n));
        }
        out.push(w.into_iter().map(|x| x / n).collect());
    }
    out.into_iter().map(StateVector::normalized).collect()
}

/// Largest entry of `|⟨b_i|b_j⟩ − δ_ij|`.
pub fn orthonormality_deviation(basis: &[StateVector]) -> f64 {
    let mut dev: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let target = if i == j { ONE } else { ZERO };
            dev = dev.max((a.inner(b) - target).norm());
        }
    }
    dev
}

/// `A = Σ u_i |i⟩⟨i|` over an orthonormal basis.
///
/// Values must be distinct; a repeated value means the encoding is not
/// maximal and should be built from eigenspace projections instead.
pub fn operator_from_variable(values: &[f64], basis: &[StateVector]) -> Result<HermitianOperator> {
    let dim = basis.first().map_or(0, StateVector::dim);
    if values.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: values.len(),
        });
    }
    if basis.len() != dim || basis.iter().any(|b| b.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: basis.len(),
        });
    }
    let dev = orthonormality_deviation(basis);
    if dev > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal(dev));
    }
    for (i, a) in values.iter().enumerate() {
        if values[..i].contains(a) {
            return Err(Error::DuplicateValues(*a));
        }
    }
    let mut m = CMatrix::zeros(dim);
    for (u, b) in values.iter().zip(basis) {
        m = &m + &CMatrix::outer(b.amplitudes(), b.amplitudes()).scale_re(*u);
    }
    Ok(HermitianOperator::from_hermitian_unchecked(m))
}

/// `W⁻¹ · op · W` for unitary `W`.
pub fn conjugate(op: &HermitianOperator, w: &CMatrix) -> Result<HermitianOperator> {
    if w.dim() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            found: w.dim(),
        });
    }
    let dev = w.unitary_deviation();
    if dev > UNITARY_TOL {
        return Err(Error::NotUnitary(dev));
    }
    let m = &(&w.adjoint() * op.matrix()) * w;
    Ok(HermitianOperator::from_hermitian_unchecked(m))
}

/// Eigenvalues grouped within `GROUPING_TOL` of the spectral radius (floor
/// `GROUPING_FLOOR`), with projections built from orthonormalized eigenvectors.
pub fn spectral_decompose(op: &HermitianOperator) -> Result<SpectralDecomposition> {
    let eig = jacobi_eigen(op.matrix())?;
    let n = op.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.values[a].total_cmp(&eig.values[b]));
    let radius = eig.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let tol = (GROUPING_TOL * radius).max(GROUPING_FLOOR);

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some(g) if eig.values[i] - eig.values[*g.last().unwrap()] <= tol => g.push(i),
            _ => groups.push(vec![i]),
        }
    }

    let mut eigenvalues = Vec::with_capacity(groups.len());
    let mut multiplicities = Vec::with_capacity(groups.len());
    let mut projections = Vec::with_capacity(groups.len());
    let mut eigenvectors = Vec::with_capacity(groups.len());
    for g in groups {
        let mean = g.iter().map(|&i| eig.values[i]).sum::<f64>() / g.len() as f64;
        let cols: Vec<Vec<C64>> = g.iter().map(|&i| eig.vectors.column(i)).collect();
        let vecs = gram_schmidt(&cols)?;
        let mut p = CMatrix::zeros(n);
        for v in &vecs {
            p = &p + &CMatrix::outer(v.amplitudes(), v.amplitudes());
        }
        eigenvalues.push(mean);
        multiplicities.push(g.len());
        projections.push(HermitianOperator::from_hermitian_unchecked(p));
        eigenvectors.push(vecs);
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        multiplicities,
        projections,
        eigenvectors,
        tolerance: tol,
    })
}

/// Every eigenvalue is simple.
pub fn is_maximal_operator(op: &HermitianOperator) -> Result<bool> {
    Ok(spectral_decompose(op)?
        .multiplicities()
        .iter()
        .all(|&m| m == 1))
}

/// Kronecker product, preserving the operand kind.
pub trait Tensor {
    fn tensor(&self, other: &Self) -> Self;
}

impl Tensor for CMatrix {
    fn tensor(&self, other: &Self) -> Self {
        self.kron(other)
    }
}

impl Tensor for HermitianOperator {
    fn tensor(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.kron(&other.matrix),
        }
    }
}

impl Tensor for DensityOperator {
    fn tensor(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.kron(&other.matrix),
        }
    }
}

impl Tensor for StateVector {
    fn tensor(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        // product of phase-normalized vectors is already phase-normalized
        Self { amps }
    }
}

/// Pauli σ_x.
pub fn sigma_x() -> HermitianOperator {
    HermitianOperator {
        matrix: CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("2x2"),
    }
}

/// Pauli σ_y.
pub fn sigma_y() -> HermitianOperator {
    HermitianOperator {
        matrix: CMatrix::from_rows(vec![
            vec![ZERO, C64::new(0.0, -1.0)],
            vec![C64::new(0.0, 1.0), ZERO],
        ])
        .expect("2x2"),
    }
}

/// Pauli σ_z; `|+⟩ = (1, 0)` is its +1 eigenvector.
pub fn sigma_z() -> HermitianOperator {
    HermitianOperator::diag(&[1.0, -1.0])
}

/// `n·σ` for a unit vector `n = (x, y, z)`.
pub fn spin_along(n: [f64; 3]) -> HermitianOperator {
    sigma_x()
        .scaled(n[0])
        .plus(&sigma_y().scaled(n[1]))
        .plus(&sigma_z().scaled(n[2]))
}

/// Spin component along a direction at `angle` radians from the z axis in
/// the x–z measurement plane: `cos(angle)·σ_z + sin(angle)·σ_x`.
pub fn spin_in_plane(angle: f64) -> HermitianOperator {
    spin_along([angle.sin(), 0.0, angle.cos()])
}

/// Dot product of two spin vectors: `Σ_{c∈{x,y,z}} σ_c ⊗ σ_c`.
pub fn dot_product_operator() -> HermitianOperator {
    [sigma_x(), sigma_y(), sigma_z()]
        .iter()
        .map(|s| s.tensor(s))
        .reduce(|a, b| a.plus(&b))
        .expect("three terms")
}

/// `(|+−⟩ − |−+⟩)/√2` in the basis `|++⟩, |+−⟩, |−+⟩, |−−⟩`.
pub fn singlet_state() -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::new(vec![ZERO, C64::new(h, 0.0), C64::new(-h, 0.0), ZERO]).expect("unit vector")
}
