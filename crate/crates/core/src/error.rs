use thiserror::Error;

/// Errors raised by the variable, group, operator and Born-rule layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variables are defined on different phi-spaces")]
    DomainMismatch,

    #[error("invalid phi-space: {0}")]
    InvalidPhiSpace(String),

    #[error("invalid variable `{name}`: {reason}")]
    InvalidVariable { name: String, reason: String },

    #[error("variable `{0}` is not accessible in this system")]
    NotAccessible(String),

    #[error("element {index} is not a bijection on {points} points")]
    NotABijection { index: usize, points: usize },

    #[error("group does not contain the identity")]
    MissingIdentity,

    #[error("group is not closed: element {left} composed with element {right} is absent")]
    NotClosed { left: usize, right: usize },

    #[error("group is missing the inverse of element {0}")]
    MissingInverse(usize),

    #[error("generator closure exceeded {0} elements")]
    GroupTooLarge(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("operator is not a projection (deviation {0:e})")]
    NotAProjection(f64),

    #[error("vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("basis is not orthonormal (deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("values are not distinct: {0}")]
    DuplicateValues(f64),

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("value {0} is not in the spectrum")]
    NotInSpectrum(f64),

    #[error("support mismatch: {0}")]
    SupportMismatch(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid likelihood model: {0}")]
    InvalidLikelihood(String),

    #[error("probability {0} lies outside [0, 1] beyond rounding")]
    ProbabilityOutOfRange(f64),

    #[error("expectation has imaginary residue {0:e}")]
    ComplexExpectation(f64),

    #[error("invalid setting: {0}")]
    InvalidSetting(String),
}

pub type Result<T> = std::result::Result<T, Error>;
