use thiserror::Error;

/// Everything that can go wrong between a set of potential parameters and a
/// verified quasi-exact eigenpair.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QesError {
    #[error("quasi-exactness constraint c1 + n*b2 = 0 violated for n = {n} (residual {residual:e})")]
    ConstraintViolated { n: usize, residual: f64 },

    #[error("recursion denominator b0 - k*a vanishes at k = {k}")]
    VanishingDenominator { k: usize },

    #[error("invalid model parameters: {0}")]
    InvalidParameters(String),

    #[error("energy {energy} is not negative; sqrt(-2E) is undefined")]
    NonNegativeEnergy { energy: f64 },

    #[error("negative discriminant {0} in the effective angular momentum")]
    NegativeDiscriminant(f64),

    #[error("no admissible value of the tuned parameter {parameter}")]
    NoAdmissibleRoot { parameter: &'static str },

    #[error("no root of the determinant inside (0, {upper}] but a sign change beyond it; widen the bracket")]
    BracketExhausted { upper: f64 },

    #[error("invalid radial grid: {0}")]
    InvalidGrid(String),

    #[error("matching defect has the same sign at both ends of the energy bracket ({lo}, {hi})")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("radial integration overflowed at r = {r}; change the grid or bracket")]
    StiffFailure { r: f64 },

    #[error("quadrature did not converge under grid doubling (relative change {0:e})")]
    NotConverged(f64),

    #[error("cofactor expansion limited to n <= 8, got n = {0}")]
    DegreeTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, QesError>;
