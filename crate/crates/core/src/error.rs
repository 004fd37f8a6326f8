use thiserror::Error;

/// Errors raised by the numeric and combinatorial core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("exponent vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("mixed term has no nonzero generators")]
    EmptyMixedTerm,

    #[error("generator {index} is constant, so u(0) != 0")]
    ConstantGenerator { index: usize },

    #[error("exponent overflow in generator {index}")]
    ExponentOverflow { index: usize },

    /// Coordinate `0` (1-based) has no pure-power generator; the 1-type is infinite.
    #[error("not of finite type: coordinate z_{0} has no pure-power generator")]
    NotFiniteType(usize),

    #[error("staircase box of {size} lattice points exceeds the enumeration budget {budget}")]
    EnumerationBudget { size: u128, budget: u64 },

    #[error("delta = {0} is outside (0, 1]")]
    DeltaOutOfRange(String),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    EigenNoConvergence { sweeps: usize },

    #[error("invalid sample plan: {0}")]
    InvalidPlan(String),
}

pub type Result<T> = std::result::Result<T, Error>;
