//! Levi forms, D'Angelo 1-type, and certified plurisubharmonic weights for
//! rigid domains `{2 Re z_{n+1} + Σ_j |f_j(z)|² < 0}` with monomial `f_j`.
//!
//! The numeric core is generic over the real scalar ([`Scalar`], `f32` or
//! `f64`); the combinatorics of [`finite_type`] are exact. The `*64`
//! aliases below fix the scalar to `f64`, which is what the certificate
//! pipeline and the CLI use.

pub mod certify;
pub mod error;
pub mod finite_type;
pub mod hermitian;
pub mod monomial;
pub mod problem;
pub mod report;
pub mod scalar;
pub mod weights;

pub use certify::{certify_epsilon, Certificate, CheckKind, CheckRecord, SamplePlan};
pub use error::{Error, Result};
pub use finite_type::{Rational, TypeReport};
pub use hermitian::HermitianForm;
pub use monomial::{AmbientPoint, ExponentVector, MixedTerm, Monomial};
pub use problem::{parse_problem, Problem, ProblemError};
pub use scalar::Scalar;
pub use weights::{Cutoff, Delta, Hinge, WeightFamily};

pub type MixedTerm64 = MixedTerm<f64>;
pub type Monomial64 = Monomial<f64>;
pub type HermitianForm64 = HermitianForm<f64>;
pub type AmbientPoint64 = AmbientPoint<f64>;
pub type WeightFamily64 = WeightFamily<f64>;
pub type MixedTerm32 = MixedTerm<f32>;
pub type HermitianForm32 = HermitianForm<f32>;
