//! Verification engine: Hermitian eigenvalues, finite-difference Hessians,
//! sample plans, the check battery, and the certificate pipeline.

mod certificate;
mod checks;
pub mod eigen;
pub mod fd;
mod plan;

pub use certificate::{
    build_weights, certify_epsilon, pure_power_weights, Certificate, Constants, DiagonalModel, TypeStatus,
    SCHEMA_VERSION,
};
pub use checks::{
    check_dominance, check_resolve, check_weight_family, dominance_value, flatness_value, gradient_bound_sq,
    plurisubharmonic_value, reevaluate, resolve_bound, resolve_paper_value, resolve_value, strip_bound, strip_value,
    transition_minimizer, uniform_value, CheckKind, CheckRecord, Witness, PSD_FLOOR, RESOLVE_SLACK, STRIP_SLACK,
};
pub use eigen::{hermitian_eigenvalues, hermitian_min_eigenvalue};
pub use fd::{audit_hessians, fd_hessian, fd_hessian_real, fd_levi_form, relative_gap, scaled_gap, FdAudit};
pub use plan::{decades, SamplePlan, DEFAULT_SEED};
