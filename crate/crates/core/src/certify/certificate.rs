use crate::error::{Error, Result};
use crate::finite_type::{conjecture_bounds, TypeReport};
use crate::monomial::MixedTerm;
use crate::problem::problem_digest;
use crate::weights::{Cutoff, WeightFamily};

use super::checks::{check_dominance, check_resolve, check_weight_family, strip_bound, CheckKind, CheckRecord};
use super::plan::SamplePlan;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum TypeStatus {
    Finite(TypeReport),
    /// 1-based coordinate without a pure-power generator.
    NotFinite {
        coordinate: usize,
    },
}

/// The diagonal model `Σ κ_i |z_i|^{2 m_i}` the weights were built for.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalModel {
    pub pure_powers: Vec<u32>,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constants {
    pub c: f64,
    pub d: f64,
    pub big_c: f64,
    pub big_m: f64,
    /// `C' = p(e + e^{-3})`.
    pub c_prime: f64,
    /// Asserted lower bound for the strip constant.
    pub c_dblprime_bound: f64,
    /// Smallest measured strip constant over the `δ` sweep.
    pub c_dblprime_measured: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub schema_version: u32,
    pub problem_digest: String,
    pub seed: u64,
    pub type_status: TypeStatus,
    pub diagonal_model: Option<DiagonalModel>,
    pub constants: Option<Constants>,
    pub checks: Vec<CheckRecord>,
    pub overall: bool,
}

impl Certificate {
    pub fn type_report(&self) -> Option<&TypeReport> {
        match &self.type_status {
            TypeStatus::Finite(r) => Some(r),
            TypeStatus::NotFinite { .. } => None,
        }
    }

    pub fn records(&self, kind: CheckKind) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(move |r| r.kind == kind)
    }
}

/// `κ_i = Σ |c_j|²` over the generators equal to `z_i^{m_i}`.
pub fn pure_power_weights(u: &MixedTerm<f64>, pure_powers: &[u32]) -> Vec<f64> {
    let mut kappa = vec![0.0; pure_powers.len()];
    for g in u.generators() {
        if let Some((i, k)) = g.exponents.as_pure_power() {
            if k == pure_powers[i] {
                kappa[i] += g.coefficient.norm_sqr();
            }
        }
    }
    kappa
}

/// The weight family and diagonal model attached to a finite-type `u`.
pub fn build_weights(u: &MixedTerm<f64>, report: &TypeReport) -> Result<(WeightFamily<f64>, MixedTerm<f64>)> {
    let kappa = pure_power_weights(u, &report.pure_powers);
    let w = WeightFamily::with_weights(&report.pure_powers, &kappa, Cutoff::build());
    let model = MixedTerm::diagonal_model(&report.pure_powers, &kappa)?;
    Ok((w, model))
}

/// Finite-type check, weight construction, and the full check battery.
///
/// The certified order is `ε = 1/T = 1/(2 max m_i)`, carried in the type
/// report. If some coordinate has no pure power the certificate records it
/// and fails; numeric failures of the eigensolver are returned as errors.
pub fn certify_epsilon(u: &MixedTerm<f64>, plan: &SamplePlan) -> Result<Certificate> {
    plan.validate()?;
    let mut cert = Certificate {
        schema_version: SCHEMA_VERSION,
        problem_digest: problem_digest(u, plan),
        seed: plan.seed,
        type_status: TypeStatus::NotFinite { coordinate: 0 },
        diagonal_model: None,
        constants: None,
        checks: Vec::new(),
        overall: false,
    };
    let report = match conjecture_bounds(u) {
        Ok(r) => r,
        Err(Error::NotFiniteType(coordinate)) => {
            cert.type_status = TypeStatus::NotFinite { coordinate };
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };
    let (w, model) = build_weights(u, &report)?;

    let mut checks = check_resolve(&model, &w, plan)?;
    checks.push(check_dominance(u, &model, plan)?);
    checks.extend(check_weight_family(u, &w, plan)?);

    let measured =
        checks.iter().filter(|r| r.kind == CheckKind::StripBound).map(|r| r.value).fold(f64::INFINITY, f64::min);
    cert.constants = Some(Constants {
        c: w.c(),
        d: w.d(),
        big_c: w.big_c(),
        big_m: w.cutoff().derivative_bound(),
        c_prime: w.hinge().uniform_bound(),
        c_dblprime_bound: strip_bound(u, &w, plan.radius),
        c_dblprime_measured: measured,
    });
    cert.diagonal_model =
        Some(DiagonalModel { pure_powers: report.pure_powers.clone(), weights: w.weights().to_vec() });
    cert.overall = checks.iter().all(|r| r.passed);
    cert.checks = checks;
    cert.type_status = TypeStatus::Finite(report);
    Ok(cert)
}
