//! The check battery: resolve inequality on the diagonal model, Levi-form
//! dominance, and the plurisubharmonicity / strip / flatness / uniform-bound
//! checks of the weight family on the full rigid domain.
//!
//! Every check evaluates one scalar per sample point, compares the worst
//! (smallest) value against a bound, and keeps the point as a witness.
//! Evaluation is parallel; the reduction runs sequentially over the ordered
//! result vector, so the chosen witness never depends on scheduling.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::Result;
use crate::monomial::{AmbientPoint, MixedTerm};
use crate::weights::{Delta, WeightFamily};

use super::eigen::hermitian_min_eigenvalue;
use super::plan::SamplePlan;

/// Relative slack on the resolve constant `C`.
pub const RESOLVE_SLACK: f64 = 1e-6;
/// Floor for "positive semidefinite", relative to `1 + |trace|`.
pub const PSD_FLOOR: f64 = 1e-9;
/// Relative slack on the strip constant.
pub const STRIP_SLACK: f64 = 1e-6;

/// Scaled radii `|z_i| / τ_i` always sampled on the coordinate axes.
const AXIS_SCALES: [f64; 14] =
    [0.25, 0.5, 0.6, 0.65, std::f64::consts::FRAC_1_SQRT_2, 0.75, 0.8, 0.85, 0.9, 0.95, 1.0, 1.1, 1.5, 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    /// `min-eig ∂∂̄(u/δ + ρ_δ) · δ^{2ε} ≥ C` on the diagonal model.
    Resolve,
    /// Same with the diagonal entries written without the `m_i²` factor.
    ResolvePaperForm,
    /// `min-eig(L_{u_1} − L_{u_2}) ≥ −1e-9 (1 + |trace|)`.
    Dominance,
    /// `min-eig ∂∂̄λ_δ ≥ −1e-9 (1 + |trace|)` on `Ω_δ`.
    Plurisubharmonic,
    /// `min-eig ∂∂̄λ_δ · δ^{2ε} ≥ C''` on the strip `S_δ`.
    StripBound,
    /// `λ_δ = 0` and `∂∂̄λ_δ = 0` exactly at `r ≤ −3δ`.
    Flatness,
    /// `λ_δ ≤ C'`.
    UniformBound,
}

impl CheckKind {
    pub const ALL: [CheckKind; 7] = [
        CheckKind::Resolve,
        CheckKind::ResolvePaperForm,
        CheckKind::Dominance,
        CheckKind::Plurisubharmonic,
        CheckKind::StripBound,
        CheckKind::Flatness,
        CheckKind::UniformBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Resolve => "resolve",
            CheckKind::ResolvePaperForm => "resolve_paper_form",
            CheckKind::Dominance => "dominance",
            CheckKind::Plurisubharmonic => "plurisubharmonic",
            CheckKind::StripBound => "strip_bound",
            CheckKind::Flatness => "flatness",
            CheckKind::UniformBound => "uniform_bound",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// A sample point; `z_last` is present for checks on the ambient domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub z: Vec<Complex<f64>>,
    pub z_last: Option<Complex<f64>>,
}

impl Witness {
    fn ambient(&self) -> AmbientPoint<f64> {
        AmbientPoint::new(self.z.clone(), self.z_last.unwrap_or_default())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub kind: CheckKind,
    pub delta: Option<f64>,
    pub passed: bool,
    /// Value at the witness.
    pub value: f64,
    pub bound: f64,
    /// `value − bound`; negative exactly when the check fails.
    pub margin: f64,
    pub witness: Option<Witness>,
}

impl CheckRecord {
    /// Reduces `(value, witness)` samples to the worst one. A `NaN` value is
    /// always worst and always fails.
    pub fn from_samples(kind: CheckKind, delta: Option<f64>, bound: f64, samples: Vec<(f64, Witness)>) -> Self {
        let mut worst: Option<usize> = None;
        for (k, (v, _)) in samples.iter().enumerate() {
            worst = match worst {
                Some(j) if samples[j].0.is_nan() => Some(j),
                Some(j) if !(v.is_nan() || *v < samples[j].0) => Some(j),
                _ => Some(k),
            };
        }
        match worst {
            None => {
                Self { kind, delta, passed: true, value: f64::INFINITY, bound, margin: f64::INFINITY, witness: None }
            }
            Some(j) => {
                let (value, witness) = samples.into_iter().nth(j).expect("index in range");
                let margin = value - bound;
                Self { kind, delta, passed: margin >= 0.0, value, bound, margin, witness: Some(witness) }
            }
        }
    }
}

fn delta_scale(w: &WeightFamily<f64>, delta: Delta<f64>) -> f64 {
    delta.inverse_power(w.epsilon()).recip()
}

pub fn resolve_bound(w: &WeightFamily<f64>) -> f64 {
    w.big_c() * (1.0 - RESOLVE_SLACK)
}

pub fn resolve_value(
    model: &MixedTerm<f64>,
    w: &WeightFamily<f64>,
    z: &[Complex<f64>],
    delta: Delta<f64>,
) -> Result<f64> {
    Ok(hermitian_min_eigenvalue(&w.resolve_hessian(model, z, delta))? * delta_scale(w, delta))
}

pub fn resolve_paper_value(w: &WeightFamily<f64>, z: &[Complex<f64>], delta: Delta<f64>) -> f64 {
    let lo = w.diagonal_entries(z, delta, false).into_iter().fold(f64::INFINITY, f64::min);
    lo * delta_scale(w, delta)
}

pub fn dominance_value(u1: &MixedTerm<f64>, u2: &MixedTerm<f64>, z: &[Complex<f64>]) -> Result<f64> {
    let diff = u1.levi_form(z).sub(&u2.levi_form(z));
    Ok(hermitian_min_eigenvalue(&diff)? / (1.0 + diff.trace().abs()))
}

pub fn plurisubharmonic_value(
    u: &MixedTerm<f64>,
    w: &WeightFamily<f64>,
    p: &AmbientPoint<f64>,
    delta: Delta<f64>,
) -> Result<f64> {
    let h = w.lambda_hessian(u, p, delta);
    Ok(hermitian_min_eigenvalue(&h)? / (1.0 + h.trace().abs()))
}

pub fn strip_value(u: &MixedTerm<f64>, w: &WeightFamily<f64>, p: &AmbientPoint<f64>, delta: Delta<f64>) -> Result<f64> {
    Ok(hermitian_min_eigenvalue(&w.lambda_hessian(u, p, delta))? * delta_scale(w, delta))
}

/// `−(|λ_δ| + |∂∂̄λ_δ|_max)`: zero exactly when both vanish.
pub fn flatness_value(u: &MixedTerm<f64>, w: &WeightFamily<f64>, p: &AmbientPoint<f64>, delta: Delta<f64>) -> f64 {
    -(w.lambda(u, p, delta).abs() + w.lambda_hessian(u, p, delta).max_norm())
}

/// `1 − λ_δ / C'`, the slack in `|λ_δ / C'| ≤ 1`.
pub fn uniform_value(u: &MixedTerm<f64>, w: &WeightFamily<f64>, p: &AmbientPoint<f64>, delta: Delta<f64>) -> f64 {
    1.0 - w.lambda(u, p, delta) / w.hinge().uniform_bound()
}

/// `G² = Σ_i (Σ_j |c_j|² α_{j,i} R^{2|α_j| − 1})²`, a bound for `|∂u|²` on `U`.
pub fn gradient_bound_sq(u: &MixedTerm<f64>, radius: f64) -> f64 {
    (0..u.dim())
        .map(|i| {
            u.generators()
                .iter()
                .map(|g| {
                    let a = g.exponents.as_slice();
                    let deg: u32 = a.iter().sum();
                    g.coefficient.norm_sqr() * f64::from(a[i]) * radius.powi(2 * deg as i32 - 1)
                })
                .sum::<f64>()
                .powi(2)
        })
        .sum()
}

/// Lower bound for the strip constant:
/// `p'(e^{-1}) · e^{-3} C · σ²(G) · (1 − slack)`.
///
/// On the strip `λ̃_δ ≥ e^{-1}`, so `∂∂̄λ_δ ≥ p'(e^{-1}) (e^{-3} A ⊕ 0 + t w w*)`
/// with `A ≥ C δ^{-2ε}` and `w = (∂u, 1)`. For `t` large, the smallest
/// eigenvalue of `A ⊕ 0 + t w w*` is at least `σ²(G) · min-eig A`, where
/// `σ²(G) = ((2 + G²) − sqrt(G²(4 + G²))) / 2` is the smallest eigenvalue of
/// `[[1 + G², G], [G, 1]]`.
pub fn strip_bound(u: &MixedTerm<f64>, w: &WeightFamily<f64>, radius: f64) -> f64 {
    let b = gradient_bound_sq(u, radius);
    let sigma2 = ((2.0 + b) - (b * (4.0 + b)).sqrt()) / 2.0;
    w.hinge().strip_slope() * (-3.0f64).exp() * w.big_c() * sigma2 * (1.0 - STRIP_SLACK)
}

/// Minimizer over `s ∈ [1/√2, 1]` of the scaled diagonal entry of coordinate
/// `i`; coarse grid then golden-section refinement.
pub fn transition_minimizer(w: &WeightFamily<f64>, i: usize, exact: bool) -> f64 {
    const GRID: usize = 2000;
    let (lo, hi) = (std::f64::consts::FRAC_1_SQRT_2, 1.0);
    let f = |s: f64| w.scaled_entry(i, s, exact);
    let step = (hi - lo) / GRID as f64;
    let best =
        (0..=GRID).map(|k| lo + step * k as f64).fold((lo, f(lo)), |acc, s| if f(s) < acc.1 { (s, f(s)) } else { acc });
    let (mut a, mut b) = ((best.0 - step).max(lo), (best.0 + step).min(hi));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let (x1, x2) = (b - g * (b - a), a + g * (b - a));
        if f(x1) <= f(x2) {
            b = x2;
        } else {
            a = x1;
        }
    }
    let s = 0.5 * (a + b);
    if f(s) <= best.1 {
        s
    } else {
        best.0
    }
}

/// Per-coordinate radii `(axis, grid)` at which the weight family changes
/// regime at this `δ`.
fn regime_anchors(w: &WeightFamily<f64>, minimizers: &[[f64; 2]], delta: Delta<f64>) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let mut axis = Vec::with_capacity(w.dim());
    let mut grid = Vec::with_capacity(w.dim());
    for (i, &m) in w.pure_powers().iter().enumerate() {
        let tau = delta.tau(m);
        let mut a: Vec<f64> = AXIS_SCALES.iter().chain(minimizers[i].iter()).map(|s| s * tau).collect();
        a.sort_by(f64::total_cmp);
        a.dedup();
        axis.push(a);
        grid.push([std::f64::consts::FRAC_1_SQRT_2, 1.0, minimizers[i][0]].iter().map(|s| s * tau).collect());
    }
    (axis, grid)
}

fn minimizers(w: &WeightFamily<f64>) -> Vec<[f64; 2]> {
    (0..w.dim()).map(|i| [transition_minimizer(w, i, true), transition_minimizer(w, i, false)]).collect()
}

fn deltas(plan: &SamplePlan) -> Result<Vec<Delta<f64>>> {
    plan.validate()?;
    plan.deltas.iter().map(|&d| Delta::new(d)).collect()
}

fn plan_points(
    plan: &SamplePlan,
    w: &WeightFamily<f64>,
    mins: &[[f64; 2]],
    delta: Delta<f64>,
    stream: u64,
) -> Vec<Vec<Complex<f64>>> {
    let (axis, grid) = regime_anchors(w, mins, delta);
    plan.points(w.dim(), &axis, &grid, stream)
}

/// Resolve inequality on the diagonal model `model` for which `w` was built;
/// one `resolve` and one `resolve_paper_form` record per `δ`.
pub fn check_resolve(model: &MixedTerm<f64>, w: &WeightFamily<f64>, plan: &SamplePlan) -> Result<Vec<CheckRecord>> {
    let mins = minimizers(w);
    let bound = resolve_bound(w);
    let mut out = Vec::new();
    for (k, delta) in deltas(plan)?.into_iter().enumerate() {
        let pts = plan_points(plan, w, &mins, delta, k as u64);
        let exact = pts.par_iter().map(|z| resolve_value(model, w, z, delta)).collect::<Result<Vec<_>>>()?;
        let paper: Vec<f64> = pts.par_iter().map(|z| resolve_paper_value(w, z, delta)).collect();
        let wit =
            |v: Vec<f64>| v.into_iter().zip(&pts).map(|(v, z)| (v, Witness { z: z.clone(), z_last: None })).collect();
        out.push(CheckRecord::from_samples(CheckKind::Resolve, Some(delta.get()), bound, wit(exact)));
        out.push(CheckRecord::from_samples(CheckKind::ResolvePaperForm, Some(delta.get()), bound, wit(paper)));
    }
    Ok(out)
}

/// Levi-form dominance `L_{u_1} ≥ L_{u_2}` on the `δ`-independent plan points.
pub fn check_dominance(u1: &MixedTerm<f64>, u2: &MixedTerm<f64>, plan: &SamplePlan) -> Result<CheckRecord> {
    plan.validate()?;
    if u1.dim() != u2.dim() {
        return Err(crate::error::Error::DimensionMismatch { expected: u1.dim(), got: u2.dim() });
    }
    let pts = plan.points::<f64>(u1.dim(), &[], &[], 0);
    let values = pts.par_iter().map(|z| dominance_value(u1, u2, z)).collect::<Result<Vec<_>>>()?;
    let samples = values.into_iter().zip(pts).map(|(v, z)| (v, Witness { z, z_last: None })).collect();
    Ok(CheckRecord::from_samples(CheckKind::Dominance, None, -PSD_FLOOR, samples))
}

struct LevelSample {
    psh: Option<f64>,
    strip: Option<f64>,
    flat: Option<f64>,
    uniform: f64,
}

/// Plurisubharmonicity, strip bound, flatness and uniform bound of `λ_δ`
/// on the rigid domain with mixed term `u`; four records per `δ`.
pub fn check_weight_family(u: &MixedTerm<f64>, w: &WeightFamily<f64>, plan: &SamplePlan) -> Result<Vec<CheckRecord>> {
    let mins = minimizers(w);
    let strip_lo = strip_bound(u, w, plan.radius);
    let mut out = Vec::new();
    for (k, delta) in deltas(plan)?.into_iter().enumerate() {
        let pts = plan_points(plan, w, &mins, delta, k as u64);
        let levels: Vec<(f64, u8)> = plan
            .strip_levels
            .iter()
            .map(|&l| (l, 0))
            .chain(plan.shell_levels.iter().map(|&l| (l, 1)))
            .chain(plan.flat_levels.iter().map(|&l| (l, 2)))
            .collect();
        let tasks: Vec<(usize, f64, u8)> =
            levels.iter().flat_map(|&(l, tag)| (0..pts.len()).map(move |j| (j, l, tag))).collect();
        let results = tasks
            .par_iter()
            .map(|&(j, level, tag)| -> Result<(AmbientPoint<f64>, LevelSample)> {
                let p = AmbientPoint::on_level(u, pts[j].clone(), level * delta.get());
                let uniform = uniform_value(u, w, &p, delta);
                let s = match tag {
                    0 => {
                        let h = w.lambda_hessian(u, &p, delta);
                        let lo = hermitian_min_eigenvalue(&h)?;
                        LevelSample {
                            psh: Some(lo / (1.0 + h.trace().abs())),
                            strip: Some(lo * delta_scale(w, delta)),
                            flat: None,
                            uniform,
                        }
                    }
                    1 => LevelSample {
                        psh: Some(plurisubharmonic_value(u, w, &p, delta)?),
                        strip: None,
                        flat: None,
                        uniform,
                    },
                    _ => LevelSample { psh: None, strip: None, flat: Some(flatness_value(u, w, &p, delta)), uniform },
                };
                Ok((p, s))
            })
            .collect::<Result<Vec<_>>>()?;

        let pick = |f: &dyn Fn(&LevelSample) -> Option<f64>| -> Vec<(f64, Witness)> {
            results
                .iter()
                .filter_map(|(p, s)| f(s).map(|v| (v, Witness { z: p.z.clone(), z_last: Some(p.z_last) })))
                .collect()
        };
        let d = Some(delta.get());
        out.push(CheckRecord::from_samples(CheckKind::Plurisubharmonic, d, -PSD_FLOOR, pick(&|s| s.psh)));
        out.push(CheckRecord::from_samples(CheckKind::StripBound, d, strip_lo, pick(&|s| s.strip)));
        out.push(CheckRecord::from_samples(CheckKind::Flatness, d, 0.0, pick(&|s| s.flat)));
        out.push(CheckRecord::from_samples(CheckKind::UniformBound, d, 0.0, pick(&|s| Some(s.uniform))));
    }
    Ok(out)
}

/// Recomputes a record's margin from its witness and `δ` alone.
///
/// `u` is the mixed term under test, `model` the diagonal model, `w` the
/// family built for it. For dominance records `u` and `model` play the roles
/// of `u_1` and `u_2`.
pub fn reevaluate(
    record: &CheckRecord,
    u: &MixedTerm<f64>,
    model: &MixedTerm<f64>,
    w: &WeightFamily<f64>,
) -> Result<f64> {
    let Some(wit) = &record.witness else {
        return Ok(record.margin);
    };
    let delta = record.delta.map(Delta::new).transpose()?;
    let need = || delta.ok_or_else(|| crate::error::Error::DeltaOutOfRange("missing".into()));
    let value = match record.kind {
        CheckKind::Resolve => resolve_value(model, w, &wit.z, need()?)?,
        CheckKind::ResolvePaperForm => resolve_paper_value(w, &wit.z, need()?),
        CheckKind::Dominance => dominance_value(u, model, &wit.z)?,
        CheckKind::Plurisubharmonic => plurisubharmonic_value(u, w, &wit.ambient(), need()?)?,
        CheckKind::StripBound => strip_value(u, w, &wit.ambient(), need()?)?,
        CheckKind::Flatness => flatness_value(u, w, &wit.ambient(), need()?),
        CheckKind::UniformBound => uniform_value(u, w, &wit.ambient(), need()?),
    };
    Ok(value - record.bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::Cutoff;

    fn small_plan() -> SamplePlan {
        SamplePlan {
            radial_points: 16,
            phase_points: 2,
            random_points: 16,
            deltas: vec![1e-2, 1e-4, 1e-6],
            ..SamplePlan::default()
        }
    }

    fn w(m: &[u32]) -> WeightFamily<f64> {
        WeightFamily::choose_constants(m, Cutoff::build())
    }

    #[test]
    fn names_round_trip() {
        for k in CheckKind::ALL {
            assert_eq!(CheckKind::from_name(k.name()), Some(k));
        }
        assert_eq!(CheckKind::from_name("nope"), None);
    }

    #[test]
    fn worst_sample_and_nan() {
        let wit = || Witness { z: vec![], z_last: None };
        let r =
            CheckRecord::from_samples(CheckKind::Flatness, None, 0.0, vec![(1.0, wit()), (-2.0, wit()), (-2.0, wit())]);
        assert_eq!((r.value, r.passed), (-2.0, false));
        let r = CheckRecord::from_samples(
            CheckKind::Flatness,
            None,
            0.0,
            vec![(1.0, wit()), (f64::NAN, wit()), (-5.0, wit())],
        );
        assert!(r.value.is_nan() && !r.passed);
        let r = CheckRecord::from_samples(CheckKind::Flatness, None, 0.0, vec![]);
        assert!(r.passed && r.witness.is_none());
    }

    #[test]
    fn resolve_passes_on_diagonal_models() {
        for m in [vec![1], vec![4], vec![2, 3]] {
            let w = w(&m);
            let model = MixedTerm::diagonal_model(&m, &vec![1.0; m.len()]).unwrap();
            for r in check_resolve(&model, &w, &small_plan()).unwrap() {
                assert!(r.passed, "{m:?} {r:?}");
            }
        }
    }

    #[test]
    fn dominance_examples() {
        let plan = small_plan();
        let u1 = MixedTerm::<f64>::from_exponents(1, &[&[1], &[2]]).unwrap();
        let u2 = MixedTerm::<f64>::from_exponents(1, &[&[1]]).unwrap();
        assert!(check_dominance(&u1, &u2, &plan).unwrap().passed);
        // |z|^4 does not dominate |z|^2 near the origin
        let r = check_dominance(&MixedTerm::from_exponents(1, &[&[2]]).unwrap(), &u2, &plan).unwrap();
        assert!(!r.passed);
        assert!(r.witness.unwrap().z[0].norm() < 0.5);
        let u3 = MixedTerm::<f64>::from_exponents(2, &[&[1, 0]]).unwrap();
        assert!(check_dominance(&u1, &u3, &plan).is_err());
    }

    #[test]
    fn weight_family_passes() {
        let u = MixedTerm::<f64>::from_exponents(2, &[&[2, 0], &[0, 3], &[1, 1]]).unwrap();
        let w = w(&[2, 3]);
        let records = check_weight_family(&u, &w, &small_plan()).unwrap();
        assert_eq!(records.len(), 12);
        for r in &records {
            assert!(r.passed, "{r:?}");
        }
        let model = MixedTerm::diagonal_model(&[2, 3], &[1.0, 1.0]).unwrap();
        for r in &records {
            let m = reevaluate(r, &u, &model, &w).unwrap();
            assert!((m - r.margin).abs() <= 1e-12 * (1.0 + r.margin.abs()));
        }
    }

    #[test]
    fn minimizer_is_interior_minimum() {
        let w = w(&[1, 3]);
        for i in 0..2 {
            for exact in [true, false] {
                let s = transition_minimizer(&w, i, exact);
                let v = w.scaled_entry(i, s, exact);
                for k in 0..=500 {
                    let t =
                        std::f64::consts::FRAC_1_SQRT_2 + k as f64 * (1.0 - std::f64::consts::FRAC_1_SQRT_2) / 500.0;
                    assert!(v <= w.scaled_entry(i, t, exact) + 1e-15);
                }
            }
        }
    }

    #[test]
    fn strip_bound_is_positive_and_shrinks_with_gradient() {
        let w = w(&[2]);
        let u = MixedTerm::<f64>::from_exponents(1, &[&[2]]).unwrap();
        let a = strip_bound(&u, &w, 0.5);
        let b = strip_bound(&u, &w, 1.0);
        assert!(a > 0.0 && b > 0.0 && b < a);
        assert!(gradient_bound_sq(&u, 0.5) == (2.0 * 0.125f64).powi(2));
    }
}
