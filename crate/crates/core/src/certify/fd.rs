//! Finite-difference complex Hessians, the independent oracle for every
//! analytic Hessian assembly.
//!
//! `∂²F/∂z_i∂z̄_k = ¼(F_{x_i x_k} + F_{y_i y_k}) + ¼ i (F_{x_i y_k} − F_{y_i x_k})`,
//! with each real second derivative taken from a 4-point central stencil.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::hermitian::HermitianForm;
use crate::monomial::{AmbientPoint, MixedTerm};
use crate::scalar::Scalar;
use crate::weights::{Delta, WeightFamily};

/// Complex Hessian of a real function of `x = (x_1, y_1, …, x_d, y_d)`.
pub fn fd_hessian_real<T: Scalar>(f: impl Fn(&[T]) -> T, x0: &[T], h: T) -> HermitianForm<T> {
    assert!(h > T::zero(), "step must be positive");
    assert!(x0.len().is_multiple_of(2));
    let dim = x0.len() / 2;
    let four_h2 = T::lit(4.0) * h * h;
    let mut x = x0.to_vec();
    let mut d2 = |a: usize, b: usize| {
        let mut s = T::zero();
        for (sa, sb, sign) in [(1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)] {
            x.copy_from_slice(x0);
            x[a] = x[a] + T::lit(sa) * h;
            x[b] = x[b] + T::lit(sb) * h;
            s = s + T::lit(sign) * f(&x);
        }
        s / four_h2
    };
    let quarter = T::lit(0.25);
    HermitianForm::from_upper(dim, |i, k| {
        let (xi, yi, xk, yk) = (2 * i, 2 * i + 1, 2 * k, 2 * k + 1);
        let re = quarter * (d2(xi, xk) + d2(yi, yk));
        let im = if i == k { T::zero() } else { quarter * (d2(xi, yk) - d2(yi, xk)) };
        Complex::new(re, im)
    })
}

/// Complex Hessian in `C^{n+1}` of a field on ambient points.
pub fn fd_hessian<T: Scalar>(field: impl Fn(&AmbientPoint<T>) -> T, p: &AmbientPoint<T>, h: T) -> HermitianForm<T> {
    fd_hessian_real(|x| field(&AmbientPoint::from_real(x)), &p.to_real(), h)
}

/// Finite-difference Levi form of `u` at `z ∈ C^n`.
pub fn fd_levi_form<T: Scalar>(u: &MixedTerm<T>, z: &[Complex<T>], h: T) -> HermitianForm<T> {
    let x0: Vec<T> = z.iter().flat_map(|c| [c.re, c.im]).collect();
    fd_hessian_real(
        |x| {
            let zz: Vec<_> = x.chunks(2).map(|c| Complex::new(c[0], c[1])).collect();
            u.eval(&zz)
        },
        &x0,
        h,
    )
}

/// `max |A − B| / max(|A|_max, |B|_max)`, or `0` when both vanish.
pub fn relative_gap<T: Scalar>(analytic: &HermitianForm<T>, numeric: &HermitianForm<T>) -> T {
    scaled_gap(analytic, numeric, T::zero())
}

/// `max |A − B| / max(|A|_max, |B|_max, floor)`, with `floor` the natural
/// scale of the field's Hessian.
pub fn scaled_gap<T: Scalar>(analytic: &HermitianForm<T>, numeric: &HermitianForm<T>, floor: T) -> T {
    let scale = analytic.max_norm().max(numeric.max_norm()).max(floor);
    if scale == T::zero() {
        return T::zero();
    }
    analytic.max_abs_diff(numeric) / scale
}

/// Worst relative gaps between analytic and finite-difference Hessians.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FdAudit {
    pub samples: usize,
    pub levi: f64,
    pub rho: f64,
    pub lambda_tilde: f64,
    pub lambda: f64,
}

impl FdAudit {
    pub fn worst(&self) -> f64 {
        self.levi.max(self.rho).max(self.lambda_tilde).max(self.lambda)
    }
}

/// Compares all four analytic Hessians against [`fd_hessian`] at `samples`
/// seeded points per `δ`.
///
/// Levi forms are sampled at `|z_i| ∈ [0.05, 0.5]` with step `1e-5`. The
/// weight Hessians are sampled at `|z_i| = s τ_i`, `s ∈ [0, 1.5]`, on levels
/// `r ∈ (−0.95δ, 0.95δ)`, where `λ̃_δ > e^{-2}` keeps the hinge smooth; the
/// step is `3e-4 · min(δ, τ_min)` for `λ̃_δ`, whose error is roundoff, and
/// `1e-4 · min(δ, τ_min)` for `λ_δ`, whose error is truncation at the hinge;
/// `ρ_δ` uses `1e-5 τ_min` because its cutoff transition is steep. Gaps of `ρ_δ` are measured against its natural
/// scale `c / τ_min²`, since its Hessian vanishes for `|z_i| ≥ τ_i`.
pub fn audit_hessians(
    u: &MixedTerm<f64>,
    w: &WeightFamily<f64>,
    deltas: &[f64],
    samples: usize,
    seed: u64,
) -> Result<FdAudit> {
    let n = u.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phase = |rng: &mut ChaCha8Rng, r: f64| Complex::from_polar(r, rng.gen::<f64>() * std::f64::consts::TAU);
    let mut audit = FdAudit { samples: 0, ..FdAudit::default() };
    for _ in 0..samples {
        let z: Vec<_> = (0..n)
            .map(|_| {
                let r = rng.gen_range(0.05..0.5);
                phase(&mut rng, r)
            })
            .collect();
        audit.levi = audit.levi.max(relative_gap(&u.levi_form(&z), &fd_levi_form(u, &z, 1e-5)));
    }
    for &d in deltas {
        let delta = Delta::new(d)?;
        let taus: Vec<f64> = w.pure_powers().iter().map(|&m| delta.tau(m)).collect();
        let tau_min = taus.iter().copied().fold(f64::INFINITY, f64::min);
        let scale = d.min(tau_min);
        for _ in 0..samples {
            let z: Vec<_> = taus
                .iter()
                .map(|&t| {
                    let s = rng.gen_range(0.0..1.5);
                    phase(&mut rng, s * t)
                })
                .collect();
            let level = rng.gen_range(-0.95..0.95) * d;
            let p = AmbientPoint::on_level(u, z, level);
            let rho = fd_hessian(|q: &AmbientPoint<f64>| w.rho(&q.z, delta), &p, 1e-5 * tau_min);
            let floor = w.c() / (tau_min * tau_min);
            audit.rho = audit.rho.max(scaled_gap(&w.rho_hessian(&p.z, delta).pad_zero(1), &rho, floor));
            let lt = fd_hessian(|q: &AmbientPoint<f64>| w.lambda_tilde(u, q, delta), &p, 3e-4 * scale);
            audit.lambda_tilde = audit.lambda_tilde.max(relative_gap(&w.lambda_tilde_hessian(u, &p, delta), &lt));
            let l = fd_hessian(|q: &AmbientPoint<f64>| w.lambda(u, q, delta), &p, 1e-4 * scale);
            audit.lambda = audit.lambda.max(relative_gap(&w.lambda_hessian(u, &p, delta), &l));
        }
    }
    audit.samples = samples;
    Ok(audit)
}
