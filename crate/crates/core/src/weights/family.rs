use num_complex::Complex;

use crate::error::{Error, Result};
use crate::finite_type::Rational;
use crate::hermitian::HermitianForm;
use crate::monomial::{AmbientPoint, MixedTerm};
use crate::scalar::Scalar;

use super::cutoff::Cutoff;
use super::hinge::Hinge;

/// Below this value of `r/δ` the factor `e^{r/δ}` is taken to be exactly 0.
pub const EXP_SATURATION: f64 = -700.0;

/// A validated shell width `δ ∈ (0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Delta<T>(T);

impl<T: Scalar> Delta<T> {
    pub fn new(delta: T) -> Result<Self> {
        if delta > T::zero() && delta <= T::one() {
            Ok(Self(delta))
        } else {
            Err(Error::DeltaOutOfRange(format!("{delta}")))
        }
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }

    /// `δ^{-2ε}`, evaluated as `exp(-2ε ln δ)`.
    pub fn inverse_power(self, epsilon: Rational) -> T {
        (-T::lit(2.0) * rational_to(epsilon) * self.0.ln()).exp()
    }

    /// `τ(δ) = δ^{1/(2m)}`.
    pub fn tau(self, m: u32) -> T {
        self.0.powf(T::one() / T::from_u32(2 * m).expect("u32 fits"))
    }
}

pub fn rational_to<T: Scalar>(q: Rational) -> T {
    T::from_u64(*q.numer()).expect("fits") / T::from_u64(*q.denom()).expect("fits")
}

/// `τ_i(δ) = δ^{1/(2 m_i)}` for `0 < δ ≤ 1`.
pub fn tau<T: Scalar>(delta: T, m: u32) -> Result<T> {
    Ok(Delta::new(delta)?.tau(m))
}

/// The weight family built from the pure powers `m_i` of a diagonal model
/// `Σ κ_i |z_i|^{2 m_i}`.
///
/// `ρ_δ(z) = c Σ_i χ(|z_i|² / τ_i²)`, `λ̃_δ = e^{r/δ} + e^{-3} ρ_δ`, and
/// `λ_δ = p ∘ λ̃_δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFamily<T> {
    pure_powers: Vec<u32>,
    weights: Vec<T>,
    cutoff: Cutoff<T>,
    hinge: Hinge<T>,
    c: T,
    d: T,
    big_c: T,
    epsilon: Rational,
}

impl<T: Scalar> WeightFamily<T> {
    /// Constants for the unit-coefficient model `Σ |z_i|^{2 m_i}`.
    pub fn choose_constants(pure_powers: &[u32], cutoff: Cutoff<T>) -> Self {
        Self::with_weights(pure_powers, &vec![T::one(); pure_powers.len()], cutoff)
    }

    /// Constants for `Σ κ_i |z_i|^{2 m_i}`:
    /// `c = min(κ_min 2^{-max m} / M, 1/n)`, `d = min_i(κ_i 2^{1-m_i} - cM)`,
    /// `C = min(1, κ_min, c, d)`, `ε = 1 / (2 max m)`.
    pub fn with_weights(pure_powers: &[u32], weights: &[T], cutoff: Cutoff<T>) -> Self {
        assert!(!pure_powers.is_empty() && pure_powers.iter().all(|&m| m >= 1));
        assert_eq!(pure_powers.len(), weights.len());
        let n = T::from_usize_lossy(pure_powers.len());
        let m_max = *pure_powers.iter().max().expect("nonempty");
        let kappa_min = weights.iter().copied().fold(T::infinity(), T::min);
        assert!(kappa_min > T::zero(), "diagonal weights must be positive");
        let big_m = cutoff.derivative_bound();
        let two = T::lit(2.0);
        let c = (kappa_min * two.powi(-(m_max as i32)) / big_m).min(n.recip());
        let d = pure_powers
            .iter()
            .zip(weights)
            .map(|(&m, &k)| k * two.powi(1 - m as i32) - c * big_m)
            .fold(T::infinity(), T::min);
        assert!(d > T::zero(), "middle-regime constant must be positive");
        let big_c = T::one().min(kappa_min).min(c).min(d);
        Self {
            pure_powers: pure_powers.to_vec(),
            weights: weights.to_vec(),
            cutoff,
            hinge: Hinge::new(),
            c,
            d,
            big_c,
            epsilon: Rational::new(1, 2 * u64::from(m_max)),
        }
    }

    pub fn dim(&self) -> usize {
        self.pure_powers.len()
    }

    pub fn pure_powers(&self) -> &[u32] {
        &self.pure_powers
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn cutoff(&self) -> &Cutoff<T> {
        &self.cutoff
    }

    pub fn hinge(&self) -> &Hinge<T> {
        &self.hinge
    }

    pub fn c(&self) -> T {
        self.c
    }

    pub fn d(&self) -> T {
        self.d
    }

    /// The resolve constant `C = min(1, κ_min, c, d)`.
    pub fn big_c(&self) -> T {
        self.big_c
    }

    pub fn epsilon(&self) -> Rational {
        self.epsilon
    }

    fn t_i(&self, z: Complex<T>, i: usize, delta: Delta<T>) -> (T, T) {
        let tau2 = delta.get().powf(T::one() / T::from_u32(self.pure_powers[i]).expect("fits"));
        (z.norm_sqr() / tau2, tau2)
    }

    /// `ρ_δ(z) ∈ [0, n c]`.
    pub fn rho(&self, z: &[Complex<T>], delta: Delta<T>) -> T {
        (0..self.dim()).fold(T::zero(), |acc, i| {
            let (t, _) = self.t_i(z[i], i, delta);
            acc + self.cutoff.value(t)
        }) * self.c
    }

    /// `∂ρ_δ/∂z_i = c χ'(t_i) z̄_i / τ_i²`.
    pub fn rho_gradient(&self, z: &[Complex<T>], delta: Delta<T>) -> Vec<Complex<T>> {
        (0..self.dim())
            .map(|i| {
                let (t, tau2) = self.t_i(z[i], i, delta);
                z[i].conj() * (self.c * self.cutoff.eval(t).1 / tau2)
            })
            .collect()
    }

    /// Diagonal entries `c χ'(t_i)/τ_i² + c χ''(t_i) |z_i|²/τ_i⁴`.
    pub fn rho_hessian_diag(&self, z: &[Complex<T>], delta: Delta<T>) -> Vec<T> {
        (0..self.dim())
            .map(|i| {
                let (t, tau2) = self.t_i(z[i], i, delta);
                let (_, d1, d2) = self.cutoff.eval(t);
                self.c * (d1 + d2 * t) / tau2
            })
            .collect()
    }

    pub fn rho_hessian(&self, z: &[Complex<T>], delta: Delta<T>) -> HermitianForm<T> {
        HermitianForm::diagonal(&self.rho_hessian_diag(z, delta))
    }

    /// `∂∂̄(u/δ + ρ_δ)` at `z`.
    pub fn resolve_hessian(&self, u: &MixedTerm<T>, z: &[Complex<T>], delta: Delta<T>) -> HermitianForm<T> {
        u.levi_form(z).scale(delta.get().recip()).add(&self.rho_hessian(z, delta))
    }

    /// Diagonal entries of the resolve form for the model `Σ κ_i |z_i|^{2m_i}`
    /// itself; `exact = false` drops the `m_i²` factor of the Levi term.
    pub fn diagonal_entries(&self, z: &[Complex<T>], delta: Delta<T>, exact: bool) -> Vec<T> {
        let rho = self.rho_hessian_diag(z, delta);
        (0..self.dim())
            .map(|i| {
                let m = self.pure_powers[i];
                let r2 = z[i].norm_sqr();
                let mut levi = self.weights[i] * r2.powi(m as i32 - 1);
                if exact {
                    levi = levi * T::from_u32(m * m).expect("fits");
                }
                levi / delta.get() + rho[i]
            })
            .collect()
    }

    /// Scaled entry `a_i δ^{1/m_i}` at `|z_i| = s τ_i`; independent of `δ`.
    pub fn scaled_entry(&self, i: usize, s: T, exact: bool) -> T {
        let m = self.pure_powers[i];
        let t = s * s;
        let (_, d1, d2) = self.cutoff.eval(t);
        let mut levi = self.weights[i] * t.powi(m as i32 - 1);
        if exact {
            levi = levi * T::from_u32(m * m).expect("fits");
        }
        levi + self.c * (d1 + d2 * t)
    }

    fn exp_ratio(r: T, delta: Delta<T>) -> T {
        let x = r / delta.get();
        if x < T::lit(EXP_SATURATION) {
            T::zero()
        } else {
            x.exp()
        }
    }

    /// `λ̃_δ = e^{r/δ} + e^{-3} ρ_δ`.
    pub fn lambda_tilde(&self, u: &MixedTerm<T>, p: &AmbientPoint<T>, delta: Delta<T>) -> T {
        let r = u.defining_function(p);
        Self::exp_ratio(r, delta) + T::lit(-3.0).exp() * self.rho(&p.z, delta)
    }

    /// Holomorphic gradient of `λ̃_δ` in `C^{n+1}`.
    pub fn lambda_tilde_gradient(&self, u: &MixedTerm<T>, p: &AmbientPoint<T>, delta: Delta<T>) -> Vec<Complex<T>> {
        let e = Self::exp_ratio(u.defining_function(p), delta) / delta.get();
        let w = u.ambient_holomorphic_gradient(p);
        let grad_rho = self.rho_gradient(&p.z, delta);
        let k = T::lit(-3.0).exp();
        w.iter()
            .enumerate()
            .map(|(i, wi)| {
                let base = *wi * e;
                if i < self.dim() {
                    base + grad_rho[i] * k
                } else {
                    base
                }
            })
            .collect()
    }

    /// `e^{r/δ}(w w*/δ² + (H_u ⊕ 0)/δ) + e^{-3}(H_ρ ⊕ 0)`.
    pub fn lambda_tilde_hessian(&self, u: &MixedTerm<T>, p: &AmbientPoint<T>, delta: Delta<T>) -> HermitianForm<T> {
        let e = Self::exp_ratio(u.defining_function(p), delta);
        let dl = delta.get();
        let w = u.ambient_holomorphic_gradient(p);
        let levi = u.levi_form(&p.z).scale(e / dl).pad_zero(1);
        let levi = levi.add_rank_one(e / (dl * dl), &w);
        levi.add(&self.rho_hessian(&p.z, delta).scale(T::lit(-3.0).exp()).pad_zero(1))
    }

    /// `λ_δ = p(λ̃_δ)`.
    pub fn lambda(&self, u: &MixedTerm<T>, p: &AmbientPoint<T>, delta: Delta<T>) -> T {
        self.hinge.value(self.lambda_tilde(u, p, delta))
    }

    /// `p''(λ̃) g g* + p'(λ̃) H_λ̃`; exactly zero wherever `λ̃ ≤ e^{-2}`.
    pub fn lambda_hessian(&self, u: &MixedTerm<T>, p: &AmbientPoint<T>, delta: Delta<T>) -> HermitianForm<T> {
        let lt = self.lambda_tilde(u, p, delta);
        let (_, d1, d2) = self.hinge.eval(lt);
        if d1 == T::zero() && d2 == T::zero() {
            return HermitianForm::zeros(self.dim() + 1);
        }
        let g = self.lambda_tilde_gradient(u, p, delta);
        self.lambda_tilde_hessian(u, p, delta).scale(d1).add_rank_one(d2, &g)
    }
}
