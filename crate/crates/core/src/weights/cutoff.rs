//! The cutoff `χ`: `χ(t) = t` on `[0, 1/2]`, `χ(t) = 0` on `[1, ∞)`.
//!
//! The transition glues with the `exp(-1/x)` smoothstep:
//! `χ(t) = t · s(2(1 - t))`, `s(x) = φ(x) / (φ(x) + φ(1 - x))`,
//! `φ(x) = exp(-1/x)` for `x > 0` and `0` otherwise.

use crate::scalar::Scalar;

/// Grid size used to measure `M = sup |χ'| + |χ''|` on `[0, 1]`.
pub const DERIVATIVE_GRID: usize = 100_000;
/// Multiplier applied to the measured supremum.
pub const DERIVATIVE_SAFETY: f64 = 1.05;

/// `(φ, φ', φ'')` at `x`.
fn phi<T: Scalar>(x: T) -> (T, T, T) {
    if x <= T::zero() {
        return (T::zero(), T::zero(), T::zero());
    }
    let e = (-x.recip()).exp();
    if e == T::zero() {
        return (T::zero(), T::zero(), T::zero());
    }
    let inv = x.recip();
    let inv2 = inv * inv;
    let d1 = e * inv2;
    let d2 = e * (inv2 * inv2 - T::lit(2.0) * inv2 * inv);
    (e, d1, d2)
}

/// `(s, s', s'')` at `x`.
fn smoothstep<T: Scalar>(x: T) -> (T, T, T) {
    let (a, a1, a2) = phi(x);
    let (b, b1, b2) = phi(T::one() - x);
    // derivatives of φ(1 - x) with respect to x
    let (b1, b2) = (-b1, b2);
    let sum = a + b;
    let num1 = a1 * b - a * b1;
    let s = a / sum;
    let s1 = num1 / (sum * sum);
    let s2 = ((a2 * b - a * b2) * sum - T::lit(2.0) * num1 * (a1 + b1)) / (sum * sum * sum);
    (s, s1, s2)
}

/// The cutoff together with its measured derivative bound `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cutoff<T> {
    derivative_bound: T,
}

impl<T: Scalar> Cutoff<T> {
    /// Builds `χ` and measures `M` on a uniform grid of `[0, 1]`.
    pub fn build() -> Self {
        let k = DERIVATIVE_GRID;
        let sup = (0..=k)
            .map(|j| {
                let t = T::from_usize_lossy(j) / T::from_usize_lossy(k);
                let (_, d1, d2) = Self::eval_raw(t);
                d1.abs() + d2.abs()
            })
            .fold(T::zero(), T::max);
        Self { derivative_bound: sup * T::lit(DERIVATIVE_SAFETY) }
    }

    fn eval_raw(t: T) -> (T, T, T) {
        let half = T::lit(0.5);
        if t <= half {
            return (t, T::one(), T::zero());
        }
        if t >= T::one() {
            return (T::zero(), T::zero(), T::zero());
        }
        let two = T::lit(2.0);
        let (s, s1, s2) = smoothstep(two * (T::one() - t));
        let four = T::lit(4.0);
        (t * s, s - two * t * s1, four * t * s2 - four * s1)
    }

    /// `(χ(t), χ'(t), χ''(t))`.
    #[inline]
    pub fn eval(&self, t: T) -> (T, T, T) {
        Self::eval_raw(t)
    }

    pub fn value(&self, t: T) -> T {
        self.eval(t).0
    }

    /// `M`, an upper estimate of `sup_{[0,1]} |χ'| + |χ''|`.
    pub fn derivative_bound(&self) -> T {
        self.derivative_bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regimes() {
        let chi = Cutoff::<f64>::build();
        assert_eq!(chi.value(0.25), 0.25);
        assert_eq!(chi.eval(0.5), (0.5, 1.0, 0.0));
        assert_eq!(chi.eval(1.5), (0.0, 0.0, 0.0));
        assert_eq!(chi.eval(1.0), (0.0, 0.0, 0.0));
        let v = chi.value(0.75);
        assert!(v > 0.0 && v < 0.75);
    }

    #[test]
    fn bounded_between_zero_and_one() {
        let chi = Cutoff::<f64>::build();
        for j in 0..=2000 {
            let t = j as f64 / 1000.0;
            let v = chi.value(t);
            assert!((0.0..=1.0).contains(&v), "chi({t}) = {v}");
            assert!(v <= t);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let chi = Cutoff::<f64>::build();
        let h = 1e-5;
        for j in 1..200 {
            let t = 0.5 + j as f64 / 400.0;
            let (_, d1, d2) = chi.eval(t);
            let fd1 = (chi.value(t + h) - chi.value(t - h)) / (2.0 * h);
            let fd2 = (chi.eval(t + h).1 - chi.eval(t - h).1) / (2.0 * h);
            assert!((d1 - fd1).abs() < 1e-6 * (1.0 + d1.abs()), "t={t}");
            assert!((d2 - fd2).abs() < 1e-5 * (1.0 + d2.abs()), "t={t}");
        }
    }

    #[test]
    fn bound_dominates_dense_sample() {
        let chi = Cutoff::<f64>::build();
        let m = chi.derivative_bound();
        let worst = (0..=333_331)
            .map(|j| {
                let (_, a, b) = chi.eval(j as f64 / 333_331.0);
                a.abs() + b.abs()
            })
            .fold(0.0, f64::max);
        assert!(worst <= m, "{worst} > {m}");
        assert!(m >= 1.0);
    }

    #[test]
    fn f32_instantiation() {
        let chi = Cutoff::<f32>::build();
        assert_eq!(chi.value(0.25f32), 0.25);
        assert!(chi.derivative_bound() > 1.0);
    }
}
