//! Cubic hinge `p(t) = max(t - e^{-2}, 0)^3`: convex, increasing, `C²`,
//! identically zero on `t ≤ e^{-2}`.

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hinge<T> {
    onset: T,
}

impl<T: Scalar> Default for Hinge<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> Hinge<T> {
    pub fn new() -> Self {
        Self { onset: T::lit(-2.0).exp() }
    }

    /// `e^{-2}`.
    pub fn onset(&self) -> T {
        self.onset
    }

    /// `(p, p', p'')` at `t`; exact zeros for `t ≤ e^{-2}`.
    #[inline]
    pub fn eval(&self, t: T) -> (T, T, T) {
        if t <= self.onset {
            return (T::zero(), T::zero(), T::zero());
        }
        let x = t - self.onset;
        (x * x * x, T::lit(3.0) * x * x, T::lit(6.0) * x)
    }

    pub fn value(&self, t: T) -> T {
        self.eval(t).0
    }

    pub fn slope(&self, t: T) -> T {
        self.eval(t).1
    }

    /// Uniform bound `C' = p(e + e^{-3})` on `Ω_δ`.
    pub fn uniform_bound(&self) -> T {
        self.value(T::E() + T::lit(-3.0).exp())
    }

    /// Lower bound `p'(e^{-1})` for `p'` on `[e^{-1}, e + e^{-3}]`.
    pub fn strip_slope(&self) -> T {
        self.slope(T::lit(-1.0).exp())
    }
}
