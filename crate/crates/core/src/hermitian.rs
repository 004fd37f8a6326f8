//! Dense Hermitian matrices over `Complex<T>`.

use num_complex::Complex;

use crate::scalar::Scalar;

/// A `dim × dim` complex Hermitian matrix stored row-major.
///
/// Every constructor computes the upper triangle only and mirrors it, so
/// `entry(i, k) == entry(k, i).conj()` holds bit-for-bit and the diagonal
/// is exactly real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianForm<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> HermitianForm<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![Complex::new(T::zero(), T::zero()); dim * dim] }
    }

    /// Builds the matrix from a generator evaluated on `i <= k` only.
    pub fn from_upper(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut h = Self::zeros(dim);
        for i in 0..dim {
            for k in i..dim {
                h.set_pair(i, k, f(i, k));
            }
        }
        h
    }

    pub fn diagonal(diag: &[T]) -> Self {
        let mut h = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            h.entries[i * h.dim + i] = Complex::new(d, T::zero());
        }
        h
    }

    /// `Σ_j g_j g_j*` over the given vectors.
    pub fn gram(dim: usize, vectors: &[Vec<Complex<T>>]) -> Self {
        Self::from_upper(dim, |i, k| {
            vectors.iter().fold(Complex::new(T::zero(), T::zero()), |acc, g| acc + g[i] * g[k].conj())
        })
    }

    fn set_pair(&mut self, i: usize, k: usize, v: Complex<T>) {
        let n = self.dim;
        if i == k {
            self.entries[i * n + i] = Complex::new(v.re, T::zero());
        } else {
            self.entries[i * n + k] = v;
            self.entries[k * n + i] = v.conj();
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, i: usize, k: usize) -> Complex<T> {
        self.entries[i * self.dim + k]
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn diag(&self) -> Vec<T> {
        (0..self.dim).map(|i| self.entry(i, i).re).collect()
    }

    pub fn trace(&self) -> T {
        self.diag().into_iter().fold(T::zero(), |a, b| a + b)
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> T {
        self.entries.iter().fold(T::zero(), |m, e| m.max(e.norm()))
    }

    pub fn is_exactly_hermitian(&self) -> bool {
        (0..self.dim).all(|i| {
            (i..self.dim).all(|k| {
                let a = self.entry(i, k);
                let b = self.entry(k, i).conj();
                a.re == b.re && a.im == b.im
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.re == T::zero() && e.im == T::zero())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self::from_upper(self.dim, |i, k| f(self.entry(i, k), other.entry(i, k)))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_upper(self.dim, |i, k| self.entry(i, k) * s)
    }

    /// `self + alpha · g g*`.
    pub fn add_rank_one(&self, alpha: T, g: &[Complex<T>]) -> Self {
        assert_eq!(g.len(), self.dim, "dimension mismatch");
        Self::from_upper(self.dim, |i, k| self.entry(i, k) + g[i] * g[k].conj() * alpha)
    }

    /// Direct sum with a zero block: pads with `extra` zero rows and columns.
    pub fn pad_zero(&self, extra: usize) -> Self {
        let dim = self.dim + extra;
        Self::from_upper(dim, |i, k| {
            if i < self.dim && k < self.dim {
                self.entry(i, k)
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
    }

    /// Maximum entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.sub(other).max_norm()
    }
}
