//! Monomial mixed terms `u = Σ_j |f_j|²` and their exact Wirtinger calculus.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hermitian::HermitianForm;
use crate::scalar::Scalar;

/// Exponents of a monomial in `z_1, …, z_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(Self(entries))
    }

    /// Exponent vector of the pure power `z_i^k` (0-based `i`).
    pub fn pure_power(dim: usize, i: usize, k: u32) -> Self {
        let mut e = vec![0; dim];
        e[i] = k;
        Self(e)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.iter().try_fold(0u32, |acc, &e| acc.checked_add(e))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `Some((i, k))` when this is `z_i^k` with `k ≥ 1`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &[u32]) -> bool {
        self.0.iter().zip(other).all(|(a, b)| a <= b)
    }
}

/// Complex power by iterated multiplication; square-and-multiply above 64.
fn cpow<T: Scalar>(z: Complex<T>, e: u32) -> Complex<T> {
    if e <= 64 {
        let mut acc = Complex::new(T::one(), T::zero());
        for _ in 0..e {
            acc = acc * z;
        }
        acc
    } else {
        z.powu(e)
    }
}

/// A coefficiented monomial `c · z^α`.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial<T> {
    pub coefficient: Complex<T>,
    pub exponents: ExponentVector,
}

impl<T: Scalar> Monomial<T> {
    pub fn new(coefficient: Complex<T>, exponents: ExponentVector) -> Self {
        Self { coefficient, exponents }
    }

    /// Unit-coefficient monomial from raw exponents.
    pub fn unit(exponents: Vec<u32>) -> Result<Self> {
        Ok(Self::new(Complex::new(T::one(), T::zero()), ExponentVector::new(exponents)?))
    }

    pub fn dim(&self) -> usize {
        self.exponents.dim()
    }

    pub fn eval(&self, z: &[Complex<T>]) -> Complex<T> {
        self.exponents
            .as_slice()
            .iter()
            .zip(z)
            .fold(self.coefficient, |acc, (&e, &zi)| if e == 0 { acc } else { acc * cpow(zi, e) })
    }

    /// `∂/∂z_i` (0-based `i`). `Ok(None)` is the zero monomial.
    pub fn wirtinger_derivative(&self, i: usize) -> Result<Option<Self>> {
        let dim = self.dim();
        if i >= dim {
            return Err(Error::IndexOutOfRange { index: i, dim });
        }
        let e = self.exponents.0[i];
        if e == 0 {
            return Ok(None);
        }
        let mut exps = self.exponents.clone();
        exps.0[i] = e - 1;
        Ok(Some(Self::new(self.coefficient * T::from_u32(e).expect("u32 fits"), exps)))
    }
}

/// The mixed term `u(z) = Σ_j |f_j(z)|²` of a rigid domain `{2 Re z_{n+1} + u(z) < 0}`.
///
/// Only `|c_j|` enters any formula, so generators are stored twice: as given
/// (for serialization) and with the coefficient replaced by its modulus.
#[derive(Debug, Clone)]
pub struct MixedTerm<T> {
    dim: usize,
    generators: Vec<Monomial<T>>,
    normalized: Vec<Monomial<T>>,
    // derivatives[j][i] = ∂f_j/∂z_i of the normalized generator
    derivatives: Vec<Vec<Option<Monomial<T>>>>,
}

impl<T: Scalar> PartialEq for MixedTerm<T> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.generators == other.generators
    }
}

impl<T: Scalar> MixedTerm<T> {
    /// Validates and normalizes. Zero-coefficient generators are dropped.
    pub fn new(dim: usize, generators: Vec<Monomial<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut kept = Vec::with_capacity(generators.len());
        for (index, g) in generators.into_iter().enumerate() {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.dim() });
            }
            if g.exponents.degree().is_none() {
                return Err(Error::ExponentOverflow { index });
            }
            if g.coefficient.re == T::zero() && g.coefficient.im == T::zero() {
                continue;
            }
            if g.exponents.is_zero() {
                return Err(Error::ConstantGenerator { index });
            }
            kept.push(g);
        }
        if kept.is_empty() {
            return Err(Error::EmptyMixedTerm);
        }
        let normalized: Vec<_> = kept
            .iter()
            .map(|g| Monomial::new(Complex::new(g.coefficient.norm(), T::zero()), g.exponents.clone()))
            .collect();
        let derivatives = normalized
            .iter()
            .map(|g| (0..dim).map(|i| g.wirtinger_derivative(i).expect("index in range")).collect())
            .collect();
        Ok(Self { dim, generators: kept, normalized, derivatives })
    }

    /// Unit-coefficient mixed term from exponent rows.
    pub fn from_exponents(dim: usize, rows: &[&[u32]]) -> Result<Self> {
        let gens = rows.iter().map(|r| Monomial::unit(r.to_vec())).collect::<Result<Vec<_>>>()?;
        Self::new(dim, gens)
    }

    /// `Σ_i κ_i |z_i|^{2 m_i}`, realized with generators `√κ_i · z_i^{m_i}`.
    pub fn diagonal_model(pure_powers: &[u32], weights: &[T]) -> Result<Self> {
        let dim = pure_powers.len();
        let gens = pure_powers
            .iter()
            .zip(weights)
            .enumerate()
            .map(|(i, (&m, &k))| {
                Monomial::new(Complex::new(k.sqrt(), T::zero()), ExponentVector::pure_power(dim, i, m))
            })
            .collect();
        Self::new(dim, gens)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Monomial<T>] {
        &self.generators
    }

    pub fn exponents(&self) -> impl Iterator<Item = &ExponentVector> {
        self.generators.iter().map(|g| &g.exponents)
    }

    /// `u(z) = Σ_j |f_j(z)|²`.
    pub fn eval(&self, z: &[Complex<T>]) -> T {
        debug_assert_eq!(z.len(), self.dim);
        self.normalized.iter().fold(T::zero(), |acc, g| acc + g.eval(z).norm_sqr())
    }

    fn derivative_vectors(&self, z: &[Complex<T>]) -> Vec<Vec<Complex<T>>> {
        let zero = Complex::new(T::zero(), T::zero());
        self.derivatives
            .iter()
            .map(|row| row.iter().map(|d| d.as_ref().map_or(zero, |m| m.eval(z))).collect())
            .collect()
    }

    /// Levi form `H(i,k) = Σ_j ∂_i f_j · conj(∂_k f_j)`, a Gram matrix.
    pub fn levi_form(&self, z: &[Complex<T>]) -> HermitianForm<T> {
        HermitianForm::gram(self.dim, &self.derivative_vectors(z))
    }

    /// `∂u/∂z_i = Σ_j ∂_i f_j · conj(f_j)`.
    pub fn holomorphic_gradient(&self, z: &[Complex<T>]) -> Vec<Complex<T>> {
        let zero = Complex::new(T::zero(), T::zero());
        let values: Vec<_> = self.normalized.iter().map(|g| g.eval(z).conj()).collect();
        (0..self.dim)
            .map(|i| {
                self.derivatives.iter().zip(&values).fold(zero, |acc, (row, fbar)| match &row[i] {
                    Some(d) => acc + d.eval(z) * *fbar,
                    None => acc,
                })
            })
            .collect()
    }

    /// Defining function `r = 2 Re z_{n+1} + u(z)`.
    pub fn defining_function(&self, p: &AmbientPoint<T>) -> T {
        p.z_last.re + p.z_last.re + self.eval(&p.z)
    }

    /// `(∂r/∂z_1, …, ∂r/∂z_n, 1)`.
    pub fn ambient_holomorphic_gradient(&self, p: &AmbientPoint<T>) -> Vec<Complex<T>> {
        let mut w = self.holomorphic_gradient(&p.z);
        w.push(Complex::new(T::one(), T::zero()));
        w
    }
}

/// A point `z' = (z, z_{n+1})` of `C^{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientPoint<T> {
    pub z: Vec<Complex<T>>,
    pub z_last: Complex<T>,
}

impl<T: Scalar> AmbientPoint<T> {
    pub fn new(z: Vec<Complex<T>>, z_last: Complex<T>) -> Self {
        Self { z, z_last }
    }

    /// The point over `z` with `Im z_{n+1} = 0` and `r = r_target`.
    pub fn on_level(u: &MixedTerm<T>, z: Vec<Complex<T>>, r_target: T) -> Self {
        let re = (r_target - u.eval(&z)) / T::lit(2.0);
        Self { z, z_last: Complex::new(re, T::zero()) }
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    /// Real coordinates `(x_1, y_1, …, x_{n+1}, y_{n+1})`.
    pub fn to_real(&self) -> Vec<T> {
        self.z.iter().chain(std::iter::once(&self.z_last)).flat_map(|c| [c.re, c.im]).collect()
    }

    pub fn from_real(x: &[T]) -> Self {
        let mut z: Vec<_> = x.chunks(2).map(|c| Complex::new(c[0], c[1])).collect();
        let z_last = z.pop().expect("at least one coordinate");
        Self { z, z_last }
    }
}
