//! Monomial-ideal combinatorics: pure powers, D'Angelo 1-type, multiplicity,
//! and a curve-probing oracle for the type.
//!
//! Everything here depends only on exponent vectors and uses exact integer
//! or rational arithmetic.
//!
//! Curves are restricted to monomial curves `z_i = t^{a_i}` on a support `S`
//! with `z_{n+1} ≡ 0`. For `u = Σ|f_j|²` with monomial `f_j`, the pullback of
//! `r` is a sum of terms `|c_j|² |t|^{2⟨α_j, a⟩}` with positive coefficients, so
//! its vanishing order is `2 min_j ⟨α_j, a⟩` over generators supported in `S`
//! and no cancellation can occur. Generators that leave `S` vanish on the curve.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::monomial::{ExponentVector, MixedTerm};
use crate::scalar::Scalar;

pub type Rational = Ratio<u64>;

/// Default cap on lattice points visited by [`multiplicity`].
pub const ENUMERATION_BUDGET: u64 = 100_000_000;

/// Minimal pure power `m_i` for each coordinate, or the first (1-based)
/// coordinate without one.
pub fn minimal_pure_powers<'a>(
    dim: usize,
    exponents: impl IntoIterator<Item = &'a ExponentVector>,
) -> Result<Vec<u32>> {
    let mut best: Vec<Option<u32>> = vec![None; dim];
    for e in exponents {
        if let Some((i, k)) = e.as_pure_power() {
            best[i] = Some(best[i].map_or(k, |b| b.min(k)));
        }
    }
    best.iter().enumerate().map(|(i, m)| m.ok_or(Error::NotFiniteType(i + 1))).collect()
}

pub fn pure_powers_of<T: Scalar>(u: &MixedTerm<T>) -> Result<Vec<u32>> {
    minimal_pure_powers(u.dim(), u.exponents())
}

/// `T = 2 · max_i m_i`.
pub fn dangelo_type<T: Scalar>(u: &MixedTerm<T>) -> Result<u64> {
    let m = pure_powers_of(u)?;
    Ok(2 * u64::from(*m.iter().max().expect("dim >= 1")))
}

/// `dim_C O_n / I` for the monomial ideal generated by `exponents`.
///
/// Counts standard monomials column by column: for each prefix `β'` in the
/// box over the first `n-1` coordinates, the admissible last exponents are
/// `0 ≤ β_n < min{α_n : α' ≤ β'}` (capped at `m_n`).
pub fn multiplicity_of(dim: usize, exponents: &[ExponentVector], budget: u64) -> Result<u64> {
    let m = minimal_pure_powers(dim, exponents)?;
    let size = m.iter().try_fold(1u128, |acc, &k| acc.checked_mul(u128::from(k)));
    match size {
        Some(s) if s <= u128::from(budget) => {}
        Some(s) => return Err(Error::EnumerationBudget { size: s, budget }),
        None => return Err(Error::EnumerationBudget { size: u128::MAX, budget }),
    }
    let last = dim - 1;
    let mut prefix = vec![0u32; last];
    let mut total = 0u64;
    loop {
        let column = exponents
            .iter()
            .filter(|a| a.as_slice()[..last].iter().zip(&prefix).all(|(x, y)| x <= y))
            .map(|a| a.as_slice()[last])
            .fold(m[last], u32::min);
        total += u64::from(column);
        // odometer over the prefix box
        let mut i = 0;
        loop {
            if i == last {
                return Ok(total);
            }
            prefix[i] += 1;
            if prefix[i] < m[i] {
                break;
            }
            prefix[i] = 0;
            i += 1;
        }
    }
}

pub fn multiplicity<T: Scalar>(u: &MixedTerm<T>) -> Result<u64> {
    let exps: Vec<_> = u.exponents().cloned().collect();
    multiplicity_of(u.dim(), &exps, ENUMERATION_BUDGET)
}

/// A monomial curve `z_i = t^{a_i}` for `i` in the support, `z_i ≡ 0` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialCurve {
    /// (0-based coordinate, exponent ≥ 1), strictly increasing coordinates.
    terms: Vec<(usize, u32)>,
}

impl MonomialCurve {
    pub fn new(mut terms: Vec<(usize, u32)>) -> Option<Self> {
        terms.sort_unstable();
        let ok = !terms.is_empty() && terms.iter().all(|&(_, a)| a >= 1) && terms.windows(2).all(|w| w[0].0 != w[1].0);
        ok.then_some(Self { terms })
    }

    pub fn terms(&self) -> &[(usize, u32)] {
        &self.terms
    }

    fn contains(&self, i: usize) -> bool {
        self.terms.iter().any(|&(k, _)| k == i)
    }
}

/// Vanishing-order ratio `v(γ*r) / v(γ)`; `None` when `r ∘ γ ≡ 0`.
pub fn curve_vanishing_ratio<'a>(
    exponents: impl IntoIterator<Item = &'a ExponentVector>,
    curve: &MonomialCurve,
) -> Option<Rational> {
    let order = exponents
        .into_iter()
        .filter(|e| e.as_slice().iter().enumerate().all(|(i, &x)| x == 0 || curve.contains(i)))
        .map(|e| curve.terms.iter().map(|&(i, a)| u64::from(e.as_slice()[i]) * u64::from(a)).sum::<u64>())
        .min()?;
    let mult = curve.terms.iter().map(|&(_, a)| u64::from(a)).min().expect("nonempty");
    Some(Rational::new(2 * order, mult))
}

/// Largest finite ratio over all monomial curves with exponents in `[1, bound]`.
pub fn probe_type_of(dim: usize, exponents: &[ExponentVector], bound: u32) -> Option<Rational> {
    assert!(bound >= 1, "exponent bound must be positive");
    let mut best: Option<Rational> = None;
    for mask in 1u32..(1u32 << dim) {
        let support: Vec<usize> = (0..dim).filter(|i| mask & (1 << i) != 0).collect();
        let mut a = vec![1u32; support.len()];
        'tuples: loop {
            let curve =
                MonomialCurve::new(support.iter().copied().zip(a.iter().copied()).collect()).expect("valid curve");
            if let Some(r) = curve_vanishing_ratio(exponents, &curve) {
                best = Some(best.map_or(r, |b| b.max(r)));
            }
            for slot in a.iter_mut() {
                *slot += 1;
                if *slot <= bound {
                    continue 'tuples;
                }
                *slot = 1;
            }
            break;
        }
    }
    best
}

pub fn probe_type<T: Scalar>(u: &MixedTerm<T>, bound: u32) -> Option<Rational> {
    let exps: Vec<_> = u.exponents().cloned().collect();
    probe_type_of(u.dim(), &exps, bound)
}

/// Pure powers, 1-type, multiplicity, and the conjectured `ε` sandwich.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeReport {
    pub pure_powers: Vec<u32>,
    pub one_type: u64,
    pub multiplicity: u64,
    pub epsilon: Rational,
    pub lower_bound: Rational,
    pub upper_bound: Rational,
}

pub fn conjecture_bounds<T: Scalar>(u: &MixedTerm<T>) -> Result<TypeReport> {
    let pure_powers = pure_powers_of(u)?;
    let one_type = dangelo_type(u)?;
    let multiplicity = multiplicity(u)?;
    let epsilon = Rational::new(1, one_type);
    let lower_bound = Rational::new(1, 2 * multiplicity);
    assert!(lower_bound <= epsilon, "multiplicity below max pure power");
    Ok(TypeReport { pure_powers, one_type, multiplicity, epsilon, lower_bound, upper_bound: epsilon })
}
