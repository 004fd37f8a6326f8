//! Cyclic complex Jacobi for small dense Hermitian matrices.
//!
//! Rotations are skipped only when `|a_pq| ≤ eps · sqrt(|a_pp a_qq|)`, the
//! relative criterion under which Jacobi resolves the small eigenvalues of
//! graded positive definite matrices to high relative accuracy. The weight
//! Hessians need this: their entries span up to twenty orders of magnitude.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hermitian::HermitianForm;
use crate::scalar::Scalar;

pub const MAX_SWEEPS: usize = 100;

/// All eigenvalues, ascending.
pub fn hermitian_eigenvalues<T: Scalar>(h: &HermitianForm<T>) -> Result<Vec<T>> {
    let n = h.dim();
    let mut a: Vec<Complex<T>> = h.entries().to_vec();
    let eps = T::epsilon();
    let floor = eps * eps * h.max_norm();
    let zero = Complex::new(T::zero(), T::zero());
    let huge = T::max_value().sqrt();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let g = apq.norm();
                if g == T::zero() {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                if g <= floor || g <= eps * (app * aqq).abs().sqrt() {
                    a[p * n + q] = zero;
                    a[q * n + p] = zero;
                    continue;
                }
                rotated = true;
                let phase_conj = (apq / g).conj();
                let theta = (aqq - app) / (g + g);
                let t = if theta.abs() > huge {
                    (theta + theta).recip()
                } else {
                    let sgn = if theta < T::zero() { -T::one() } else { T::one() };
                    sgn / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_p = akp * c - akq * phase_conj * s;
                    let new_q = akp * s + akq * phase_conj * c;
                    a[k * n + p] = new_p;
                    a[p * n + k] = new_p.conj();
                    a[k * n + q] = new_q;
                    a[q * n + k] = new_q.conj();
                }
                a[p * n + p] = Complex::new(app - t * g, T::zero());
                a[q * n + q] = Complex::new(aqq + t * g, T::zero());
                a[p * n + q] = zero;
                a[q * n + p] = zero;
            }
        }
        if !rotated {
            let mut eig: Vec<T> = (0..n).map(|i| a[i * n + i].re).collect();
            eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
            return Ok(eig);
        }
    }
    Err(Error::EigenNoConvergence { sweeps: MAX_SWEEPS })
}

/// Smallest eigenvalue; realizes "for all vectors L" as a single number.
pub fn hermitian_min_eigenvalue<T: Scalar>(h: &HermitianForm<T>) -> Result<T> {
    if h.dim() == 0 {
        return Ok(T::infinity());
    }
    Ok(hermitian_eigenvalues(h)?[0])
}
