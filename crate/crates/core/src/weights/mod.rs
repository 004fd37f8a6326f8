//! The explicit plurisubharmonic weight family: cutoff `χ`, scales `τ_i`,
//! `ρ_δ`, the constants `(M, c, d, C)`, the pre-weight `λ̃_δ`, the hinge `p`,
//! the weight `λ_δ = p ∘ λ̃_δ`, and their analytic complex Hessians.

mod cutoff;
mod family;
mod hinge;

pub use cutoff::{Cutoff, DERIVATIVE_GRID, DERIVATIVE_SAFETY};
pub use family::{rational_to, tau, Delta, WeightFamily, EXP_SATURATION};
pub use hinge::Hinge;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{AmbientPoint, MixedTerm};
    use num_complex::Complex;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn d(x: f64) -> Delta<f64> {
        Delta::new(x).unwrap()
    }

    fn family(m: &[u32]) -> WeightFamily<f64> {
        WeightFamily::choose_constants(m, Cutoff::build())
    }

    #[test]
    fn tau_examples() {
        assert!((tau(1e-4f64, 2).unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(tau(1.0f64, 7).unwrap(), 1.0);
        assert!((tau(1e-6f64, 3).unwrap() - 0.1).abs() < 1e-15);
        assert!(tau(0.0f64, 1).is_err());
        assert!(tau(1.5f64, 1).is_err());
        assert!(tau(f64::NAN, 1).is_err());
    }

    #[test]
    fn rho_examples() {
        let w = family(&[1]);
        assert_eq!(w.rho(&[c(0.0, 0.0)], d(0.04)), 0.0);
        assert_eq!(w.rho(&[c(0.3, 0.0)], d(0.04)), 0.0);
        let v = w.rho(&[c(0.1, 0.0)], d(0.04));
        assert!((v - 0.25 * w.c()).abs() < 1e-15);
    }

    #[test]
    fn rho_hessian_regimes() {
        let w = family(&[2, 3]);
        let delta = d(1e-4);
        let small = w.rho_hessian_diag(&[c(0.05, 0.0), c(0.0, 0.0)], delta);
        assert!((small[0] - w.c() * 1e4f64.powf(0.5)).abs() < 1e-10 * small[0]);
        assert!((small[1] - w.c() * 1e4f64.powf(1.0 / 3.0)).abs() < 1e-10 * small[1]);
        let big = w.rho_hessian_diag(&[c(0.2, 0.0), c(0.5, 0.0)], delta);
        assert_eq!(big, vec![0.0, 0.0]);
        // transition regime bounded below by -cM/τ²
        let tau2 = 1e-2;
        for j in 0..=400 {
            let r = (0.5f64 + j as f64 / 800.0).sqrt() * 0.1;
            let e = w.rho_hessian_diag(&[c(r, 0.0), c(0.0, 0.0)], delta)[0];
            assert!(e >= -w.c() * w.cutoff().derivative_bound() / tau2);
        }
    }

    #[test]
    fn resolve_examples() {
        let u = MixedTerm::<f64>::from_exponents(1, &[&[2]]).unwrap();
        let w = family(&[2]);
        let delta = d(1e-4);
        let h = w.resolve_hessian(&u, &[c(0.2, 0.0)], delta);
        assert!((h.entry(0, 0).re - 1600.0).abs() < 1e-9);
        let h = w.resolve_hessian(&u, &[c(0.05, 0.0)], delta);
        assert!((h.entry(0, 0).re - (100.0 + 100.0 * w.c())).abs() < 1e-9);
        let h = w.resolve_hessian(&u, &[c(0.0, 0.0)], delta);
        assert!((h.entry(0, 0).re - w.c() * 100.0).abs() < 1e-12);
        assert!(h.entry(0, 0).re >= w.big_c() * 100.0);
    }

    #[test]
    fn constants() {
        let chi = Cutoff::<f64>::build();
        let m = chi.derivative_bound();
        let w = WeightFamily::choose_constants(&[1], chi);
        assert!((w.c() - (0.5 / m).min(1.0)).abs() < 1e-16);
        assert!(w.d() >= 0.5);
        assert_eq!(w.big_c(), w.c().min(w.d()).min(1.0));
        assert_eq!(w.epsilon(), crate::finite_type::Rational::new(1, 2));

        let w = WeightFamily::choose_constants(&[2, 3], chi);
        assert!(w.c() <= 0.125 / m);
        assert!(w.d() >= 0.125);
        assert_eq!(w.epsilon(), crate::finite_type::Rational::new(1, 6));

        // n c ≤ 1 always
        for n in 1..=6 {
            let w = WeightFamily::choose_constants(&vec![1; n], chi);
            assert!(w.c() * n as f64 <= 1.0);
        }
    }

    #[test]
    fn lambda_tilde_examples() {
        let u = MixedTerm::<f64>::from_exponents(1, &[&[1]]).unwrap();
        let w = family(&[1]);
        let delta = d(0.01);
        // boundary point outside the cutoff support
        let p = AmbientPoint::on_level(&u, vec![c(0.5, 0.0)], 0.0);
        assert!((w.lambda_tilde(&u, &p, delta) - 1.0).abs() < 1e-12);
        let p = AmbientPoint::on_level(&u, vec![c(0.5, 0.0)], 0.01);
        assert!((w.lambda_tilde(&u, &p, delta) - std::f64::consts::E).abs() < 1e-9);
        for z in [0.0, 0.05, 0.08, 0.3] {
            let p = AmbientPoint::on_level(&u, vec![c(z, 0.0)], -0.03);
            assert!(w.lambda_tilde(&u, &p, delta) < (-2.0f64).exp());
        }
        // saturation
        let p = AmbientPoint::new(vec![c(0.0, 0.0)], c(-100.0, 0.0));
        assert_eq!(w.lambda_tilde(&u, &p, delta), 0.0);
    }

    #[test]
    fn lambda_flat_below_minus_three_delta() {
        let u = MixedTerm::<f64>::from_exponents(2, &[&[2, 0], &[0, 3], &[1, 1]]).unwrap();
        let w = family(&[2, 3]);
        for delta in [1e-2, 1e-5, 1e-8] {
            for r in [-3.0, -4.0, -10.0] {
                for z in [[0.0, 0.0], [0.01, 0.02], [0.3, 0.1]] {
                    let p = AmbientPoint::on_level(&u, vec![c(z[0], 0.0), c(0.0, z[1])], r * delta);
                    assert_eq!(w.lambda(&u, &p, d(delta)), 0.0);
                    assert!(w.lambda_hessian(&u, &p, d(delta)).is_zero());
                }
            }
        }
    }

    #[test]
    fn lambda_tilde_hessian_at_origin() {
        let u = MixedTerm::<f64>::from_exponents(1, &[&[1]]).unwrap();
        let w = family(&[1]);
        let delta = 0.01;
        let p = AmbientPoint::new(vec![c(0.0, 0.0)], c(0.0, 0.0));
        let h = w.lambda_tilde_hessian(&u, &p, d(delta));
        let k = (-3.0f64).exp();
        let want = [1.0 / delta + k * w.c() / delta, 1.0 / (delta * delta)];
        assert!((h.entry(0, 0).re - want[0]).abs() < 1e-9 * want[0]);
        assert!((h.entry(1, 1).re - want[1]).abs() < 1e-9 * want[1]);
        assert_eq!(h.entry(0, 1), c(0.0, 0.0));
    }

    #[test]
    fn radial_scaling_law() {
        let w = family(&[1, 2, 3]);
        for s in [0.0, 0.3, std::f64::consts::FRAC_1_SQRT_2, 0.8, 0.95, 1.0, 1.7] {
            for i in 0..3 {
                let m = w.pure_powers()[i];
                let reference = w.scaled_entry(i, s, true);
                for k in 2..=8 {
                    let delta = d(10f64.powi(-k));
                    let mut z = vec![c(0.0, 0.0); 3];
                    z[i] = c(s * delta.tau(m), 0.0);
                    let e = w.diagonal_entries(&z, delta, true)[i] * delta.get().powf(1.0 / m as f64);
                    assert!((e - reference).abs() <= 1e-9 * reference.abs().max(1e-300), "i={i} s={s} k={k}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn rotation_invariance(r in prop::collection::vec(0.0f64..0.5, 2), th in prop::collection::vec(0.0f64..6.3, 2), k in 2i32..8) {
            let u = MixedTerm::<f64>::from_exponents(2, &[&[2, 0], &[0, 3]]).unwrap();
            let w = family(&[2, 3]);
            let delta = d(10f64.powi(-k));
            let a = w.resolve_hessian(&u, &[c(r[0], 0.0), c(r[1], 0.0)], delta);
            let z: Vec<_> = r.iter().zip(&th).map(|(&x, &t)| Complex::from_polar(x, t)).collect();
            let b = w.resolve_hessian(&u, &z, delta);
            prop_assert!(a.max_abs_diff(&b) <= 1e-12 * (1.0 + a.max_norm()));
        }

        #[test]
        fn last_coordinate_enters_only_through_r(re in -0.2f64..0.2, x in -0.4f64..0.4, im1 in -5.0f64..5.0, im2 in -5.0f64..5.0) {
            let u = MixedTerm::<f64>::from_exponents(1, &[&[2]]).unwrap();
            let w = family(&[2]);
            let delta = d(1e-2);
            let p1 = AmbientPoint::new(vec![c(x, 0.1)], c(re, im1));
            let p2 = AmbientPoint::new(vec![c(x, 0.1)], c(re, im2));
            prop_assert_eq!(w.lambda_hessian(&u, &p1, delta), w.lambda_hessian(&u, &p2, delta));
            prop_assert_eq!(w.lambda(&u, &p1, delta), w.lambda(&u, &p2, delta));
        }

        #[test]
        fn rho_range(z in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 3), k in 1i32..9) {
            let w = family(&[1, 2, 4]);
            let z: Vec<_> = z.into_iter().map(|(a, b)| c(a, b)).collect();
            let v = w.rho(&z, d(10f64.powi(-k)));
            prop_assert!(v >= 0.0 && v <= 3.0 * w.c() && 3.0 * w.c() <= 1.0);
        }

        #[test]
        fn entries_dominate_regime_bound(s in 0.0f64..3.0, k in 2i32..9) {
            let w = family(&[1, 2, 4]);
            let delta = d(10f64.powi(-k));
            for i in 0..3 {
                let m = w.pure_powers()[i];
                let mut z = vec![c(0.0, 0.0); 3];
                z[i] = c(s * delta.tau(m), 0.0);
                let bound = w.big_c() * delta.get().powf(-1.0 / m as f64);
                for exact in [true, false] {
                    let e = w.diagonal_entries(&z, delta, exact)[i];
                    prop_assert!(e >= bound * (1.0 - 1e-12));
                }
            }
        }
    }
}
