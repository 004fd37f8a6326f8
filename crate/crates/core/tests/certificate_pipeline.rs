use levicert::certify::{
    build_weights, certify_epsilon, check_dominance, reevaluate, CheckKind, SamplePlan, TypeStatus,
};
use levicert::report::{certificate_from_json, certificate_to_json};
use levicert::{MixedTerm64, Rational};
use proptest::prelude::*;

fn term(n: usize, rows: &[&[u32]]) -> MixedTerm64 {
    MixedTerm64::from_exponents(n, rows).unwrap()
}

fn light_plan() -> SamplePlan {
    SamplePlan { radial_points: 24, phase_points: 4, random_points: 32, ..SamplePlan::default() }
}

#[test]
fn quartic_certifies_one_eighth() {
    let u = term(1, &[&[4]]);
    let cert = certify_epsilon(&u, &light_plan()).unwrap();
    assert!(cert.overall);
    assert_eq!(cert.type_report().unwrap().epsilon, Rational::new(1, 8));
    assert!(certificate_to_json(&cert).contains("\"epsilon\": \"1/8\""));
}

#[test]
fn no_pure_power_is_not_finite_type() {
    let cert = certify_epsilon(&term(2, &[&[1, 1]]), &light_plan()).unwrap();
    assert_eq!(cert.type_status, TypeStatus::NotFinite { coordinate: 1 });
    assert!(!cert.overall && cert.checks.is_empty());
    let back = certificate_from_json(&certificate_to_json(&cert)).unwrap();
    assert_eq!(back, cert);
}

#[test]
fn reproducible_and_witnesses_reevaluate() {
    let u = term(2, &[&[2, 0], &[0, 3], &[1, 1]]);
    let plan = light_plan();
    let a = certify_epsilon(&u, &plan).unwrap();
    let b = certify_epsilon(&u, &plan).unwrap();
    assert_eq!(a, b);
    let json = certificate_to_json(&a);
    assert_eq!(json, certificate_to_json(&b));
    let back = certificate_from_json(&json).unwrap();
    assert_eq!(back, a);
    assert_eq!(certificate_to_json(&back), json);

    let report = a.type_report().unwrap();
    assert_eq!(report.epsilon, Rational::new(1, 6));
    assert_eq!((report.lower_bound, report.upper_bound), (Rational::new(1, 8), Rational::new(1, 6)));
    let (w, model) = build_weights(&u, report).unwrap();
    for r in &back.checks {
        let m = reevaluate(r, &u, &model, &w).unwrap();
        assert!((m - r.margin).abs() <= 1e-12 * (1.0 + r.margin.abs()), "{}: {m} vs {}", r.kind.name(), r.margin);
    }
}

#[test]
fn resolve_margin_is_delta_invariant() {
    for rows in [&[&[1u32][..]][..], &[&[3]], &[&[2, 0], &[0, 3]], &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 4]]] {
        let u = term(rows[0].len(), rows);
        let cert = certify_epsilon(&u, &light_plan()).unwrap();
        let v: Vec<f64> = cert.records(CheckKind::Resolve).map(|r| r.value).collect();
        assert_eq!(v.len(), 7);
        for x in &v {
            assert!((x - v[0]).abs() <= 1e-6 * v[0], "{v:?}");
        }
        let strip: Vec<f64> = cert.records(CheckKind::StripBound).map(|r| r.value).collect();
        let (lo, hi) = strip.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
        assert!(lo > 0.0 && (hi - lo) / lo < 0.05, "{strip:?}");
    }
}

#[test]
fn added_generators_dominate_the_diagonal_model() {
    let diag = term(2, &[&[2, 0], &[0, 3]]);
    let u = term(2, &[&[2, 0], &[0, 3], &[1, 1], &[3, 2]]);
    let plan = light_plan();
    assert!(check_dominance(&u, &diag, &plan).unwrap().passed);
    assert!(!check_dominance(&diag, &u, &plan).unwrap().passed);
    let cu = certify_epsilon(&u, &plan).unwrap();
    let cd = certify_epsilon(&diag, &plan).unwrap();
    assert!(cu.overall && cd.overall);
    assert_eq!(cu.type_report().unwrap().epsilon, cd.type_report().unwrap().epsilon);
}

fn small_term() -> impl Strategy<Value = MixedTerm64> {
    prop::collection::vec(prop::collection::vec(0u32..=3, 2), 1..4).prop_filter_map("nonconstant", |rows| {
        let rows: Vec<Vec<u32>> = rows.into_iter().filter(|r| r.iter().any(|&e| e > 0)).collect();
        let r: Vec<&[u32]> = rows.iter().map(|v| v.as_slice()).collect();
        MixedTerm64::from_exponents(2, &r).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mutual_dominance_means_equal_levi_forms(u1 in small_term(), u2 in small_term()) {
        let plan = SamplePlan { radial_points: 8, phase_points: 2, random_points: 8, ..SamplePlan::default() };
        let a = check_dominance(&u1, &u2, &plan).unwrap();
        let b = check_dominance(&u2, &u1, &plan).unwrap();
        if a.passed && b.passed {
            for z in plan.points::<f64>(2, &[], &[], 0) {
                prop_assert!(u1.levi_form(&z).max_abs_diff(&u2.levi_form(&z)) <= 2e-9);
            }
        }
        let same = check_dominance(&u1, &u1, &plan).unwrap();
        prop_assert!(same.passed);
    }
}
