use levicert::finite_type::{conjecture_bounds, dangelo_type, multiplicity, probe_type};
use levicert::{Error, MixedTerm64, Rational};
use proptest::prelude::*;

// Standard monomials counted one lattice point at a time.
fn brute_multiplicity(n: usize, rows: &[Vec<u32>], box_: &[u32]) -> u64 {
    let total: u64 = box_.iter().map(|&b| u64::from(b)).product();
    let mut count = 0;
    for k in 0..total {
        let mut rest = k;
        let point: Vec<u32> = (0..n)
            .map(|i| {
                let b = u64::from(box_[i]);
                let v = rest % b;
                rest /= b;
                v as u32
            })
            .collect();
        if !rows.iter().any(|r| r.iter().zip(&point).all(|(a, p)| a <= p)) {
            count += 1;
        }
    }
    count
}

fn family() -> impl Strategy<Value = (usize, Vec<Vec<u32>>)> {
    (1usize..=3).prop_flat_map(|n| {
        let pure = prop::collection::vec(1u32..=6, n);
        let mixed = prop::collection::vec(prop::collection::vec(0u32..=6, n), 0..4);
        (Just(n), pure, mixed).prop_map(|(n, pure, mixed)| {
            let mut rows: Vec<Vec<u32>> =
                pure.iter().enumerate().map(|(i, &m)| (0..n).map(|k| if k == i { m } else { 0 }).collect()).collect();
            rows.extend(mixed.into_iter().filter(|r| r.iter().any(|&e| e > 0)));
            (n, rows)
        })
    })
}

fn term(n: usize, rows: &[Vec<u32>]) -> MixedTerm64 {
    let r: Vec<&[u32]> = rows.iter().map(|v| v.as_slice()).collect();
    MixedTerm64::from_exponents(n, &r).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn probe_matches_type_and_staircase_matches_brute(f in family()) {
        let (n, rows) = f;
        let u = term(n, &rows);
        let report = conjecture_bounds(&u).unwrap();
        let t = dangelo_type(&u).unwrap();
        let max_m = *report.pure_powers.iter().max().unwrap();
        prop_assert_eq!(t, 2 * u64::from(max_m));
        prop_assert_eq!(probe_type(&u, n as u32 * max_m), Some(Rational::from_integer(t)));
        let m = multiplicity(&u).unwrap();
        prop_assert_eq!(m, brute_multiplicity(n, &rows, &report.pure_powers));
        prop_assert!(Rational::new(1, 2 * m) <= report.epsilon);
        prop_assert_eq!(report.epsilon, Rational::new(1, t));
    }
}

#[test]
fn infinite_type_is_reported_with_first_bad_coordinate() {
    let u = term(3, &[vec![2, 0, 0], vec![0, 1, 1], vec![1, 1, 0]]);
    assert_eq!(dangelo_type(&u), Err(Error::NotFiniteType(2)));
    assert_eq!(conjecture_bounds(&u), Err(Error::NotFiniteType(2)));
}
