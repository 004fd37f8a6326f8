//! Problem files: one generator per line plus optional sample-plan overrides.
//!
//! ```text
//! # u = |z_1^2|^2 + |z_2^3|^2 + |z_1 z_2|^2
//! n = 2
//! mon: 1 0 : 2 0
//! mon: 1 0 : 0 3
//! mon: 1 0 : 1 1
//! deltas = 2..6        # 1e-2, 1e-3, ..., 1e-6; or an explicit list
//! ```
//!
//! `mon: <re> <im> : <e_1> … <e_n>` is the generator `(re + i im) z^e`.
//! Other keys: `radius`, `radial_points`, `phase_points`, `random_points`,
//! `seed`, `strip_levels`, `shell_levels`, `flat_levels`.

use std::fmt::Write as _;

use num_complex::Complex;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::certify::{decades, SamplePlan};
use crate::monomial::{ExponentVector, MixedTerm, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: zero coefficient")]
    ZeroCoefficient { line: usize },
    #[error("line {line}: constant generator violates u(0) = 0")]
    ConstantGenerator { line: usize },
    #[error("line {line}: expected {expected} exponents, found {got}")]
    DimensionMismatch { line: usize, expected: usize, got: usize },
    #[error("line {line}: `{key}` given twice")]
    DuplicateKey { line: usize, key: String },
    #[error("missing `n = <dimension>` line")]
    MissingDimension,
    #[error("no generators")]
    NoGenerators,
    #[error(transparent)]
    Invalid(#[from] crate::error::Error),
}

/// A parsed problem: the mixed term and the sample plan with defaults filled.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub term: MixedTerm<f64>,
    pub plan: SamplePlan,
}

fn syntax(line: usize, message: impl Into<String>) -> ProblemError {
    ProblemError::Syntax { line, message: message.into() }
}

fn parse_f64(line: usize, s: &str) -> Result<f64, ProblemError> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(syntax(line, format!("not a finite number: `{s}`"))),
    }
}

fn parse_int<N: std::str::FromStr>(line: usize, s: &str) -> Result<N, ProblemError> {
    s.parse().map_err(|_| syntax(line, format!("not a nonnegative integer: `{s}`")))
}

fn parse_list(line: usize, s: &str) -> Result<Vec<f64>, ProblemError> {
    s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(|t| parse_f64(line, t)).collect()
}

fn parse_deltas(line: usize, s: &str) -> Result<Vec<f64>, ProblemError> {
    match s.split_once("..") {
        Some((a, b)) => {
            let (k1, k2): (u32, u32) = (parse_int(line, a.trim())?, parse_int(line, b.trim())?);
            if k1 == 0 || k1 > k2 || k2 > 300 {
                return Err(syntax(line, "decade range must satisfy 1 <= k1 <= k2 <= 300"));
            }
            Ok(decades(k1, k2))
        }
        None => parse_list(line, s),
    }
}

/// A `δ` sweep given as `k1..k2` (decades `1e-k1 … 1e-k2`) or a list, as
/// accepted on the command line.
pub fn parse_delta_sweep(text: &str) -> Result<Vec<f64>, ProblemError> {
    let deltas = parse_deltas(0, text.trim())?;
    if deltas.is_empty() {
        return Err(syntax(0, "empty delta sweep"));
    }
    Ok(deltas)
}

fn parse_monomial(line: usize, body: &str, dim: Option<usize>) -> Result<Monomial<f64>, ProblemError> {
    let (coef, exps) = body.split_once(':').ok_or_else(|| syntax(line, "expected `mon: <re> <im> : <exponents>`"))?;
    let c: Vec<&str> = coef.split_whitespace().collect();
    if c.len() != 2 {
        return Err(syntax(line, "coefficient must be `<re> <im>`"));
    }
    let coefficient = Complex::new(parse_f64(line, c[0])?, parse_f64(line, c[1])?);
    if coefficient.re == 0.0 && coefficient.im == 0.0 {
        return Err(ProblemError::ZeroCoefficient { line });
    }
    let e = exps.split_whitespace().map(|t| parse_int::<u32>(line, t)).collect::<Result<Vec<_>, _>>()?;
    let dim = dim.ok_or_else(|| syntax(line, "`n = <dimension>` must precede generators"))?;
    if e.len() != dim {
        return Err(ProblemError::DimensionMismatch { line, expected: dim, got: e.len() });
    }
    if e.iter().all(|&k| k == 0) {
        return Err(ProblemError::ConstantGenerator { line });
    }
    let exponents = ExponentVector::new(e).map_err(|err| syntax(line, err.to_string()))?;
    if exponents.degree().is_none() {
        return Err(syntax(line, "total degree overflows"));
    }
    Ok(Monomial::new(coefficient, exponents))
}

pub fn parse_problem(text: &str) -> Result<Problem, ProblemError> {
    let mut dim: Option<usize> = None;
    let mut gens = Vec::new();
    let mut plan = SamplePlan::default();
    let mut seen: Vec<String> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(body) = content.strip_prefix("mon:") {
            gens.push(parse_monomial(line, body, dim)?);
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .map(|(a, b)| (a.trim(), b.trim()))
            .ok_or_else(|| syntax(line, format!("unrecognized line `{content}`")))?;
        if seen.iter().any(|s| s == key) {
            return Err(ProblemError::DuplicateKey { line, key: key.to_string() });
        }
        seen.push(key.to_string());
        match key {
            "n" => {
                let n: usize = parse_int(line, value)?;
                if n == 0 {
                    return Err(syntax(line, "dimension must be at least 1"));
                }
                dim = Some(n);
            }
            "radius" => plan.radius = parse_f64(line, value)?,
            "deltas" => plan.deltas = parse_deltas(line, value)?,
            "radial_points" => plan.radial_points = parse_int(line, value)?,
            "phase_points" => plan.phase_points = parse_int(line, value)?,
            "random_points" => plan.random_points = parse_int(line, value)?,
            "seed" => plan.seed = parse_int(line, value)?,
            "strip_levels" => plan.strip_levels = parse_list(line, value)?,
            "shell_levels" => plan.shell_levels = parse_list(line, value)?,
            "flat_levels" => plan.flat_levels = parse_list(line, value)?,
            _ => return Err(syntax(line, format!("unknown key `{key}`"))),
        }
    }

    let dim = dim.ok_or(ProblemError::MissingDimension)?;
    if gens.is_empty() {
        return Err(ProblemError::NoGenerators);
    }
    plan.validate()?;
    Ok(Problem { term: MixedTerm::new(dim, gens)?, plan })
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Canonical text of a mixed term and plan. Every field is written out, floats
/// in shortest round-trip form, so `parse ∘ canonical_text` is the identity
/// and `canonical_text ∘ parse` is idempotent.
pub fn canonical_text(term: &MixedTerm<f64>, plan: &SamplePlan) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n = {}", term.dim());
    for g in term.generators() {
        let e: Vec<String> = g.exponents.as_slice().iter().map(|k| k.to_string()).collect();
        let _ = writeln!(s, "mon: {} {} : {}", g.coefficient.re, g.coefficient.im, e.join(" "));
    }
    let _ = writeln!(s, "radius = {}", plan.radius);
    let _ = writeln!(s, "deltas = {}", join(&plan.deltas));
    let _ = writeln!(s, "radial_points = {}", plan.radial_points);
    let _ = writeln!(s, "phase_points = {}", plan.phase_points);
    let _ = writeln!(s, "random_points = {}", plan.random_points);
    let _ = writeln!(s, "seed = {}", plan.seed);
    let _ = writeln!(s, "strip_levels = {}", join(&plan.strip_levels));
    let _ = writeln!(s, "shell_levels = {}", join(&plan.shell_levels));
    let _ = writeln!(s, "flat_levels = {}", join(&plan.flat_levels));
    s
}

/// Hex SHA-256 of [`canonical_text`].
pub fn problem_digest(term: &MixedTerm<f64>, plan: &SamplePlan) -> String {
    hex::encode(Sha256::digest(canonical_text(term, plan).as_bytes()))
}

impl Problem {
    pub fn canonical_text(&self) -> String {
        canonical_text(&self.term, &self.plan)
    }

    pub fn digest(&self) -> String {
        problem_digest(&self.term, &self.plan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let p = parse_problem("n = 1\nmon: 1 0 : 4").unwrap();
        assert_eq!(p.term, MixedTerm::from_exponents(1, &[&[4]]).unwrap());
        assert_eq!(p.plan, SamplePlan::default());

        let p = parse_problem("n = 2\nmon: 1 0 : 2 0\nmon: 1 0 : 0 3\nmon: 1 0 : 1 1").unwrap();
        assert_eq!(p.term, MixedTerm::from_exponents(2, &[&[2, 0], &[0, 3], &[1, 1]]).unwrap());

        assert_eq!(parse_problem("mon: 0 0 : 1 0"), Err(ProblemError::ZeroCoefficient { line: 1 }));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_problem("n = 2\n\nmon: 1 0 : 1"),
            Err(ProblemError::DimensionMismatch { line: 3, expected: 2, got: 1 })
        );
        assert_eq!(parse_problem("# c\nn = 1\nmon: 2 1 : 0"), Err(ProblemError::ConstantGenerator { line: 3 }));
        assert!(matches!(parse_problem("n = 1\nmon: x 0 : 1"), Err(ProblemError::Syntax { line: 2, .. })));
        assert!(matches!(parse_problem("n = 1\nfoo = 3"), Err(ProblemError::Syntax { line: 2, .. })));
        assert!(matches!(parse_problem("n = 1\nn = 2"), Err(ProblemError::DuplicateKey { line: 2, .. })));
        assert!(matches!(parse_problem("mon: 1 0 : 1"), Err(ProblemError::Syntax { line: 1, .. })));
        assert_eq!(parse_problem("n = 1"), Err(ProblemError::NoGenerators));
        assert_eq!(
            parse_problem("mon: 1 0 : 1\n").unwrap_err().to_string(),
            "line 1: `n = <dimension>` must precede generators"
        );
        assert!(matches!(parse_problem("n = 1\nmon: 1 0 : 1\nradius = 2"), Err(ProblemError::Invalid(_))));
        assert!(matches!(parse_problem("n = 1\nmon: inf 0 : 1"), Err(ProblemError::Syntax { .. })));
    }

    #[test]
    fn plan_overrides() {
        let p = parse_problem("n = 1\nmon: 1 0 : 1\ndeltas = 3..5\nradius = 0.25\nseed = 7\nphase_points = 2").unwrap();
        assert_eq!(p.plan.deltas, vec![1e-3, 1e-4, 1e-5]);
        assert_eq!((p.plan.radius, p.plan.seed, p.plan.phase_points), (0.25, 7, 2));
        let p = parse_problem("n = 1\nmon: 1 0 : 1\ndeltas = 0.01, 0.002").unwrap();
        assert_eq!(p.plan.deltas, vec![0.01, 0.002]);
        assert!(parse_problem("n = 1\nmon: 1 0 : 1\ndeltas = 5..3").is_err());
        assert_eq!(parse_delta_sweep("2..4").unwrap(), vec![1e-2, 1e-3, 1e-4]);
        assert!(parse_delta_sweep(" ").is_err());
    }

    #[test]
    fn digest_is_stable_and_sensitive() {
        let a = parse_problem("n = 1\nmon: 1 0 : 4").unwrap();
        let b = parse_problem("# same\nn = 1\n  mon: 1 0 : 4  # trailing\n").unwrap();
        assert_eq!(a.digest(), b.digest());
        let c = parse_problem("n = 1\nmon: 1 0 : 4\nseed = 1").unwrap();
        assert_ne!(a.digest(), c.digest());
        assert_eq!(a.digest().len(), 64);
    }

    fn arb_problem_text() -> impl Strategy<Value = String> {
        (1usize..=3).prop_flat_map(|n| {
            let gen = (-1e3f64..1e3, -1e3f64..1e3, prop::collection::vec(0u32..7, n))
                .prop_filter("nonconstant, nonzero", |(a, b, e)| (*a != 0.0 || *b != 0.0) && e.iter().any(|&k| k > 0));
            (prop::collection::vec(gen, 1..5), 0.01f64..1.0, 1u32..5, any::<u64>()).prop_map(
                move |(gens, r, k, seed)| {
                    let mut s = format!("n = {n}\n");
                    for (a, b, e) in gens {
                        let e: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                        s += &format!("mon: {a:e} {b} : {}\n", e.join(" "));
                    }
                    s + &format!("radius = {r}\ndeltas = {k}..{}\nseed = {seed}\n", k + 2)
                },
            )
        })
    }

    proptest! {
        #[test]
        fn canonical_round_trip(text in arb_problem_text()) {
            let p = parse_problem(&text).unwrap();
            let canon = p.canonical_text();
            let q = parse_problem(&canon).unwrap();
            prop_assert_eq!(&p, &q);
            prop_assert_eq!(q.canonical_text(), canon);
        }
    }
}
