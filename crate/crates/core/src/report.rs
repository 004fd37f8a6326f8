//! JSON certificates and CSV field dumps.
//!
//! Floats are written as decimal strings with 17 significant digits, which
//! parse back to the identical `f64`; rationals are written as `"p/q"`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{Certificate, CheckKind, CheckRecord, Constants, DiagonalModel, TypeStatus, Witness};
use crate::finite_type::{Rational, TypeReport};
use crate::weights::{Delta, WeightFamily};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("malformed certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed field `{field}`: `{value}`")]
    Field { field: &'static str, value: String },
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(field: &'static str, s: &str) -> Result<f64, ReportError> {
    s.parse().map_err(|_| ReportError::Field { field, value: s.to_string() })
}

fn fmt_q(q: Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn parse_q(field: &'static str, s: &str) -> Result<Rational, ReportError> {
    s.parse().map_err(|_| ReportError::Field { field, value: s.to_string() })
}

#[derive(Serialize, Deserialize)]
struct BoundsJson {
    lower: String,
    upper: String,
}

#[derive(Serialize, Deserialize)]
struct TypeReportJson {
    finite: bool,
    failing_coordinate: Option<usize>,
    pure_powers: Option<Vec<u32>>,
    one_type: Option<u64>,
    multiplicity: Option<u64>,
    epsilon: Option<String>,
    bounds: Option<BoundsJson>,
}

#[derive(Serialize, Deserialize)]
struct DiagonalModelJson {
    pure_powers: Vec<u32>,
    weights: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[allow(non_snake_case)]
struct ConstantsJson {
    c: String,
    d: String,
    C: String,
    M: String,
    C_prime: String,
    C_dblprime_bound: String,
    C_dblprime_measured: String,
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    z: Vec<[String; 2]>,
    z_last: Option<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
struct CheckJson {
    name: String,
    delta: Option<String>,
    pass: bool,
    value: String,
    bound: String,
    margin: String,
    witness_point: Option<WitnessJson>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    schema_version: u32,
    problem_digest: String,
    seed: u64,
    type_report: TypeReportJson,
    diagonal_model: Option<DiagonalModelJson>,
    constants: Option<ConstantsJson>,
    checks: Vec<CheckJson>,
    overall: bool,
}

fn complex_json(c: Complex<f64>) -> [String; 2] {
    [fmt_f64(c.re), fmt_f64(c.im)]
}

fn complex_from(v: &[String; 2]) -> Result<Complex<f64>, ReportError> {
    Ok(Complex::new(parse_f64("witness_point", &v[0])?, parse_f64("witness_point", &v[1])?))
}

pub fn type_report_json(status: &TypeStatus) -> serde_json::Value {
    serde_json::to_value(type_json(status)).expect("plain data serializes")
}

fn type_json(status: &TypeStatus) -> TypeReportJson {
    match status {
        TypeStatus::Finite(r) => TypeReportJson {
            finite: true,
            failing_coordinate: None,
            pure_powers: Some(r.pure_powers.clone()),
            one_type: Some(r.one_type),
            multiplicity: Some(r.multiplicity),
            epsilon: Some(fmt_q(r.epsilon)),
            bounds: Some(BoundsJson { lower: fmt_q(r.lower_bound), upper: fmt_q(r.upper_bound) }),
        },
        TypeStatus::NotFinite { coordinate } => TypeReportJson {
            finite: false,
            failing_coordinate: Some(*coordinate),
            pure_powers: None,
            one_type: None,
            multiplicity: None,
            epsilon: None,
            bounds: None,
        },
    }
}

fn type_from(j: TypeReportJson) -> Result<TypeStatus, ReportError> {
    let missing = |field: &'static str| ReportError::Field { field, value: "null".into() };
    if !j.finite {
        return Ok(TypeStatus::NotFinite {
            coordinate: j.failing_coordinate.ok_or_else(|| missing("failing_coordinate"))?,
        });
    }
    let bounds = j.bounds.ok_or_else(|| missing("bounds"))?;
    Ok(TypeStatus::Finite(TypeReport {
        pure_powers: j.pure_powers.ok_or_else(|| missing("pure_powers"))?,
        one_type: j.one_type.ok_or_else(|| missing("one_type"))?,
        multiplicity: j.multiplicity.ok_or_else(|| missing("multiplicity"))?,
        epsilon: parse_q("epsilon", &j.epsilon.ok_or_else(|| missing("epsilon"))?)?,
        lower_bound: parse_q("bounds", &bounds.lower)?,
        upper_bound: parse_q("bounds", &bounds.upper)?,
    }))
}

fn check_json(r: &CheckRecord) -> CheckJson {
    CheckJson {
        name: r.kind.name().to_string(),
        delta: r.delta.map(fmt_f64),
        pass: r.passed,
        value: fmt_f64(r.value),
        bound: fmt_f64(r.bound),
        margin: fmt_f64(r.margin),
        witness_point: r.witness.as_ref().map(|w| WitnessJson {
            z: w.z.iter().map(|c| complex_json(*c)).collect(),
            z_last: w.z_last.map(complex_json),
        }),
    }
}

pub fn check_record_json(r: &CheckRecord) -> serde_json::Value {
    serde_json::to_value(check_json(r)).expect("plain data serializes")
}

fn check_from(j: CheckJson) -> Result<CheckRecord, ReportError> {
    let kind = CheckKind::from_name(&j.name).ok_or(ReportError::Field { field: "name", value: j.name.clone() })?;
    let witness = match j.witness_point {
        None => None,
        Some(w) => Some(Witness {
            z: w.z.iter().map(complex_from).collect::<Result<_, _>>()?,
            z_last: w.z_last.as_ref().map(complex_from).transpose()?,
        }),
    };
    Ok(CheckRecord {
        kind,
        delta: j.delta.map(|d| parse_f64("delta", &d)).transpose()?,
        passed: j.pass,
        value: parse_f64("value", &j.value)?,
        bound: parse_f64("bound", &j.bound)?,
        margin: parse_f64("margin", &j.margin)?,
        witness,
    })
}

/// Pretty-printed JSON with a trailing newline; byte-identical for equal certificates.
pub fn certificate_to_json(cert: &Certificate) -> String {
    let j = CertificateJson {
        schema_version: cert.schema_version,
        problem_digest: cert.problem_digest.clone(),
        seed: cert.seed,
        type_report: type_json(&cert.type_status),
        diagonal_model: cert.diagonal_model.as_ref().map(|m| DiagonalModelJson {
            pure_powers: m.pure_powers.clone(),
            weights: m.weights.iter().map(|&x| fmt_f64(x)).collect(),
        }),
        constants: cert.constants.as_ref().map(|k| ConstantsJson {
            c: fmt_f64(k.c),
            d: fmt_f64(k.d),
            C: fmt_f64(k.big_c),
            M: fmt_f64(k.big_m),
            C_prime: fmt_f64(k.c_prime),
            C_dblprime_bound: fmt_f64(k.c_dblprime_bound),
            C_dblprime_measured: fmt_f64(k.c_dblprime_measured),
        }),
        checks: cert.checks.iter().map(check_json).collect(),
        overall: cert.overall,
    };
    let mut s = serde_json::to_string_pretty(&j).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn certificate_from_json(text: &str) -> Result<Certificate, ReportError> {
    let j: CertificateJson = serde_json::from_str(text)?;
    let constants = match j.constants {
        None => None,
        Some(k) => Some(Constants {
            c: parse_f64("c", &k.c)?,
            d: parse_f64("d", &k.d)?,
            big_c: parse_f64("C", &k.C)?,
            big_m: parse_f64("M", &k.M)?,
            c_prime: parse_f64("C_prime", &k.C_prime)?,
            c_dblprime_bound: parse_f64("C_dblprime_bound", &k.C_dblprime_bound)?,
            c_dblprime_measured: parse_f64("C_dblprime_measured", &k.C_dblprime_measured)?,
        }),
    };
    let diagonal_model = match j.diagonal_model {
        None => None,
        Some(m) => Some(DiagonalModel {
            pure_powers: m.pure_powers,
            weights: m.weights.iter().map(|s| parse_f64("weights", s)).collect::<Result<_, _>>()?,
        }),
    };
    Ok(Certificate {
        schema_version: j.schema_version,
        problem_digest: j.problem_digest,
        seed: j.seed,
        type_status: type_from(j.type_report)?,
        diagonal_model,
        constants,
        checks: j.checks.into_iter().map(check_from).collect::<Result<_, _>>()?,
        overall: j.overall,
    })
}

/// One row of a radial scan along a coordinate axis.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub delta: f64,
    /// 1-based.
    pub coordinate: usize,
    pub radius: f64,
    /// `|z_i|² / τ_i²`.
    pub t: f64,
    pub exact_a: f64,
    pub paper_a: f64,
    /// `exact_a · δ^{1/m_i} − C`; independent of `δ`.
    pub margin: f64,
}

pub const SCAN_HEADER: &str = "delta,coordinate,radius,t,exact_a,paper_a,margin";

/// Diagonal resolve entries along each axis at `|z_i| = s τ_i`,
/// `s = 0, 0.01, …, 2`.
pub fn scan_rows(w: &WeightFamily<f64>, delta: Delta<f64>) -> Vec<ScanRow> {
    let n = w.dim();
    let mut rows = Vec::with_capacity(201 * n);
    for (i, &m) in w.pure_powers().iter().enumerate() {
        let tau = delta.tau(m);
        let scale = delta.get().powf(1.0 / f64::from(m));
        for k in 0..=200 {
            let s = f64::from(k) / 100.0;
            let mut z = vec![Complex::new(0.0, 0.0); n];
            z[i] = Complex::new(s * tau, 0.0);
            let exact_a = w.diagonal_entries(&z, delta, true)[i];
            let paper_a = w.diagonal_entries(&z, delta, false)[i];
            rows.push(ScanRow {
                delta: delta.get(),
                coordinate: i + 1,
                radius: s * tau,
                t: s * s,
                exact_a,
                paper_a,
                margin: exact_a * scale - w.big_c(),
            });
        }
    }
    rows
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut s = String::from(SCAN_HEADER);
    s.push('\n');
    for r in rows {
        let f = [r.delta, r.radius, r.t, r.exact_a, r.paper_a, r.margin].map(fmt_f64);
        s += &format!("{},{},{},{},{},{},{}\n", f[0], r.coordinate, f[1], f[2], f[3], f[4], f[5]);
    }
    s
}
