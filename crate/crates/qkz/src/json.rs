//! JSON shapes for patterns, polynomials, solutions and reports.
//!
//! Integers that fit in an `i64` are written as JSON numbers, larger ones as
//! decimal strings; readers accept both.

use qkz_core::conjectures::{CheckReport, ReportKind, Status};
use qkz_core::exactalg::{Int, LaurentQ, MultiPoly, TauPoly, Term};
use qkz_core::linkpattern::{LinkPattern, LinkPatternError};
use qkz_core::qkz::{FullSolution, TauSolution, HOMOGENEOUS_SCALE};
use std::io::{BufReader, BufWriter, Read, Write};

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed {what}: {detail}")]
    Malformed { what: &'static str, detail: String },
    #[error("checksum mismatch (stored {stored}, computed {computed})")]
    Checksum { stored: String, computed: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Pattern(#[from] LinkPatternError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn malformed(what: &'static str, detail: impl ToString) -> FormatError {
    FormatError::Malformed {
        what,
        detail: detail.to_string(),
    }
}

pub fn int_to_json(c: &Int) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(c.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<Int, FormatError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Int::small)
            .ok_or_else(|| malformed("integer", n)),
        Value::String(s) => s.parse().map_err(|_| malformed("integer", s)),
        other => Err(malformed("integer", other)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternJson {
    pub size: usize,
    pub arcs: Vec<[usize; 2]>,
    pub unmatched: Option<usize>,
}

impl From<&LinkPattern> for PatternJson {
    fn from(p: &LinkPattern) -> Self {
        PatternJson {
            size: p.size(),
            arcs: p.arcs().into_iter().map(|(a, b)| [a, b]).collect(),
            unmatched: p.unmatched(),
        }
    }
}

impl TryFrom<&PatternJson> for LinkPattern {
    type Error = FormatError;

    fn try_from(j: &PatternJson) -> Result<Self, FormatError> {
        let arcs: Vec<(usize, usize)> = j.arcs.iter().map(|a| (a[0], a[1])).collect();
        let p = LinkPattern::new(j.size, &arcs)?;
        if p.unmatched() != j.unmatched {
            return Err(malformed("pattern", "unmatched point disagrees with arcs"));
        }
        Ok(p)
    }
}

/// Coefficients in ascending powers of τ.
pub fn tau_to_json(p: &TauPoly) -> Value {
    Value::Array(p.coeffs().iter().map(int_to_json).collect())
}

pub fn tau_from_json(v: &Value) -> Result<TauPoly, FormatError> {
    let arr = v.as_array().ok_or_else(|| malformed("tau polynomial", v))?;
    Ok(TauPoly::from_coeffs(
        arr.iter().map(int_from_json).collect::<Result<_, _>>()?,
    ))
}

/// `[[exponent, coefficient], …]` in ascending exponent.
pub fn laurent_to_json(p: &LaurentQ) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!([e, int_to_json(c)])).collect())
}

pub fn laurent_from_json(v: &Value) -> Result<LaurentQ, FormatError> {
    let arr = v
        .as_array()
        .ok_or_else(|| malformed("Laurent polynomial", v))?;
    let mut out = LaurentQ::zero();
    for t in arr {
        let pair = t
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| malformed("Laurent term", t))?;
        let e = pair[0]
            .as_i64()
            .and_then(|e| i32::try_from(e).ok())
            .ok_or_else(|| malformed("q exponent", &pair[0]))?;
        out.add_term(e, &int_from_json(&pair[1])?);
    }
    Ok(out)
}

struct IntOut<'a>(&'a Int);

impl Serialize for IntOut<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.collect_str(self.0),
        }
    }
}

struct LaurentOut<'a>(&'a LaurentQ);

impl Serialize for LaurentOut<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.terms().map(|(e, c)| (e, IntOut(c))))
    }
}

struct TermOut(Term);

impl Serialize for TermOut {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("z", &self.0.exponents)?;
        m.serialize_entry("q", &LaurentOut(&self.0.coeff))?;
        m.end()
    }
}

struct TermsOut<'a>(&'a MultiPoly);

impl Serialize for TermsOut<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.terms().map(TermOut))
    }
}

/// Streams `{"nvars": L, "terms": [{"z": [exponents], "q": Laurent}, …]}`
/// without building a JSON tree; full solutions run to tens of millions of
/// terms.
pub struct MultiPolyOut<'a>(pub &'a MultiPoly);

impl Serialize for MultiPolyOut<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("nvars", &self.0.nvars())?;
        m.serialize_entry("terms", &TermsOut(self.0))?;
        m.end()
    }
}

struct TauOut<'a>(&'a TauPoly);

impl Serialize for TauOut<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.coeffs().iter().map(IntOut))
    }
}

pub fn multipoly_from_json(v: &Value) -> Result<MultiPoly, FormatError> {
    let nvars = v["nvars"]
        .as_u64()
        .ok_or_else(|| malformed("polynomial", "missing nvars"))? as usize;
    if nvars > qkz_core::exactalg::MAX_VARS {
        return Err(malformed("polynomial", "too many variables"));
    }
    let terms = v["terms"]
        .as_array()
        .ok_or_else(|| malformed("polynomial", "missing terms"))?;
    let mut raw = Vec::new();
    for t in terms {
        let z: Vec<u32> = serde_json::from_value(t["z"].clone())?;
        if z.len() != nvars || z.iter().any(|&e| e > qkz_core::exactalg::MAX_EXP) {
            return Err(malformed("monomial", &t["z"]));
        }
        for (e, c) in laurent_from_json(&t["q"])?.terms() {
            raw.push((z.clone(), e, c.clone()));
        }
    }
    Ok(MultiPoly::from_terms(nvars, raw))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Full,
    Tau,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub pattern: PatternJson,
    /// Endpoint tuple of the pattern, or of its even lift for odd sizes.
    pub endpoints: Vec<usize>,
    pub beta: usize,
    pub poly: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    #[serde(rename = "L")]
    pub size: usize,
    pub form: Form,
    pub normalization: Value,
    pub components: Vec<ComponentJson>,
    /// SHA-256 of the compact serialization of `components`.
    pub checksum: String,
}

fn endpoints_of(p: &LinkPattern) -> Result<Vec<usize>, FormatError> {
    let even = if p.size() % 2 == 1 {
        p.lift_odd_to_even()
    } else {
        p.clone()
    };
    Ok(even.to_endpoints()?.values().to_vec())
}

fn checksum(components: &[ComponentJson]) -> Result<String, FormatError> {
    let bytes = serde_json::to_vec(components)?;
    Ok(format!("{:x}", Sha256::digest(bytes)))
}

/// Passes bytes through while hashing them.
struct HashingWriter<W> {
    inner: W,
    hasher: Sha256,
}

impl<W: Write> Write for HashingWriter<W> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let k = self.inner.write(buf)?;
        self.hasher.update(&buf[..k]);
        Ok(k)
    }

    fn flush(&mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}

#[derive(Serialize)]
struct ComponentOut<P> {
    pattern: PatternJson,
    endpoints: Vec<usize>,
    beta: usize,
    poly: P,
}

/// Writes the compact form of a [`SolutionFile`], hashing the component
/// array on the way so that nothing is held in memory twice.
fn write_solution<'a, W: Write, P: Serialize>(
    w: W,
    size: usize,
    form: Form,
    normalization: Value,
    parts: impl Iterator<Item = (&'a LinkPattern, P)>,
) -> Result<(), FormatError> {
    let mut w = BufWriter::new(w);
    write!(
        w,
        "{{\"L\":{size},\"form\":{},\"normalization\":{normalization},\"components\":",
        serde_json::to_string(&form)?
    )?;
    let mut tee = HashingWriter {
        inner: &mut w,
        hasher: Sha256::new(),
    };
    tee.write_all(b"[")?;
    for (k, (p, poly)) in parts.enumerate() {
        if k > 0 {
            tee.write_all(b",")?;
        }
        let c = ComponentOut {
            pattern: p.into(),
            endpoints: endpoints_of(p)?,
            beta: p.box_count(),
            poly,
        };
        serde_json::to_writer(&mut tee, &c)?;
    }
    tee.write_all(b"]")?;
    let digest = tee.hasher.finalize();
    write!(w, ",\"checksum\":\"{digest:x}\"}}")?;
    w.flush()?;
    Ok(())
}

pub fn write_full<W: Write>(s: &FullSolution, w: W) -> Result<(), FormatError> {
    let n = s.size.div_ceil(2);
    let norm = json!({
        "base": format!("component of the fully nested pattern at L = {}", 2 * n),
        "odd": if s.size % 2 == 1 { "z_L = 0 in the solution of size L + 1" } else { "none" },
    });
    let parts = s
        .patterns
        .iter()
        .zip(&s.components)
        .map(|(p, c)| (p, MultiPolyOut(c)));
    write_solution(w, s.size, Form::Full, norm, parts)
}

pub fn write_tau<W: Write>(t: &TauSolution, w: W) -> Result<(), FormatError> {
    let norm = json!({"scale": HOMOGENEOUS_SCALE});
    let parts = t
        .patterns
        .iter()
        .zip(&t.components)
        .map(|(p, c)| (p, TauOut(c)));
    write_solution(w, t.size, Form::Tau, norm, parts)
}

impl SolutionFile {
    pub fn read<R: Read>(r: R) -> Result<Self, FormatError> {
        Ok(serde_json::from_reader(BufReader::new(r))?)
    }

    pub fn verify_checksum(&self) -> Result<(), FormatError> {
        let computed = checksum(&self.components)?;
        if computed != self.checksum {
            return Err(FormatError::Checksum {
                stored: self.checksum.clone(),
                computed,
            });
        }
        Ok(())
    }

    fn patterns(&self) -> Result<Vec<LinkPattern>, FormatError> {
        self.components
            .iter()
            .map(|c| LinkPattern::try_from(&c.pattern))
            .collect()
    }

    pub fn to_full(&self) -> Result<FullSolution, FormatError> {
        if self.form != Form::Full {
            return Err(malformed("solution", "not a full solution"));
        }
        self.verify_checksum()?;
        Ok(FullSolution {
            size: self.size,
            patterns: self.patterns()?,
            components: self
                .components
                .iter()
                .map(|c| multipoly_from_json(&c.poly))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn to_tau(&self) -> Result<TauSolution, FormatError> {
        if self.form != Form::Tau {
            return Err(malformed("solution", "not a tau solution"));
        }
        self.verify_checksum()?;
        Ok(TauSolution {
            size: self.size,
            patterns: self.patterns()?,
            components: self
                .components
                .iter()
                .map(|c| tau_from_json(&c.poly))
                .collect::<Result<_, _>>()?,
        })
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

/// Runtimes are left out unless asked for, so that identical runs produce
/// identical bytes.
pub fn report_to_json(r: &CheckReport, reproduce: &str, with_runtime: bool) -> Value {
    let params: serde_json::Map<String, Value> = r
        .params
        .iter()
        .map(|(k, v)| (k.clone(), Value::from(*v)))
        .collect();
    let mut v = json!({
        "id": r.id,
        "params": params,
        "kind": match r.kind {
            ReportKind::ProvedIdentity => "proved-identity",
            ReportKind::Conjecture => "conjecture",
        },
        "status": status_str(r.status),
        "witness": r.witness,
        "reproduce": reproduce,
    });
    if let (true, Some(t)) = (with_runtime, r.runtime) {
        v["runtime_ms"] = Value::from(t.as_secs_f64() * 1000.0);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use qkz_core::qkz::{homogenize, solve};

    #[test]
    fn pattern_shape() {
        let p = LinkPattern::new(5, &[(4, 5), (1, 2)]).unwrap();
        let v = serde_json::to_value(PatternJson::from(&p)).unwrap();
        assert_eq!(
            v,
            json!({"size": 5, "arcs": [[1, 2], [4, 5]], "unmatched": 3})
        );
        let back: PatternJson = serde_json::from_value(v).unwrap();
        assert_eq!(LinkPattern::try_from(&back).unwrap(), p);
    }

    #[test]
    fn bad_pattern_rejected() {
        let j = PatternJson {
            size: 3,
            arcs: vec![[1, 2]],
            unmatched: Some(1),
        };
        assert!(LinkPattern::try_from(&j).is_err());
        let crossing = PatternJson {
            size: 4,
            arcs: vec![[1, 3], [2, 4]],
            unmatched: None,
        };
        assert!(LinkPattern::try_from(&crossing).is_err());
    }

    #[test]
    fn streamed_polynomial_reads_back() {
        let big: Int = "-98765432109876543210".parse().unwrap();
        let p = MultiPoly::from_terms(
            3,
            [(vec![1, 0, 2], -3, big), (vec![0, 0, 0], 2, Int::small(5))],
        );
        let v = serde_json::to_value(MultiPolyOut(&p)).unwrap();
        assert_eq!(v["terms"][0], json!({"z": [0, 0, 0], "q": [[2, 5]]}));
        assert_eq!(multipoly_from_json(&v).unwrap(), p);
    }

    #[test]
    fn big_integers_as_strings() {
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        let v = int_to_json(&big);
        assert!(v.is_string());
        assert_eq!(int_from_json(&v).unwrap(), big);
        assert_eq!(int_to_json(&Int::small(-7)), json!(-7));
        assert!(int_from_json(&json!(1.5)).is_err());
    }

    fn full_file(s: &FullSolution) -> SolutionFile {
        let mut buf = Vec::new();
        write_full(s, &mut buf).unwrap();
        SolutionFile::read(&buf[..]).unwrap()
    }

    fn tau_file(t: &TauSolution) -> SolutionFile {
        let mut buf = Vec::new();
        write_tau(t, &mut buf).unwrap();
        SolutionFile::read(&buf[..]).unwrap()
    }

    #[test]
    fn solution_round_trips() {
        let s = solve(4).unwrap();
        let f = full_file(&s);
        assert_eq!(f.to_full().unwrap(), s);
        let odd = qkz_core::qkz::reduce_to_odd(&s).unwrap();
        assert_eq!(full_file(&odd).to_full().unwrap(), odd);

        let t = homogenize(&s).unwrap();
        let f = tau_file(&t);
        assert_eq!(f.components[1].poly, json!([1, 0, 1]));
        assert_eq!(f.components[1].endpoints, vec![2]);
        assert_eq!(f.to_tau().unwrap(), t);
        assert!(f.to_full().is_err());
    }

    #[test]
    fn tampered_solution_rejected() {
        let t = homogenize(&solve(4).unwrap()).unwrap();
        let mut f = tau_file(&t);
        f.components[0].poly = json!([0, 2]);
        assert!(matches!(f.to_tau(), Err(FormatError::Checksum { .. })));
    }
}
