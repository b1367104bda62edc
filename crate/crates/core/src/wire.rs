//! JSON wire formats.
//!
//! Rationals travel as `[numerator, denominator]` integer pairs of arbitrary
//! size, so no floating-point number ever enters the pipeline.
//!
//! ```text
//! GrassmannNumber  = [ { "mask": u32, "re": [n, d], "im": [n, d] }, ... ]
//! polynomial       = [ GrassmannNumber, ... ]            // coefficient of z^k at index k
//! SATransform      = { "generators": L, "f": poly, "chi": poly, "psi": poly, "g": poly }
//! ReducedPair      = { "generators": L, "g": poly, "psi": poly, "spin": 1 | -1,
//!                      "f0"?: GrassmannNumber, "chi0"?: GrassmannNumber }
//! RationalComponent = { "num": poly, "den": poly }
//! Superfield       = { "a": RationalComponent, "b": RationalComponent }
//! ```
//!
//! Terms are emitted in ascending mask order and fractions in lowest terms,
//! so serializing, parsing and serializing again is byte-identical.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Number, Value};

use crate::grassmann::{GrassmannNumber, Parity, MAX_GENERATORS};
use crate::poly::ComponentFunction;
use crate::rational::RationalComponent;
use crate::reduction::{ReducedPair, Spin};
use crate::scalar::GaussianRational;
use crate::superfield::Superfield;
use crate::supermatrix::TangentMatrix;
use crate::transform::SATransform;

/// A malformed document, annotated with where the problem sits: a
/// `line:column` position for syntax errors, a JSON path otherwise.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{location}: {message}")]
pub struct WireError {
    pub location: String,
    pub message: String,
}

impl WireError {
    fn at(path: &str, message: impl Into<String>) -> Self {
        Self { location: if path.is_empty() { "$".into() } else { format!("${path}") }, message: message.into() }
    }
}

type WireResult<T> = Result<T, WireError>;

pub fn parse_document(text: &str) -> WireResult<Value> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let message = full.rsplit_once(" at line ").map_or(full.as_str(), |(m, _)| m).to_string();
        WireError { location: format!("line {} column {}", e.line(), e.column()), message }
    })
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn big(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

fn ratio_to_json(r: &BigRational) -> Value {
    json!([big(r.numer()), big(r.denom())])
}

pub fn grassmann_to_json(x: &GrassmannNumber) -> Value {
    Value::Array(
        x.terms()
            .map(|(mask, c)| json!({ "mask": mask, "re": ratio_to_json(&c.re()), "im": ratio_to_json(&c.im()) }))
            .collect(),
    )
}

pub fn poly_to_json(p: &ComponentFunction) -> Value {
    Value::Array(p.coeffs().iter().map(grassmann_to_json).collect())
}

pub fn rational_to_json(r: &RationalComponent) -> Value {
    json!({ "num": poly_to_json(r.num()), "den": poly_to_json(&r.den()) })
}

pub fn superfield_to_json(f: &Superfield) -> Value {
    json!({ "a": rational_to_json(f.a()), "b": rational_to_json(f.b()) })
}

pub fn matrix_to_json(m: &TangentMatrix) -> Value {
    json!({
        "a": superfield_to_json(&m.a),
        "b": superfield_to_json(&m.b),
        "c": superfield_to_json(&m.c),
        "d": superfield_to_json(&m.d),
    })
}

pub fn transform_to_json(t: &SATransform) -> Value {
    json!({
        "generators": t.generator_count(),
        "f": poly_to_json(t.f()),
        "chi": poly_to_json(t.chi()),
        "psi": poly_to_json(t.psi()),
        "g": poly_to_json(t.g()),
    })
}

pub fn reduced_pair_to_json(p: &ReducedPair) -> Value {
    json!({
        "generators": p.generator_count(),
        "g": poly_to_json(&p.g),
        "psi": poly_to_json(&p.psi),
        "spin": p.spin.value(),
        "f0": grassmann_to_json(&p.f0),
        "chi0": grassmann_to_json(&p.chi0),
    })
}

fn integer(v: &Value, path: &str) -> WireResult<BigInt> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            BigInt::from_str(&s).map_err(|_| WireError::at(path, format!("expected an integer, found {s}")))
        }
        _ => Err(WireError::at(path, "expected an integer")),
    }
}

fn small_integer(v: &Value, path: &str) -> WireResult<i64> {
    let n = integer(v, path)?;
    i64::try_from(n).map_err(|_| WireError::at(path, "integer out of range"))
}

fn ratio_from_json(v: &Value, path: &str) -> WireResult<BigRational> {
    let items = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| WireError::at(path, "expected [numerator, denominator]"))?;
    let num = integer(&items[0], &format!("{path}[0]"))?;
    let den = integer(&items[1], &format!("{path}[1]"))?;
    if den.is_zero() {
        return Err(WireError::at(&format!("{path}[1]"), "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn object<'a>(v: &'a Value, path: &str) -> WireResult<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| WireError::at(path, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> WireResult<&'a Value> {
    obj.get(key).ok_or_else(|| WireError::at(path, format!("missing field \"{key}\"")))
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> WireResult<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(WireError::at(path, format!("unknown field \"{k}\""))),
        None => Ok(()),
    }
}

pub fn grassmann_from_json(v: &Value, generators: usize, path: &str) -> WireResult<GrassmannNumber> {
    let items = v.as_array().ok_or_else(|| WireError::at(path, "expected a list of terms"))?;
    let mut terms = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let obj = object(item, &p)?;
        reject_unknown(obj, &["mask", "re", "im"], &p)?;
        let mask = u32::try_from(small_integer(field(obj, "mask", &p)?, &format!("{p}.mask"))?)
            .map_err(|_| WireError::at(&format!("{p}.mask"), "mask must be a nonnegative 32-bit integer"))?;
        let re = ratio_from_json(field(obj, "re", &p)?, &format!("{p}.re"))?;
        let im = match obj.get("im") {
            Some(v) => ratio_from_json(v, &format!("{p}.im"))?,
            None => BigRational::zero(),
        };
        terms.push((mask, GaussianRational::new(re, im)));
    }
    GrassmannNumber::from_terms(generators, terms).map_err(|e| WireError::at(path, e.to_string()))
}

pub fn poly_from_json(v: &Value, parity: Parity, generators: usize, path: &str) -> WireResult<ComponentFunction> {
    let items = v.as_array().ok_or_else(|| WireError::at(path, "expected a list of coefficients"))?;
    let coeffs = items
        .iter()
        .enumerate()
        .map(|(k, c)| grassmann_from_json(c, generators, &format!("{path}[{k}]")))
        .collect::<WireResult<Vec<_>>>()?;
    ComponentFunction::new(parity, generators, coeffs).map_err(|e| WireError::at(path, e.to_string()))
}

fn generators_of(obj: &Map<String, Value>, path: &str) -> WireResult<usize> {
    let p = format!("{path}.generators");
    let n = small_integer(field(obj, "generators", path)?, &p)?;
    usize::try_from(n)
        .ok()
        .filter(|n| *n <= MAX_GENERATORS)
        .ok_or_else(|| WireError::at(&p, format!("generator count must lie in 0..={MAX_GENERATORS}")))
}

pub fn transform_from_json(v: &Value, path: &str) -> WireResult<SATransform> {
    let obj = object(v, path)?;
    reject_unknown(obj, &["generators", "f", "chi", "psi", "g"], path)?;
    let n = generators_of(obj, path)?;
    let poly = |key: &str, parity| poly_from_json(field(obj, key, path)?, parity, n, &format!("{path}.{key}"));
    let f = poly("f", Parity::Even)?;
    let chi = poly("chi", Parity::Odd)?;
    let psi = poly("psi", Parity::Odd)?;
    let g = poly("g", Parity::Even)?;
    SATransform::new(f, chi, psi, g).map_err(|e| WireError::at(path, e.to_string()))
}

pub fn reduced_pair_from_json(v: &Value, path: &str) -> WireResult<ReducedPair> {
    let obj = object(v, path)?;
    reject_unknown(obj, &["generators", "g", "psi", "spin", "f0", "chi0"], path)?;
    let n = generators_of(obj, path)?;
    let g = poly_from_json(field(obj, "g", path)?, Parity::Even, n, &format!("{path}.g"))?;
    let psi = poly_from_json(field(obj, "psi", path)?, Parity::Odd, n, &format!("{path}.psi"))?;
    let spin_path = format!("{path}.spin");
    let spin = Spin::from_value(small_integer(field(obj, "spin", path)?, &spin_path)?)
        .ok_or_else(|| WireError::at(&spin_path, "spin must be 1 or -1"))?;
    let constant = |key: &str| match obj.get(key) {
        Some(v) => grassmann_from_json(v, n, &format!("{path}.{key}")),
        None => Ok(GrassmannNumber::zero(n)),
    };
    let f0 = constant("f0")?;
    let chi0 = constant("chi0")?;
    ReducedPair::with_constants(g, psi, spin, f0, chi0).map_err(|e| WireError::at(path, e.to_string()))
}
