//! JSON document formats.
//!
//! Field elements serialize as arrays of base-field coefficients, lowest
//! degree first, with prime-field elements as bare integers; points as
//! `[x, y]` or `"O"`; curves as `{"p", "q_modulus", "a"}`. A parameter bundle
//! serializes to one JSON document that is accepted back as the overrides
//! input for exact replay.

use enb_core::curve::Curve;
use enb_core::enb::{EnbParams, Overrides};
use enb_core::field::{Element, Field};
use enb_core::tensor::{ComplexityReport, CyclicVector};
use enb_core::Point;
use serde_json::{json, Map, Value};

use crate::CliError;

pub fn element_to_json(e: &Element) -> Value {
    match e.value() {
        Some(v) => json!(v),
        None => Value::Array(e.coeffs().unwrap().iter().map(element_to_json).collect()),
    }
}

pub fn element_from_json(field: &Field, v: &Value) -> Result<Element, CliError> {
    match v {
        Value::Number(n) => {
            let raw = n
                .as_u64()
                .ok_or_else(|| CliError::usage("element values must be non-negative integers"))?;
            match field.base() {
                None => Ok(field.from_u64(raw)),
                // allow bare integers for prime-subfield values of extensions
                Some(_) => Ok(field.from_u64(raw)),
            }
        }
        Value::Array(items) => {
            let base = field
                .base()
                .ok_or_else(|| CliError::usage("array element for a prime field"))?;
            let coeffs: Result<Vec<Element>, CliError> =
                items.iter().map(|item| element_from_json(base, item)).collect();
            field.from_coeffs(&coeffs?).map_err(CliError::from)
        }
        _ => Err(CliError::usage("malformed field element")),
    }
}

pub fn point_to_json(p: &Point) -> Value {
    match p {
        Point::Infinity => json!("O"),
        Point::Affine(x, y) => Value::Array(vec![element_to_json(x), element_to_json(y)]),
    }
}

pub fn point_from_json(field: &Field, v: &Value) -> Result<Point, CliError> {
    match v {
        Value::String(s) if s == "O" => Ok(Point::Infinity),
        Value::Array(items) if items.len() == 2 => Ok(Point::Affine(
            element_from_json(field, &items[0])?,
            element_from_json(field, &items[1])?,
        )),
        _ => Err(CliError::usage("malformed point; expected [x, y] or \"O\"")),
    }
}

pub fn curve_to_json(curve: &Curve) -> Value {
    let field = curve.field();
    let q_modulus = field
        .modulus()
        .map(|m| Value::Array(m.iter().map(element_to_json).collect()))
        .unwrap_or(Value::Null);
    json!({
        "p": field.characteristic(),
        "q_modulus": q_modulus,
        "a": curve.coefficients().iter().map(element_to_json).collect::<Vec<_>>(),
    })
}

pub fn vector_to_json(v: &CyclicVector) -> Value {
    Value::Array(v.entries().iter().map(element_to_json).collect())
}

pub fn vector_from_json(field: &Field, v: &Value) -> Result<CyclicVector, CliError> {
    let Value::Array(items) = v else {
        return Err(CliError::usage("malformed vector; expected a JSON array"));
    };
    let entries: Result<Vec<Element>, CliError> =
        items.iter().map(|item| element_from_json(field, item)).collect();
    CyclicVector::new(field, entries?).map_err(CliError::from)
}

fn u128_to_json(v: u128) -> Value {
    if v <= (1u128 << 53) {
        json!(v as u64)
    } else {
        json!(v.to_string())
    }
}

/// The full parameter document. Accepted back by [`overrides_from_json`].
pub fn params_to_json(params: &EnbParams, reported_upper: Option<u64>) -> Value {
    json!({
        "q": params.q(),
        "n": params.n(),
        "curve": curve_to_json(params.curve()),
        "torsion": point_to_json(params.torsion()),
        "quotient_curve": curve_to_json(params.isogeny().codomain()),
        "generator": point_to_json(params.generator()),
        "modulus": params.modulus().iter().map(element_to_json).collect::<Vec<_>>(),
        "lifted": point_to_json(params.lifted()),
        "c": element_to_json(params.constant()),
        "a": element_to_json(params.scale()),
        "b": element_to_json(params.offset()),
        "aux": point_to_json(params.aux()),
        "basis": params.basis().iter().map(element_to_json).collect::<Vec<_>>(),
        "nq": u128_to_json(params.existence_index()),
        "nq_advisory": params.advisory(),
        "reported_upper": reported_upper,
    })
}

/// Replay pins parsed from a parameter document (or any subset of one).
/// Derived fields (basis, modulus, lifted point, ...) are recomputed, not
/// read back.
pub struct ParsedOverrides {
    pub overrides: Overrides,
    pub reported_upper: Option<u64>,
    pub q: Option<u64>,
    pub n: Option<u64>,
    pub base_modulus: Option<Vec<u64>>,
}

pub fn overrides_from_json(base: &Field, doc: &Value) -> Result<ParsedOverrides, CliError> {
    let obj = doc
        .as_object()
        .ok_or_else(|| CliError::usage("overrides file must hold a JSON object"))?;
    let mut overrides = Overrides::default();
    if let Some(curve) = obj.get("curve") {
        let a = curve
            .get("a")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::usage("curve override needs an \"a\" array"))?;
        if a.len() != 5 {
            return Err(CliError::usage("curve override needs five coefficients"));
        }
        let coeffs: Result<Vec<Element>, CliError> =
            a.iter().map(|c| element_from_json(base, c)).collect();
        let coeffs = coeffs?;
        overrides.curve = Some(
            <[Element; 5]>::try_from(coeffs)
                .map_err(|_| CliError::usage("curve override needs five coefficients"))?,
        );
    }
    for (key, slot) in [
        ("torsion", 0usize),
        ("generator", 1),
        ("aux", 2),
    ] {
        if let Some(v) = obj.get(key) {
            let p = point_from_json(base, v)?;
            match slot {
                0 => overrides.torsion = Some(p),
                1 => overrides.generator = Some(p),
                _ => overrides.aux = Some(p),
            }
        }
    }
    if let Some(v) = obj.get("a") {
        overrides.scale = Some(element_from_json(base, v)?);
    }
    if let Some(v) = obj.get("b") {
        overrides.offset = Some(element_from_json(base, v)?);
    }
    let base_modulus = match obj.get("curve").and_then(|c| c.get("q_modulus")) {
        Some(Value::Array(items)) => {
            let digits: Result<Vec<u64>, CliError> = items
                .iter()
                .map(|i| {
                    i.as_u64().ok_or_else(|| {
                        CliError::usage("q_modulus coefficients must be integers")
                    })
                })
                .collect();
            Some(digits?)
        }
        _ => None,
    };
    Ok(ParsedOverrides {
        overrides,
        reported_upper: obj.get("reported_upper").and_then(Value::as_u64),
        q: obj.get("q").and_then(Value::as_u64),
        n: obj.get("n").and_then(Value::as_u64),
        base_modulus,
    })
}

/// The complexity report document (full form, used by `exact`).
pub fn report_to_json(report: &ComplexityReport, reported_upper: Option<u64>) -> Value {
    let mut rows = Map::new();
    let n = report.row_weights.len();
    rows.insert("0".into(), vector_to_json(&report.row_first));
    rows.insert("1".into(), vector_to_json(&report.row_second));
    rows.insert("n-1".into(), vector_to_json(&report.row_last));
    let mut doc = json!({
        "R": vector_to_json(&report.special.r),
        "Rx": vector_to_json(&report.special.rx),
        "Rinv": vector_to_json(&report.special.r_inv),
        "iota": vector_to_json(&report.special.iota),
        "middle": report.middle.iter().map(|m| json!({
            "k": m.k,
            "vec": vector_to_json(&m.vector),
            "weight": m.weight,
        })).collect::<Vec<_>>(),
        "middle_sum": report.middle_sum,
        "rows": rows,
        "row_weights": report.row_weights,
        "lower": report.lower,
        "upper": report.upper,
        "exact": report.exact,
        "M": report.m_matrix.iter().map(vector_to_json).collect::<Vec<_>>(),
    });
    let _ = n;
    attach_upper_note(&mut doc, report.upper, reported_upper);
    doc
}

/// The bounds-only document (used by `bounds`).
pub fn bounds_to_json(report: &ComplexityReport, reported_upper: Option<u64>) -> Value {
    let mut doc = json!({
        "R": vector_to_json(&report.special.r),
        "Rx": vector_to_json(&report.special.rx),
        "Rinv": vector_to_json(&report.special.r_inv),
        "middle": report.middle.iter().map(|m| json!({
            "k": m.k,
            "vec": vector_to_json(&m.vector),
            "weight": m.weight,
        })).collect::<Vec<_>>(),
        "middle_sum": report.middle_sum,
        "lower": report.lower,
        "upper": report.upper,
    });
    attach_upper_note(&mut doc, report.upper, reported_upper);
    doc
}

/// When a reported figure disagrees with the formula value, say so.
pub fn upper_note(upper: u64, reported: Option<u64>) -> Option<String> {
    match reported {
        Some(r) if r != upper => Some(format!(
            "reported upper bound {r} differs from the formula value {upper}"
        )),
        _ => None,
    }
}

fn attach_upper_note(doc: &mut Value, upper: u64, reported: Option<u64>) {
    if let Some(note) = upper_note(upper, reported) {
        doc.as_object_mut().unwrap().insert("upper_note".into(), json!(note));
    }
}

/// CSV cell for a field element: a bare integer, or semicolon-joined
/// coefficients in brackets so that cells never contain commas.
pub fn element_to_csv(e: &Element) -> String {
    match e.value() {
        Some(v) => v.to_string(),
        None => {
            let parts: Vec<String> =
                e.coeffs().unwrap().iter().map(element_to_csv).collect();
            format!("[{}]", parts.join(";"))
        }
    }
}
