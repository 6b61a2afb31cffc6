//! Canonical JSON for every document type: objects carry their keys in
//! sorted order (the default `serde_json` map is a BTree map), all numbers
//! are integers, and rationals travel as `"a/b"` strings in lowest terms
//! with positive denominator. Serialization then parsing is the identity,
//! and serialization is byte-stable.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::abelmap::{Divisor, DivisorLocus, LocusComparison};
use crate::curvemodel::poly::Poly;
use crate::curvemodel::{CurveConfig, CurveError, LimitSeries};
use crate::linked::{Expansion, LinkedSequence, NumericalProfile};
use crate::numfn::{NumericalFunction, Triple};
use crate::qlinalg::{FieldSpec, Matrix, QlinalgError, Scalar, Subspace};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Linalg(#[from] QlinalgError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Linked(#[from] crate::linked::LinkedError),
    #[error(transparent)]
    Numerical(#[from] crate::numfn::NumfnError),
}

fn bad(msg: impl Into<String>) -> JsonError {
    JsonError::Malformed(msg.into())
}

fn field_of(value: &Value, key: &str) -> Result<Value, JsonError> {
    value
        .get(key)
        .cloned()
        .ok_or_else(|| bad(format!("missing key {:?}", key)))
}

fn as_u64(value: &Value, what: &str) -> Result<u64, JsonError> {
    value
        .as_u64()
        .ok_or_else(|| bad(format!("{} must be a nonnegative integer", what)))
}

fn as_i64(value: &Value, what: &str) -> Result<i64, JsonError> {
    value
        .as_i64()
        .ok_or_else(|| bad(format!("{} must be an integer", what)))
}

fn as_array<'v>(value: &'v Value, what: &str) -> Result<&'v Vec<Value>, JsonError> {
    value
        .as_array()
        .ok_or_else(|| bad(format!("{} must be an array", what)))
}

pub fn field_to_value(field: &FieldSpec) -> Value {
    match field {
        FieldSpec::Rationals => Value::String("Q".to_string()),
        FieldSpec::PrimeField(p) => json!({ "Fp": p }),
    }
}

pub fn field_from_value(value: &Value) -> Result<FieldSpec, JsonError> {
    match value {
        Value::String(s) if s == "Q" => Ok(FieldSpec::Rationals),
        Value::Object(map) => {
            let p = map
                .get("Fp")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("field object must be {\"Fp\": prime}"))?;
            Ok(FieldSpec::prime(p)?)
        }
        _ => Err(bad("field must be \"Q\" or {\"Fp\": prime}")),
    }
}

pub fn scalar_to_value(s: &Scalar) -> Value {
    match s {
        Scalar::Fp(v) => Value::from(*v),
        Scalar::Rat(_) => Value::String(s.to_string()),
    }
}

pub fn scalar_from_value(field: &FieldSpec, value: &Value) -> Result<Scalar, JsonError> {
    match (field, value) {
        (FieldSpec::PrimeField(p), Value::Number(_)) => {
            let v = as_u64(value, "prime-field entry")?;
            if v >= *p {
                return Err(bad(format!("entry {} is out of range for F_{}", v, p)));
            }
            Ok(Scalar::Fp(v))
        }
        (FieldSpec::Rationals, Value::String(text)) => Ok(Scalar::parse(field, text)?),
        _ => Err(bad("entry does not match the field encoding")),
    }
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(scalar_to_value).collect()))
        .collect();
    json!({
        "field": field_to_value(m.field()),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    })
}

pub fn matrix_from_value(value: &Value) -> Result<Matrix, JsonError> {
    let field = field_from_value(&field_of(value, "field")?)?;
    let rows = as_u64(&field_of(value, "rows")?, "rows")? as usize;
    let cols = as_u64(&field_of(value, "cols")?, "cols")? as usize;
    let entries_value = field_of(value, "entries")?;
    let entry_rows = as_array(&entries_value, "entries")?;
    if entry_rows.len() != rows {
        return Err(bad(format!(
            "expected {} entry rows, got {}",
            rows,
            entry_rows.len()
        )));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in entry_rows {
        let cells = as_array(row, "entry row")?;
        if cells.len() != cols {
            return Err(bad(format!(
                "expected {} entries per row, got {}",
                cols,
                cells.len()
            )));
        }
        for cell in cells {
            entries.push(scalar_from_value(&field, cell)?);
        }
    }
    Ok(Matrix::new(field, rows, cols, entries)?)
}

/// A subspace serializes as its canonical basis matrix.
pub fn subspace_to_value(s: &Subspace) -> Value {
    matrix_to_value(s.basis_matrix())
}

pub fn subspace_from_value(value: &Value) -> Result<Subspace, JsonError> {
    let m = matrix_from_value(value)?;
    Ok(Subspace::from_span_matrix(&m))
}

pub fn linked_to_value(s: &LinkedSequence) -> Value {
    let (lo, hi) = s.window();
    json!({
        "field": field_to_value(s.field()),
        "n": s.dim(),
        "lo": lo,
        "hi": hi,
        "up": s.stored_up().iter().map(matrix_to_value).collect::<Vec<_>>(),
        "dn": s.stored_dn().iter().map(matrix_to_value).collect::<Vec<_>>(),
    })
}

pub fn linked_from_value(value: &Value) -> Result<LinkedSequence, JsonError> {
    let field = field_from_value(&field_of(value, "field")?)?;
    let n = as_u64(&field_of(value, "n")?, "n")? as usize;
    let lo = as_i64(&field_of(value, "lo")?, "lo")?;
    let hi = as_i64(&field_of(value, "hi")?, "hi")?;
    let up_value = field_of(value, "up")?;
    let dn_value = field_of(value, "dn")?;
    let up: Vec<Matrix> = as_array(&up_value, "up")?
        .iter()
        .map(matrix_from_value)
        .collect::<Result<_, _>>()?;
    let dn: Vec<Matrix> = as_array(&dn_value, "dn")?
        .iter()
        .map(matrix_from_value)
        .collect::<Result<_, _>>()?;
    Ok(LinkedSequence::new(field, n, lo, hi, up, dn)?)
}

fn triples_to_value(triples: &[Triple]) -> Value {
    Value::Array(
        triples
            .iter()
            .map(|t| json!([t.p, t.q, t.m]))
            .collect(),
    )
}

fn triples_from_value(value: &Value) -> Result<Vec<Triple>, JsonError> {
    as_array(value, "pqm")?
        .iter()
        .map(|item| {
            let parts = as_array(item, "pqm triple")?;
            if parts.len() != 3 {
                return Err(bad("each pqm entry must be a [p, q, m] triple"));
            }
            Ok(Triple::new(
                as_i64(&parts[0], "p")?,
                as_i64(&parts[1], "q")?,
                as_i64(&parts[2], "m")?,
            ))
        })
        .collect()
}

/// Profiles carry their inclusive window: `pqm` has `hi - lo + 1` triples.
pub fn profile_to_value(p: &NumericalProfile) -> Value {
    let (lo, hi) = p.window();
    json!({
        "n": p.n(),
        "lo": lo,
        "hi": hi,
        "pqm": triples_to_value(p.triples()),
    })
}

pub fn profile_from_value(value: &Value) -> Result<NumericalProfile, JsonError> {
    let n = as_u64(&field_of(value, "n")?, "n")? as usize;
    let lo = as_i64(&field_of(value, "lo")?, "lo")?;
    let hi = as_i64(&field_of(value, "hi")?, "hi")?;
    let triples = triples_from_value(&field_of(value, "pqm")?)?;
    if triples.len() as i64 != hi - lo + 1 {
        return Err(bad("pqm length must equal hi - lo + 1 for a profile"));
    }
    Ok(NumericalProfile::new(n, lo, triples))
}

/// Numerical functions carry their half-open window: `pqm` has `hi - lo`
/// triples.
pub fn function_to_value(f: &NumericalFunction) -> Value {
    let (lo, hi) = f.window();
    json!({
        "n": f.n(),
        "lo": lo,
        "hi": hi,
        "pqm": triples_to_value(f.values()),
    })
}

pub fn function_from_value(value: &Value) -> Result<NumericalFunction, JsonError> {
    let n = as_i64(&field_of(value, "n")?, "n")?;
    let lo = as_i64(&field_of(value, "lo")?, "lo")?;
    let hi = as_i64(&field_of(value, "hi")?, "hi")?;
    let triples = triples_from_value(&field_of(value, "pqm")?)?;
    if triples.len() as i64 != hi - lo {
        return Err(bad("pqm length must equal hi - lo for a numerical function"));
    }
    Ok(NumericalFunction::new(n, lo, triples)?)
}

pub fn series_to_value(g: &LimitSeries) -> Value {
    json!({
        "field": field_to_value(g.config().field()),
        "d": g.config().degree(),
        "delta": g.config().level(),
        "r": g.rank(),
        "V": g.level_spaces().iter().map(subspace_to_value).collect::<Vec<_>>(),
    })
}

pub fn series_from_value(value: &Value) -> Result<LimitSeries, JsonError> {
    let field = field_from_value(&field_of(value, "field")?)?;
    let d = as_u64(&field_of(value, "d")?, "d")? as usize;
    let delta = as_u64(&field_of(value, "delta")?, "delta")? as usize;
    let r = as_u64(&field_of(value, "r")?, "r")? as usize;
    let config = CurveConfig::new(field, d, delta)?;
    let levels_value = field_of(value, "V")?;
    let levels: Vec<Subspace> = as_array(&levels_value, "V")?
        .iter()
        .map(subspace_from_value)
        .collect::<Result<_, _>>()?;
    Ok(LimitSeries::new(config, r, levels)?)
}

fn poly_to_value(p: &Poly) -> Value {
    Value::Array(p.iter().map(scalar_to_value).collect())
}

fn poly_from_value(field: &FieldSpec, value: &Value, what: &str) -> Result<Poly, JsonError> {
    as_array(value, what)?
        .iter()
        .map(|cell| scalar_from_value(field, cell))
        .collect()
}

pub fn divisor_to_value(divisor: &Divisor) -> Value {
    json!({
        "uY": poly_to_value(divisor.u_y()),
        "kQY": divisor.k_qy(),
        "uZ": poly_to_value(divisor.u_z()),
        "kQZ": divisor.k_qz(),
        "kP": divisor.k_p(),
    })
}

pub fn divisor_from_value(field: &FieldSpec, value: &Value) -> Result<Divisor, JsonError> {
    let u_y = poly_from_value(field, &field_of(value, "uY")?, "uY")?;
    let u_z = poly_from_value(field, &field_of(value, "uZ")?, "uZ")?;
    let k_qy = as_u64(&field_of(value, "kQY")?, "kQY")? as usize;
    let k_qz = as_u64(&field_of(value, "kQZ")?, "kQZ")? as usize;
    let k_p = as_u64(&field_of(value, "kP")?, "kP")? as usize;
    if !(u_y.last().is_some_and(|c| c.is_one()) && !u_y[0].is_zero()) {
        return Err(bad("uY must be monic with nonzero constant term"));
    }
    if !(u_z.last().is_some_and(|c| c.is_one()) && !u_z[0].is_zero()) {
        return Err(bad("uZ must be monic with nonzero constant term"));
    }
    Ok(Divisor::new(*field, u_y, k_qy, u_z, k_qz, k_p))
}

pub fn locus_to_value(locus: &DivisorLocus) -> Value {
    json!({
        "points": locus.points.iter().map(divisor_to_value).collect::<Vec<_>>(),
        "S": locus.support.iter().collect::<Vec<_>>(),
        "exact": locus.exact,
    })
}

pub fn comparison_to_value(report: &LocusComparison) -> Value {
    json!({
        "inclusion_holds": report.inclusion_holds,
        "extra_components": report.extra_components.iter().collect::<Vec<_>>(),
        "coarse_exact": report.coarse_exact,
        "refined_exact": report.refined_exact,
        "matched_levels_equal": report.matched_levels_equal,
        "dichotomy_holds": report.dichotomy_holds,
        "coarse": locus_to_value(&report.coarse),
        "refined": locus_to_value(&report.refined),
    })
}

pub fn expansion_to_value(e: &Expansion) -> Value {
    json!({
        "expanded": linked_to_value(&e.sequence),
        "schedule": e.schedule,
    })
}

/// Compact canonical rendering: sorted keys, no whitespace.
pub fn to_canonical_string(value: &Value) -> String {
    serde_json::to_string(value).expect("serialization of plain values cannot fail")
}

/// Pretty rendering with the same key order.
pub fn to_pretty_string(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("serialization of plain values cannot fail")
}

/// Build an error document.
pub fn error_value(message: &str) -> Value {
    let mut map = Map::new();
    map.insert("error".to_string(), Value::String(message.to_string()));
    Value::Object(map)
}
