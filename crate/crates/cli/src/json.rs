//! Canonical JSON forms for coordinates, matrices, and reports.
//!
//! Rationals are strings, written `"p/q"` with `q > 0` on output (the
//! denominator is always present, so `3` serializes as `"3/1"`); input
//! accepts `"p"` too. All objects are built as `serde_json::Value`
//! maps, which keep keys sorted, so output bytes are stable for fixed
//! inputs.

use serde_json::{json, Map, Value};

use tpdilog_core::identities::IdentityReport;
use tpdilog_core::rational::{format_expanded, parse_rational};
use tpdilog_core::{BigFloat, JacobiCoords, Rational, SquareMatrix};

/// CLI-facing error: everything here is an input problem (exit 2).
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for InputError {}

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

pub fn coords_to_value(c: &JacobiCoords) -> Value {
    let mut x = Map::new();
    for ((i, j), v) in c.iter() {
        x.insert(format!("{i},{j}"), Value::String(format_expanded(v)));
    }
    json!({ "n": c.n(), "x": Value::Object(x) })
}

pub fn coords_from_value(v: &Value) -> Result<JacobiCoords, InputError> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("coords object needs an integer \"n\""))? as usize;
    let x = v
        .get("x")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("coords object needs an \"x\" map"))?;
    let mut pairs = Vec::new();
    for (key, val) in x {
        let (i, j) = key
            .split_once(',')
            .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
            .ok_or_else(|| bad(format!("bad coordinate key {key:?}")))?;
        let s = val
            .as_str()
            .ok_or_else(|| bad(format!("coordinate {key:?} must be a string rational")))?;
        let r = parse_rational(s).map_err(|e| bad(format!("coordinate {key:?}: {e}")))?;
        pairs.push(((i, j), r));
    }
    JacobiCoords::new(n, &pairs).map_err(|e| bad(format!("invalid coordinates: {e}")))
}

pub fn matrix_to_value(m: &SquareMatrix<Rational>) -> Value {
    let n = m.n();
    let rows: Vec<Value> = (1..=n)
        .map(|i| {
            Value::Array(
                (1..=n)
                    .map(|j| Value::String(format_expanded(m.at(i, j))))
                    .collect(),
            )
        })
        .collect();
    json!({ "entries": rows, "n": n })
}

pub fn matrix_from_value(v: &Value) -> Result<SquareMatrix<Rational>, InputError> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("matrix object needs an integer \"n\""))? as usize;
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("matrix object needs an \"entries\" array"))?;
    if entries.len() != n {
        return Err(bad(format!("expected {n} rows, got {}", entries.len())));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, row) in entries.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| bad(format!("row {} is not an array", i + 1)))?;
        if row.len() != n {
            return Err(bad(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
        }
        let mut out = Vec::with_capacity(n);
        for (j, cell) in row.iter().enumerate() {
            let s = cell
                .as_str()
                .ok_or_else(|| bad(format!("entry ({},{}) must be a string", i + 1, j + 1)))?;
            out.push(
                parse_rational(s)
                    .map_err(|e| bad(format!("entry ({},{}): {e}", i + 1, j + 1)))?,
            );
        }
        rows.push(out);
    }
    SquareMatrix::from_rows(rows).map_err(|e| bad(format!("invalid matrix: {e}")))
}

/// Either accepted input form, detected by its keys.
pub enum Payload {
    Coords(JacobiCoords),
    Matrix(SquareMatrix<Rational>),
}

pub fn payload_from_value(v: &Value) -> Result<Payload, InputError> {
    if v.get("x").is_some() {
        Ok(Payload::Coords(coords_from_value(v)?))
    } else if v.get("entries").is_some() {
        Ok(Payload::Matrix(matrix_from_value(v)?))
    } else {
        Err(bad("input must be a coords object (\"x\") or a matrix object (\"entries\")"))
    }
}

/// Report serialization. Residuals are six-digit scientific strings,
/// `"0"` when exactly zero; elapsed time stays out so bytes depend only
/// on `(seed, precision, version)`.
pub fn report_to_value(
    r: &IdentityReport,
    suite: &str,
    seed: u64,
    precision_bits: u32,
    tolerance: &BigFloat,
) -> Value {
    let identities: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "max_residual": c.max_residual.to_sci(6),
                "name": c.name,
                "pass": c.pass,
            })
        })
        .collect();
    json!({
        "identities": identities,
        "n": r.n,
        "precision_bits": precision_bits,
        "seed": seed,
        "suite": suite,
        "tolerance": tolerance.to_sci(6),
        "trials": r.trials,
    })
}

/// Merges reports produced by `report_to_value`: same suite and n
/// required; residual strings max out per identity name, passes are
/// conjoined, trials add.
pub fn merge_report_values(reports: &[Value]) -> Result<Value, InputError> {
    let first = reports.first().ok_or_else(|| bad("no reports to merge"))?;
    let mut out = first
        .as_object()
        .ok_or_else(|| bad("report must be an object"))?
        .clone();
    let key_of = |v: &Value, k: &str| -> Result<Value, InputError> {
        v.get(k).cloned().ok_or_else(|| bad(format!("report missing {k:?}")))
    };
    let mut trials = key_of(first, "trials")?
        .as_u64()
        .ok_or_else(|| bad("trials must be an integer"))?;
    let mut idents: Vec<(String, BigFloat, bool)> = Vec::new();
    let collect = |v: &Value, idents: &mut Vec<(String, BigFloat, bool)>| -> Result<(), InputError> {
        for item in v
            .get("identities")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("report missing \"identities\""))?
        {
            let name = item
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("identity missing name"))?
                .to_string();
            let res = item
                .get("max_residual")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("identity missing max_residual"))?;
            let res = BigFloat::from_decimal_str(res, 64)
                .map_err(|e| bad(format!("bad residual {res:?}: {e}")))?;
            let pass = item
                .get("pass")
                .and_then(Value::as_bool)
                .ok_or_else(|| bad("identity missing pass"))?;
            match idents.iter_mut().find(|(n, _, _)| *n == name) {
                Some((_, r, p)) => {
                    if res > *r {
                        *r = res;
                    }
                    *p &= pass;
                }
                None => idents.push((name, res, pass)),
            }
        }
        Ok(())
    };
    collect(first, &mut idents)?;
    for v in &reports[1..] {
        for field in ["suite", "n", "precision_bits"] {
            if v.get(field) != first.get(field) {
                return Err(bad(format!("cannot merge reports with different {field:?}")));
            }
        }
        trials += key_of(v, "trials")?
            .as_u64()
            .ok_or_else(|| bad("trials must be an integer"))?;
        collect(v, &mut idents)?;
    }
    out.insert("trials".into(), json!(trials));
    out.insert(
        "identities".into(),
        Value::Array(
            idents
                .into_iter()
                .map(|(name, res, pass)| {
                    json!({ "max_residual": res.to_sci(6), "name": name, "pass": pass })
                })
                .collect(),
        ),
    );
    Ok(Value::Object(out))
}

/// Stable textual form: pretty JSON plus trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}
