//! JSON records: reading weight and divisor files, and rendering results.
//!
//! Rationals are always `"p/q"` strings. Every top-level record carries
//! `schema_version`.

use parabolic::cone::{ConeInequality, InequalityKind, Membership, ModelDescriptor, WeakFanoReport};
use parabolic::crossing::{CrossingReport, DominanceTrace, Side, SplittingType};
use parabolic::rational;
use parabolic::walls::{Wall, WallCrossing};
use parabolic::{BigRational, DivisorClass, ParabolicWeight, SchubertIndex};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Failure while reading an input record. Kept apart from library errors so
/// the exit code can tell a malformed file from a mathematical refusal.
#[derive(Debug)]
pub enum InputError {
    Io(String),
    Malformed(String),
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, InputError> {
    obj.get(key).ok_or_else(|| InputError::Malformed(format!("missing field `{key}`")))
}

fn uint(obj: &Map<String, Value>, key: &str) -> Result<usize, InputError> {
    field(obj, key)?.as_u64().map(|x| x as usize).ok_or_else(|| InputError::Malformed(format!("`{key}` must be a nonnegative integer")))
}

fn object(text: &str) -> Result<Map<String, Value>, InputError> {
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(InputError::Malformed("expected a JSON object".into())),
        Err(e) => Err(InputError::Malformed(e.to_string())),
    }
}

pub fn read_file(path: &str) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::Io(format!("{path}: {e}")))
}

/// `{"r": .., "n": .., "weights": [["p/q", ...], ...]}` with `n` rows of `r - 1`
/// strings. Returns the raw rows; the caller decides between interior and
/// formal weights.
pub fn parse_weight_rows(text: &str) -> Result<(usize, Vec<Vec<BigRational>>), InputError> {
    let obj = object(text)?;
    let (r, n) = (uint(&obj, "r")?, uint(&obj, "n")?);
    let rows = field(&obj, "weights")?.as_array().ok_or_else(|| InputError::Malformed("`weights` must be an array".into()))?;
    if rows.len() != n {
        return Err(InputError::Malformed(format!("`n` is {n} but `weights` has {} rows", rows.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| InputError::Malformed(format!("row {} must be an array", i + 1)))?;
        if row.len() + 1 != r {
            return Err(InputError::Malformed(format!("`r` is {r} but row {} has {} entries", i + 1, row.len())));
        }
        let mut parsed = Vec::with_capacity(row.len());
        for x in row {
            match x {
                Value::String(s) => parsed.push(rational::parse(s).map_err(|e| InputError::Malformed(e.to_string()))?),
                Value::Number(num) if num.is_f64() => {
                    return Err(InputError::Malformed(format!("float {num} rejected; write weights as \"p/q\" strings")));
                }
                other => return Err(InputError::Malformed(format!("weight {other} must be a \"p/q\" string"))),
            }
        }
        out.push(parsed);
    }
    Ok((r, out))
}

/// `{"r": .., "n": .., "level": .., "lambdas": [[..], ...]}` with integers.
pub fn parse_divisor(text: &str) -> Result<(usize, i64, Vec<Vec<i64>>), InputError> {
    let obj = object(text)?;
    let (r, n) = (uint(&obj, "r")?, uint(&obj, "n")?);
    let level = field(&obj, "level")?.as_i64().ok_or_else(|| InputError::Malformed("`level` must be an integer".into()))?;
    let rows = field(&obj, "lambdas")?.as_array().ok_or_else(|| InputError::Malformed("`lambdas` must be an array".into()))?;
    if rows.len() != n {
        return Err(InputError::Malformed(format!("`n` is {n} but `lambdas` has {} rows", rows.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| InputError::Malformed(format!("row {} must be an array", i + 1)))?;
        let parsed: Option<Vec<i64>> = row.iter().map(Value::as_i64).collect();
        out.push(parsed.ok_or_else(|| InputError::Malformed(format!("row {} must hold integers", i + 1)))?);
    }
    Ok((r, level, out))
}

/// Top-level record: `schema_version`, `command`, then `body`'s fields.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

pub fn rat(x: &BigRational) -> Value {
    json!(rational::format(x))
}

fn rat_rows(rows: &[Vec<BigRational>]) -> Value {
    Value::Array(rows.iter().map(|row| Value::Array(row.iter().map(rat).collect())).collect())
}

/// Same shape as a weight file.
pub fn weight(w: &ParabolicWeight) -> Value {
    json!({ "r": w.r(), "n": w.n(), "weights": rat_rows(w.rows()) })
}

/// Same shape as a divisor file.
pub fn divisor(d: &DivisorClass) -> Value {
    json!({ "r": d.r(), "n": d.n(), "level": d.level(), "lambdas": d.lambdas() })
}

fn subsets(js: &[SchubertIndex]) -> Value {
    Value::Array(js.iter().map(|j| json!(j.elements())).collect())
}

pub fn wall(w: &Wall) -> Value {
    json!({ "s": w.s(), "d": w.d(), "subsets": subsets(w.subsets()), "label": w.to_string() })
}

pub fn crossing(c: &WallCrossing) -> Value {
    json!({
        "param": rat(&c.param),
        "simple": c.is_simple(),
        "walls": c.walls.iter().map(wall).collect::<Vec<_>>(),
    })
}

fn splitting(t: &SplittingType) -> Value {
    json!(t.degrees())
}

fn side(s: Side) -> &'static str {
    match s {
        Side::Minus => "minus",
        Side::Plus => "plus",
    }
}

pub fn report(r: &CrossingReport) -> Value {
    json!({
        "wall": wall(&r.wall),
        "kind": r.kind.tag(),
        "dim_M": r.dim_m,
        "dim_Y": r.dim_y,
        "ext_minus": r.ext_minus,
        "ext_plus": r.ext_plus,
        "dim_Y_minus": r.dim_y_minus,
        "dim_Y_plus": r.dim_y_plus,
        "empty_side": r.empty_side.map(side),
        "generic_stratum": r.generic_stratum,
        "sub_splitting": splitting(&r.sub_splitting),
        "quot_splitting": splitting(&r.quot_splitting),
    })
}

pub fn trace(t: &DominanceTrace) -> Value {
    json!({
        "dominant": t.dominant,
        "initial_rho": t.initial_rho,
        "final_rho": t.final_rho,
        "blow_ups": t.blow_ups(),
        "blow_downs": t.blow_downs(),
        "bounded_search": t.bounded,
        "steps": t.steps.iter().map(|(c, rep)| json!({ "param": rat(c), "report": report(rep) })).collect::<Vec<_>>(),
    })
}

pub fn inequality(i: &ConeInequality) -> Value {
    let mut v = json!({
        "kind": i.kind.tag(),
        "level_coeff": i.level_coeff,
        "lambda_coeffs": i.lambda_coeffs,
    });
    let extra = match &i.kind {
        InequalityKind::Ordering { point, step } => json!({ "point": point + 1, "step": step }),
        InequalityKind::Level { point } => json!({ "point": point + 1 }),
        InequalityKind::Gw { s, d, subsets: js, invariant } => {
            json!({ "certificate": { "s": s, "d": d, "subsets": subsets(js), "invariant": invariant.to_string() } })
        }
    };
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

pub fn membership(m: &Membership) -> Value {
    json!({ "inside": m.inside, "violated": m.violated.as_ref().map(inequality) })
}

pub fn model(m: &ModelDescriptor) -> Value {
    let body = match m {
        ModelDescriptor::Interior { weight: w } => json!({ "weight": weight(w) }),
        ModelDescriptor::SharedContraction { walls } => json!({
            "note": "wall divisor: model is the shared contraction",
            "walls": walls.iter().map(wall).collect::<Vec<_>>(),
        }),
        ModelDescriptor::Product { s, sub_degree, sub, quot } => json!({
            "s": s,
            "sub_degree": sub_degree,
            "sub_weight": weight(sub),
            "quot_weight": weight(quot),
        }),
        ModelDescriptor::PartialFlag { point, step, rows } => json!({ "point": point + 1, "step": step, "rows": rat_rows(rows) }),
        ModelDescriptor::DegreeShift { point, rows } => json!({ "point": point + 1, "degree": -1, "rows": rat_rows(rows) }),
    };
    let mut v = json!({ "model": m.tag() });
    if let (Value::Object(a), Value::Object(b)) = (&mut v, body) {
        a.extend(b);
    }
    v
}

pub fn fano(rep: &WeakFanoReport) -> Value {
    json!({
        "r": rep.r,
        "n": rep.n,
        "weight": weight(&rep.weight),
        "passes": rep.passes(),
        "expected_rho": rep.expected_rho,
        "blow_down_walls": rep.blow_downs,
        "boundary_walls": rep.boundary_walls,
        "certificates": rep.certificates.iter().map(|(s, d, ok)| json!({ "s": s, "d": d, "no_blowdown": ok })).collect::<Vec<_>>(),
        "trace": trace(&rep.trace),
    })
}
