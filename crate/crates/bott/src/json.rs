//! JSON interchange formats.
//!
//! Objects are built from `serde_json::Value`, whose map type keeps keys
//! sorted, so every document is emitted in one canonical order. Integers whose
//! magnitude exceeds `2^53 - 1` are written as decimal strings; both forms are
//! accepted on input.

use std::collections::BTreeSet;

use bott_core::bundles::QuotientPresentation;
use bott_core::charts::DualChart;
use bott_core::classify::{Classification, Rejection, RejectionCode, Witness};
use bott_core::cohomology::RingPresentation;
use bott_core::linalg::{IntMatrix, Vector};
use bott_core::poset::Poset;
use bott_core::{
    BinaryCode, BottFan, CharacterBundle, CohomologyClass, Fan, GeneralFan, IntegralSequence, LaurentMonomial,
    SupportFunctionData, UnimodularMap,
};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};

/// Largest magnitude emitted as a JSON number.
pub const MAX_SAFE_INTEGER: i64 = (1 << 53) - 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Invalid(#[from] bott_core::Error),
}

pub type Result<T> = std::result::Result<T, FormatError>;

fn schema<T>(msg: impl Into<String>) -> Result<T> {
    Err(FormatError::Schema(msg.into()))
}

pub fn int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) if x.abs() <= MAX_SAFE_INTEGER => Value::from(x),
        _ => Value::String(v.to_string()),
    }
}

pub fn vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector(m.row(r))).collect())
}

pub fn parse_int(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(x), _) => Ok(BigInt::from(x)),
            (None, Some(x)) => Ok(BigInt::from(x)),
            _ => schema(format!("{what}: expected an integer, got {n}")),
        },
        Value::String(s) => {
            let digits = s.strip_prefix('-').unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return schema(format!("{what}: {s:?} is not a decimal integer"));
            }
            Ok(s.parse().expect("validated digits"))
        }
        other => schema(format!("{what}: expected an integer, got {other}")),
    }
}

pub fn parse_usize(v: &Value, what: &str) -> Result<usize> {
    let x = parse_int(v, what)?;
    if x.is_negative() {
        return schema(format!("{what}: must be non-negative"));
    }
    x.to_usize().map_or_else(|| schema(format!("{what}: too large")), Ok)
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().map_or_else(|| schema(format!("{what}: expected an array")), Ok)
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().map_or_else(|| schema(format!("{what}: expected an object")), Ok)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key).map_or_else(|| schema(format!("{what}: missing key {key:?}")), Ok)
}

/// Rejects keys outside `allowed`.
fn only_keys(obj: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => schema(format!("{what}: unknown key {k:?}")),
        None => Ok(()),
    }
}

pub fn parse_vector(v: &Value, what: &str) -> Result<Vector> {
    array(v, what)?.iter().map(|x| parse_int(x, what)).collect()
}

pub fn parse_matrix(v: &Value, what: &str) -> Result<IntMatrix> {
    let rows: Vec<Vector> = array(v, what)?.iter().map(|r| parse_vector(r, what)).collect::<Result<_>>()?;
    if rows.is_empty() {
        return schema(format!("{what}: empty matrix"));
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return schema(format!("{what}: ragged rows"));
    }
    Ok(IntMatrix::from_rows(&rows))
}

pub fn sequence(c: &IntegralSequence) -> Value {
    let entries: Vec<Value> = c.off_diagonal().map(|(i, j, v)| json!([i, j, int(v)])).collect();
    json!({ "n": c.height(), "c": entries })
}

pub fn parse_sequence(v: &Value) -> Result<IntegralSequence> {
    let obj = object(v, "sequence")?;
    only_keys(obj, &["n", "c"], "sequence")?;
    let n = parse_usize(field(obj, "n", "sequence")?, "sequence.n")?;
    let entries = match obj.get("c") {
        None => Vec::new(),
        Some(c) => array(c, "sequence.c")?
            .iter()
            .map(|e| {
                let t = array(e, "sequence.c entry")?;
                if t.len() != 3 {
                    return schema("sequence.c entry: expected [i, j, value]");
                }
                let i = parse_usize(&t[0], "sequence.c i")?;
                let j = parse_usize(&t[1], "sequence.c j")?;
                Ok(((i, j), parse_int(&t[2], "sequence.c value")?))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(IntegralSequence::new(n, entries)?)
}

pub fn poset(p: &Poset) -> Value {
    let relation: Vec<Value> = p.covering_pairs().into_iter().map(|(i, j)| json!([i, j])).collect();
    json!({ "n": p.size(), "relation": relation })
}

pub fn parse_poset(v: &Value) -> Result<Poset> {
    let obj = object(v, "poset")?;
    only_keys(obj, &["n", "relation"], "poset")?;
    let n = parse_usize(field(obj, "n", "poset")?, "poset.n")?;
    let pairs = array(field(obj, "relation", "poset")?, "poset.relation")?
        .iter()
        .map(|e| {
            let t = array(e, "poset.relation entry")?;
            if t.len() != 2 {
                return schema("poset.relation entry: expected [i, j]");
            }
            Ok((parse_usize(&t[0], "poset i")?, parse_usize(&t[1], "poset j")?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poset::new(n, pairs)?)
}

fn rays_and_cones<F: Fan + ?Sized>(fan: &F) -> (Value, Value) {
    let rays = Value::Array(fan.rays().iter().map(|r| vector(r)).collect());
    let cones = Value::Array(fan.cones().into_iter().map(|c| json!(c)).collect());
    (rays, cones)
}

pub fn general_fan<F: Fan + ?Sized>(fan: &F) -> Value {
    let (rays, cones) = rays_and_cones(fan);
    json!({ "dim": fan.dim(), "rays": rays, "cones": cones })
}

/// A Bott fan also carries the general-fan keys, so it can be fed back to
/// any command that reads a fan.
pub fn bott_fan(fan: &BottFan) -> Value {
    let (rays, cones) = rays_and_cones(fan);
    json!({
        "sequence": sequence(&fan.sequence().restrict(fan.k()).expect("k <= n")),
        "k": fan.k(),
        "dim": fan.k(),
        "rays": rays,
        "cones": cones,
    })
}

pub fn parse_general_fan(v: &Value) -> Result<GeneralFan> {
    let obj = object(v, "fan")?;
    only_keys(obj, &["dim", "rays", "cones", "sequence", "k"], "fan")?;
    let dim = parse_usize(field(obj, "dim", "fan")?, "fan.dim")?;
    let rays = array(field(obj, "rays", "fan")?, "fan.rays")?
        .iter()
        .map(|r| parse_vector(r, "fan.rays"))
        .collect::<Result<Vec<_>>>()?;
    let cones = array(field(obj, "cones", "fan")?, "fan.cones")?
        .iter()
        .map(|c| array(c, "fan.cones")?.iter().map(|r| parse_usize(r, "fan.cones")).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    Ok(GeneralFan::new(dim, rays, cones)?)
}

pub fn code(w: &BinaryCode) -> Value {
    Value::String(w.to_string())
}

pub fn parse_code(v: &Value) -> Result<BinaryCode> {
    match v {
        Value::String(s) => Ok(s.parse()?),
        _ => schema("code: expected a string of 0s and 1s"),
    }
}

pub fn chart(ch: &DualChart) -> Value {
    let upsilon: Vec<Value> = ch.upsilon.iter().map(|u| vector(u)).collect();
    let phi: Vec<Value> = ch.phi.iter().map(|p| vector(p.exponents())).collect();
    json!({ "w": code(&ch.code), "upsilon": upsilon, "phi": phi })
}

pub fn parse_chart(v: &Value) -> Result<DualChart> {
    let obj = object(v, "chart")?;
    only_keys(obj, &["w", "upsilon", "phi"], "chart")?;
    let code = parse_code(field(obj, "w", "chart")?)?;
    let rows = |key: &str| -> Result<Vec<Vector>> {
        array(field(obj, key, "chart")?, key)?.iter().map(|r| parse_vector(r, key)).collect()
    };
    let upsilon = rows("upsilon")?;
    let phi = rows("phi")?.into_iter().map(LaurentMonomial).collect();
    Ok(DualChart { code, upsilon, phi })
}

pub fn character(b: &CharacterBundle) -> Value {
    vector(b.exponents())
}

pub fn parse_character(v: &Value) -> Result<CharacterBundle> {
    Ok(CharacterBundle(parse_vector(v, "bundle")?))
}

pub fn quotient(q: &QuotientPresentation) -> Value {
    json!({
        "k": q.k,
        "kernel_generators": q.kernel_generators.iter().map(|g| vector(g)).collect::<Vec<_>>(),
        "action_weights": q.action_weights.iter().map(|g| vector(g)).collect::<Vec<_>>(),
    })
}

pub fn support_function(h: &SupportFunctionData) -> Value {
    let values: Vec<Value> = h.values().map(|(i, g, v)| json!([i, g, int(v)])).collect();
    let cones: Vec<Value> = h.cone_vectors().iter().map(|r| vector(r)).collect();
    json!({ "values": values, "cone_vectors": cones })
}

/// `{"values": [[i, gamma, v], ...]}` as triples for [`bott_core::support_function`].
pub fn parse_support_values(v: &Value) -> Result<Vec<(usize, u8, BigInt)>> {
    let obj = object(v, "support")?;
    only_keys(obj, &["values", "cone_vectors"], "support")?;
    array(field(obj, "values", "support")?, "support.values")?
        .iter()
        .map(|e| {
            let t = array(e, "support.values entry")?;
            if t.len() != 3 {
                return schema("support.values entry: expected [i, gamma, value]");
            }
            let i = parse_usize(&t[0], "support i")?;
            let gamma = parse_usize(&t[1], "support gamma")?;
            if gamma > 1 {
                return schema("support gamma: expected 0 or 1");
            }
            Ok((i, gamma as u8, parse_int(&t[2], "support value")?))
        })
        .collect()
}

pub fn ring_presentation(p: &RingPresentation) -> Value {
    let relations: Vec<Value> = p
        .relations
        .iter()
        .enumerate()
        .map(|(j, coeffs)| {
            let mut row = vec![Value::from(j + 1)];
            row.extend(coeffs.iter().map(int));
            Value::Array(row)
        })
        .collect();
    json!({ "k": p.k, "relations": relations })
}

/// `[[indices, coeff], ...]` in increasing monomial order.
pub fn class(a: &CohomologyClass) -> Value {
    Value::Array(a.terms().map(|(s, v)| json!([s, int(v)])).collect())
}

pub fn parse_class(k: usize, v: &Value) -> Result<CohomologyClass> {
    let terms = array(v, "class")?
        .iter()
        .map(|e| {
            let t = array(e, "class term")?;
            if t.len() != 2 {
                return schema("class term: expected [indices, coefficient]");
            }
            let set = array(&t[0], "class indices")?
                .iter()
                .map(|x| parse_usize(x, "class index"))
                .collect::<Result<Vec<_>>>()?;
            Ok((set, parse_int(&t[1], "class coefficient")?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CohomologyClass::from_terms(k, terms)?)
}

pub fn classification(c: &Classification) -> Value {
    json!({
        "sequence": sequence(&c.sequence),
        "order": c.order,
        "rays": c.rays,
        "map": matrix(c.map.matrix()),
    })
}

pub fn parse_classification(v: &Value) -> Result<Classification> {
    let obj = object(v, "classification")?;
    only_keys(obj, &["sequence", "order", "rays", "map"], "classification")?;
    let sequence = parse_sequence(field(obj, "sequence", "classification")?)?;
    let indices = |key: &str| -> Result<Vec<usize>> {
        array(field(obj, key, "classification")?, key)?.iter().map(|x| parse_usize(x, key)).collect()
    };
    let order = indices("order")?;
    let rays = indices("rays")?;
    let map = UnimodularMap::new(parse_matrix(field(obj, "map", "classification")?, "map")?)?;
    let n = sequence.height();
    if order.len() != n || rays.len() != 2 * n || map.dim() != n {
        return schema("classification: sizes disagree with the sequence height");
    }
    if order.iter().collect::<BTreeSet<_>>().len() != n || rays.iter().collect::<BTreeSet<_>>().len() != 2 * n {
        return schema("classification: order and rays must not repeat");
    }
    Ok(Classification { sequence, order, rays, map })
}

pub fn witness(w: &Witness) -> Value {
    match w {
        Witness::None => Value::Null,
        Witness::Ray(r) => json!({ "ray": r }),
        Witness::Cone(c) => json!({ "cone": c }),
        Witness::RayCount(n) => json!({ "ray_count": n }),
        Witness::MissingCone(rays) => json!({ "missing_cone": rays }),
    }
}

pub fn parse_witness(v: &Value) -> Result<Witness> {
    if v.is_null() {
        return Ok(Witness::None);
    }
    let obj = object(v, "witness")?;
    let (key, val) = match obj.iter().next() {
        Some(kv) if obj.len() == 1 => kv,
        _ => return schema("witness: expected a single key"),
    };
    Ok(match key.as_str() {
        "ray" => Witness::Ray(parse_usize(val, "witness.ray")?),
        "cone" => Witness::Cone(parse_usize(val, "witness.cone")?),
        "ray_count" => Witness::RayCount(parse_usize(val, "witness.ray_count")?),
        "missing_cone" => Witness::MissingCone(
            array(val, "witness.missing_cone")?.iter().map(|x| parse_usize(x, "witness ray")).collect::<Result<_>>()?,
        ),
        other => return schema(format!("witness: unknown kind {other:?}")),
    })
}

pub fn rejection(r: &Rejection) -> Value {
    json!({ "reject": r.code.as_str(), "reason": r.code.reason(), "witness": witness(&r.witness) })
}

pub fn parse_rejection(v: &Value) -> Result<Rejection> {
    let obj = object(v, "rejection")?;
    only_keys(obj, &["reject", "reason", "witness"], "rejection")?;
    let code = match field(obj, "reject", "rejection")? {
        Value::String(s) => RejectionCode::parse(s).map_or_else(|| schema(format!("unknown rejection code {s:?}")), Ok)?,
        _ => return schema("rejection.reject: expected a string"),
    };
    let witness = parse_witness(obj.get("witness").unwrap_or(&Value::Null))?;
    Ok(Rejection { code, witness })
}

/// Pretty-printed with a trailing newline.
pub fn emit(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}
