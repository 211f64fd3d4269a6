//! JSON documents: parsing of polyhedra, vector lists, affine subspaces and
//! lines, and rendering of results.
//!
//! A scalar is written `"p/q"` (or a bare integer) for a rational, and
//! `["p/q", "r/s"]` for `p/q + (r/s)·√k`, with `k` declared once per document.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::lattice::UnimodularMap;
use crate::maximality::{Certification, LowDimVerdict, MaximalityCertificate, Refutation};
use crate::maximalize::SplitForm;
use crate::num::{format_rational, is_squarefree, parse_rational, Rational, Scalar};
use crate::polyhedron::{AffineSubspace, Inequality, Polyhedron};
use crate::search::{ApproxResult, Witness};

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Rational(RawRational),
    Pair(RawRational, RawRational),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawInt {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
struct RawInequality {
    a: Vec<RawScalar>,
    b: RawScalar,
}

#[derive(Deserialize)]
struct RawPolyhedron {
    d: usize,
    k: Option<u64>,
    ineqs: Vec<RawInequality>,
}

#[derive(Deserialize)]
struct RawVectors {
    d: usize,
    vectors: Vec<Vec<RawInt>>,
}

#[derive(Deserialize)]
struct RawAffine {
    d: usize,
    k: Option<u64>,
    point: Vec<RawScalar>,
    #[serde(default)]
    directions: Vec<Vec<RawScalar>>,
}

#[derive(Deserialize)]
struct RawLine {
    d: usize,
    k: Option<u64>,
    u: Vec<RawScalar>,
}

#[derive(Deserialize)]
struct RawLemma2 {
    d: usize,
    k: Option<u64>,
    ineqs: Vec<RawInequality>,
    #[serde(default)]
    space: Vec<Vec<RawScalar>>,
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::schema(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

/// Resolves the radicand from the document and an optional override flag.
fn field(doc: Option<u64>, flag: Option<u64>) -> Result<Option<u64>> {
    let k = match (doc, flag) {
        (Some(a), Some(b)) if a != b => return Err(Error::MixedFields(a, b)),
        (a, b) => a.or(b),
    };
    match k {
        Some(k) if !is_squarefree(k) || k < 2 => Err(Error::InvalidRadicand(k)),
        k => Ok(k),
    }
}

fn rational(raw: &RawRational, path: &str) -> Result<Rational> {
    match raw {
        RawRational::Int(n) => Ok(Rational::from_integer(BigInt::from(*n))),
        RawRational::Text(s) => parse_rational(s).map_err(|e| Error::schema(path, e.to_string())),
    }
}

fn scalar(raw: &RawScalar, k: Option<u64>, path: &str) -> Result<Scalar> {
    match raw {
        RawScalar::Rational(r) => Ok(Scalar::from(rational(r, path)?)),
        RawScalar::Pair(a, b) => {
            let a = rational(a, &format!("{path}[0]"))?;
            let b = rational(b, &format!("{path}[1]"))?;
            if num_traits::Zero::is_zero(&b) {
                return Ok(Scalar::from(a));
            }
            let k = k.ok_or_else(|| Error::schema(path, "irrational component requires a declared k"))?;
            Scalar::new(a, b, k)
        }
    }
}

fn vector(raw: &[RawScalar], d: usize, k: Option<u64>, path: &str) -> Result<Vec<Scalar>> {
    if raw.len() != d {
        return Err(Error::schema(path, format!("expected {d} entries, found {}", raw.len())));
    }
    raw.iter().enumerate().map(|(i, x)| scalar(x, k, &format!("{path}[{i}]"))).collect()
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::schema("d", "dimension must be positive"));
    }
    if d > crate::MAX_DIM {
        return Err(Error::DimensionTooLarge(d));
    }
    Ok(())
}

fn inequalities(raw: &[RawInequality], d: usize, k: Option<u64>) -> Result<Vec<Inequality>> {
    raw.iter()
        .enumerate()
        .map(|(i, q)| {
            let normal = vector(&q.a, d, k, &format!("ineqs[{i}].a"))?;
            if normal.iter().all(Scalar::is_zero) {
                return Err(Error::schema(format!("ineqs[{i}].a"), "normal vector is zero"));
            }
            Ok(Inequality::new(normal, scalar(&q.b, k, &format!("ineqs[{i}].b"))?))
        })
        .collect()
}

/// `{"d": 2, "k": 2, "ineqs": [{"a": ["1", ["0","1"]], "b": "1/10"}]}`.
pub fn parse_polyhedron(text: &str, k_flag: Option<u64>) -> Result<Polyhedron> {
    let raw: RawPolyhedron = from_json(text)?;
    check_dim(raw.d)?;
    let k = field(raw.k, k_flag)?;
    Polyhedron::new(raw.d, inequalities(&raw.ineqs, raw.d, k)?)
}

/// `{"d": 2, "vectors": [[0, 1], [2, 3]]}`.
pub fn parse_vectors(text: &str) -> Result<Vec<Vec<BigInt>>> {
    let raw: RawVectors = from_json(text)?;
    raw.vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if v.len() != raw.d {
                return Err(Error::schema(format!("vectors[{i}]"), format!("expected {} entries", raw.d)));
            }
            v.iter()
                .enumerate()
                .map(|(j, x)| match x {
                    RawInt::Int(n) => Ok(BigInt::from(*n)),
                    RawInt::Text(s) => s
                        .trim()
                        .parse()
                        .map_err(|_| Error::schema(format!("vectors[{i}][{j}]"), format!("{s:?} is not an integer"))),
                })
                .collect()
        })
        .collect()
}

/// `{"d": 2, "k": 2, "point": ["0","0"], "directions": [[["0","-1"], "1"]]}`.
pub fn parse_affine(text: &str, k_flag: Option<u64>) -> Result<AffineSubspace> {
    let raw: RawAffine = from_json(text)?;
    check_dim(raw.d)?;
    let k = field(raw.k, k_flag)?;
    let point = vector(&raw.point, raw.d, k, "point")?;
    let directions = raw
        .directions
        .iter()
        .enumerate()
        .map(|(i, v)| vector(v, raw.d, k, &format!("directions[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    AffineSubspace::new(point, directions)
}

/// `{"d": 2, "k": 2, "u": ["1", ["0","1"]]}`.
pub fn parse_line(text: &str, k_flag: Option<u64>) -> Result<Vec<Scalar>> {
    let raw: RawLine = from_json(text)?;
    check_dim(raw.d)?;
    let k = field(raw.k, k_flag)?;
    vector(&raw.u, raw.d, k, "u")
}

/// A polyhedron document with an extra `"space"` list of basis vectors.
pub fn parse_lemma2(text: &str, k_flag: Option<u64>) -> Result<(Polyhedron, Vec<Vec<Scalar>>)> {
    let raw: RawLemma2 = from_json(text)?;
    check_dim(raw.d)?;
    let k = field(raw.k, k_flag)?;
    let p = Polyhedron::new(raw.d, inequalities(&raw.ineqs, raw.d, k)?)?;
    let space = raw
        .space
        .iter()
        .enumerate()
        .map(|(i, v)| vector(v, raw.d, k, &format!("space[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok((p, space))
}

/// Integer window `"w"` (the cube `[-w, w]^d`) or `"x0,x1,y0,y1,…"`.
pub fn parse_window(text: &str, d: usize) -> Result<Vec<(BigInt, BigInt)>> {
    let parts: Vec<BigInt> = text
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::schema("window", format!("{s:?} is not an integer"))))
        .collect::<Result<_>>()?;
    let bounds = match parts.len() {
        1 => vec![(-parts[0].clone(), parts[0].clone()); d],
        n if n == 2 * d => parts.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect(),
        n => return Err(Error::schema("window", format!("expected 1 or {} integers, found {n}", 2 * d))),
    };
    if bounds.iter().any(|(lo, hi)| lo > hi) {
        return Err(Error::schema("window", "lower bound exceeds upper bound"));
    }
    Ok(bounds)
}

pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(n) => json!(n),
        None => json!(x.to_string()),
    }
}

pub fn ints_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn scalar_json(x: &Scalar) -> Value {
    match x.as_rational() {
        Some(r) => json!(format_rational(r)),
        None => json!([format_rational(x.rational_part()), format_rational(x.irrational_part())]),
    }
}

pub fn scalars_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

/// A polyhedron document, readable back by [`parse_polyhedron`].
pub fn polyhedron_json(p: &Polyhedron) -> Value {
    let mut doc = Map::new();
    doc.insert("d".into(), json!(p.dim()));
    if let Some(k) = p.radicand() {
        doc.insert("k".into(), json!(k));
    }
    let ineqs: Vec<Value> =
        p.inequalities().iter().map(|q| json!({"a": scalars_json(&q.normal), "b": scalar_json(&q.rhs)})).collect();
    doc.insert("ineqs".into(), Value::Array(ineqs));
    Value::Object(doc)
}

pub fn witness_json(w: &Witness) -> Value {
    json!({"z": ints_json(&w.point), "location": w.location.to_string()})
}

pub fn certificate_json(c: &MaximalityCertificate) -> Value {
    json!({
        "polyhedron": polyhedron_json(&c.polyhedron),
        "facet_witnesses": c.facet_witnesses.iter()
            .map(|w| json!({"facet": w.facet, "z": ints_json(&w.point)}))
            .collect::<Vec<_>>(),
        "rec_basis": c.rec_basis.iter().map(|v| ints_json(v)).collect::<Vec<_>>(),
        "m": c.facet_count,
        "r": c.lineality_dim,
    })
}

pub fn refutation_json(r: &Refutation) -> Value {
    match r {
        Refutation::NotLatticeFree { witness } => json!({"kind": "not-lattice-free", "witness": witness_json(witness)}),
        Refutation::NotMaximal { enlargement, reason } => {
            json!({"kind": "not-maximal", "reason": reason, "enlargement": polyhedron_json(enlargement)})
        }
    }
}

pub fn certification_json(c: &Certification) -> Value {
    match c {
        Certification::Certified(cert) => json!({"maximal": true, "certificate": certificate_json(cert)}),
        Certification::Refuted(r) => json!({"maximal": false, "refutation": refutation_json(r)}),
    }
}

pub fn lowdim_json(v: &LowDimVerdict) -> Value {
    match v {
        LowDimVerdict::Maximal { normal } => json!({"maximal": true, "normal": scalars_json(normal)}),
        LowDimVerdict::NotMaximal { reason, enlargement } => json!({
            "maximal": false,
            "reason": reason,
            "enlargement": enlargement.as_ref().map(polyhedron_json),
        }),
    }
}

pub fn map_json(m: &UnimodularMap) -> Value {
    json!({
        "forward": m.forward.rows().iter().map(|r| ints_json(r)).collect::<Vec<_>>(),
        "inverse": m.inverse.rows().iter().map(|r| ints_json(r)).collect::<Vec<_>>(),
    })
}

pub fn split_json(s: &SplitForm) -> Value {
    json!({"r": s.r, "map": map_json(&s.map), "k_prime": polyhedron_json(&s.k_prime)})
}

pub fn approx_json(a: &ApproxResult) -> Value {
    json!({
        "t": a.t,
        "z": ints_json(&a.z),
        "x": scalars_json(&a.x),
        "residual": scalar_json(&a.residual()),
    })
}
