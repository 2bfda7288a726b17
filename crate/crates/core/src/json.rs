//! JSON encoding and decoding for the CLI payloads. Rationals travel as
//! strings ("3", "-7/2") so nothing passes through floating point; integer
//! JSON numbers are accepted on input for convenience.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::engine::{FuzzSummary, TreeCountReport, VerificationReport};
use crate::error::{Error, Result};
use crate::forest::OrientedForest;
use crate::matrix::Matrix;
use crate::poly::EdgePolynomial;
use crate::{Rational, RationalMatrix, Vertex, WeightedEdge};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses "p" or "p/q" (optionally signed) into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let trimmed = s.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (trimmed, None),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| parse_err(format!("bad integer {num:?}")))?;
    let q: BigInt = match den {
        Some(d) => d.parse().map_err(|_| parse_err(format!("bad integer {d:?}")))?,
        None => BigInt::from(1),
    };
    if q.is_zero() {
        return Err(parse_err(format!("zero denominator in {trimmed:?}")));
    }
    Ok(Rational::new(p, q))
}

pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn object<'v>(v: &'v Value, what: &str) -> Result<&'v Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| parse_err(format!("{what} must be a JSON object")))
}

fn array<'v>(v: &'v Value, what: &str) -> Result<&'v Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what} must be a JSON array")))
}

fn field<'v>(obj: &'v Map<String, Value>, key: &str) -> Result<&'v Value> {
    obj.get(key)
        .ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    field(obj, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("field {key:?} must be a nonnegative integer")))
}

fn vertex_value(v: &Value, what: &str) -> Result<Vertex> {
    v.as_u64()
        .map(|x| x as usize)
        .filter(|&x| x >= 1)
        .ok_or_else(|| parse_err(format!("{what} must be a positive integer")))
}

fn rational_value(v: &Value, what: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(num) => num
            .as_i64()
            .map(|i| Rational::from(BigInt::from(i)))
            .ok_or_else(|| parse_err(format!("{what} must be an integer or \"p/q\" string"))),
        other => Err(parse_err(format!(
            "{what} must be a string or integer, got {other}"
        ))),
    }
}

fn parse_root(text: &str, what: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(format!("{what}: invalid JSON: {e}")))
}

/// Reads {"n": 2, "entries": [["3", "5"], ["-3", "-5"]]}.
pub fn parse_matrix_json(text: &str) -> Result<RationalMatrix> {
    matrix_from_value(&parse_root(text, "matrix")?)
}

pub fn matrix_from_value(v: &Value) -> Result<RationalMatrix> {
    let obj = object(v, "matrix")?;
    let n = usize_field(obj, "n")?;
    let entries = array(field(obj, "entries")?, "\"entries\"")?;
    if entries.len() != n {
        return Err(parse_err(format!(
            "expected {n} rows, got {}",
            entries.len()
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for (ri, row_v) in entries.iter().enumerate() {
        let row = array(row_v, "matrix row")?;
        if row.len() != n {
            return Err(parse_err(format!(
                "row {} has {} entries, expected {n}",
                ri + 1,
                row.len()
            )));
        }
        let mut out = Vec::with_capacity(n);
        for (ci, cell) in row.iter().enumerate() {
            out.push(rational_value(
                cell,
                &format!("entry ({},{})", ri + 1, ci + 1),
            )?);
        }
        rows.push(out);
    }
    Matrix::from_rows(rows).map_err(|e| parse_err(e.to_string()))
}

pub fn matrix_json(m: &RationalMatrix) -> Value {
    let entries: Vec<Value> = (1..=m.rows())
        .map(|i| {
            Value::Array(
                (1..=m.cols())
                    .map(|j| Value::String(rational_string(&m[(i, j)])))
                    .collect(),
            )
        })
        .collect();
    json!({ "n": m.rows(), "entries": entries })
}

/// Reads {"n": 3, "edges": [[1, 2], [2, 3]]}; edges are (parent, child).
pub fn parse_forest_json(text: &str) -> Result<OrientedForest> {
    forest_from_value(&parse_root(text, "forest")?)
}

pub fn forest_from_value(v: &Value) -> Result<OrientedForest> {
    let obj = object(v, "forest")?;
    let n = usize_field(obj, "n")?;
    let edge_list = array(field(obj, "edges")?, "\"edges\"")?;
    let mut edges = Vec::with_capacity(edge_list.len());
    for e in edge_list {
        let pair = array(e, "edge")?;
        if pair.len() != 2 {
            return Err(parse_err("edge must be a [u, v] pair"));
        }
        edges.push((
            vertex_value(&pair[0], "edge tail")?,
            vertex_value(&pair[1], "edge head")?,
        ));
    }
    OrientedForest::from_edges(n, &edges).map_err(|e| parse_err(e.to_string()))
}

pub fn forest_json(f: &OrientedForest) -> Value {
    let edges: Vec<Value> = f.edges().into_iter().map(|(a, b)| json!([a, b])).collect();
    json!({ "n": f.n(), "edges": edges })
}

/// Reads {"n": 3, "edges": [[1, 2, "1/2"], [2, 3, 4]]} into a weighted
/// digraph edge list.
pub fn parse_graph_json(text: &str) -> Result<(usize, Vec<WeightedEdge>)> {
    let v = parse_root(text, "graph")?;
    let obj = object(&v, "graph")?;
    let n = usize_field(obj, "n")?;
    let edge_list = array(field(obj, "edges")?, "\"edges\"")?;
    let mut edges = Vec::with_capacity(edge_list.len());
    for e in edge_list {
        let triple = array(e, "edge")?;
        if triple.len() != 3 {
            return Err(parse_err("edge must be a [u, v, weight] triple"));
        }
        edges.push((
            vertex_value(&triple[0], "edge tail")?,
            vertex_value(&triple[1], "edge head")?,
            rational_value(&triple[2], "edge weight")?,
        ));
    }
    Ok((n, edges))
}

/// Serializes a polynomial as an array of {"coeff", "exponents"} terms in
/// the canonical term order; exponents index the x_i_j variables.
pub fn poly_json(p: &EdgePolynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(exps, coeff)| json!({ "coeff": coeff.to_string(), "exponents": exps }))
        .collect();
    Value::Array(terms)
}

fn report_value<T>(r: &VerificationReport<T>, render: impl Fn(&T) -> Value) -> Value {
    json!({
        "n": r.n,
        "U": r.u.members(),
        "W": r.w.members(),
        "forest_count": r.forest_count,
        "lhs": render(&r.lhs),
        "rhs": render(&r.rhs),
        "match": r.matched,
        "elapsed_ms": r.elapsed.as_millis() as u64,
    })
}

pub fn report_json_numeric(r: &VerificationReport<Rational>) -> Value {
    report_value(r, |x| Value::String(rational_string(x)))
}

pub fn report_json_symbolic(r: &VerificationReport<EdgePolynomial>) -> Value {
    report_value(r, poly_json)
}

/// Timing is intentionally absent: fuzz output is byte-identical per seed.
pub fn fuzz_summary_json(s: &FuzzSummary) -> Value {
    let failures: Vec<Value> = s
        .failures
        .iter()
        .map(|f| json!({ "n": f.n, "U": f.u, "W": f.w, "trial": f.trial }))
        .collect();
    json!({
        "n_max": s.n_max,
        "trials": s.trials,
        "seed": s.seed,
        "entry_bound": s.entry_bound,
        "checks": s.checks,
        "failures": failures,
        "ok": s.failures.is_empty(),
    })
}

pub fn tree_count_json(r: &TreeCountReport) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(r.n));
    obj.insert("root".into(), json!(r.root));
    obj.insert(
        "det_minor".into(),
        Value::String(rational_string(&r.det_minor)),
    );
    if let Some(e) = &r.enumeration {
        obj.insert("tree_count".into(), json!(e.tree_count));
        obj.insert(
            "weight_sum".into(),
            Value::String(rational_string(&e.weight_sum)),
        );
        obj.insert(
            "signed_sum".into(),
            Value::String(rational_string(&e.signed_sum)),
        );
    }
    if let Some(m) = r.matched {
        obj.insert("match".into(), json!(m));
    }
    Value::Object(obj)
}
