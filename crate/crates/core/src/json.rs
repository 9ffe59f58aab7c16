//! JSON forms shared by the library and the CLI. Integers are written as
//! decimal strings and read from either strings or plain JSON numbers.
//!
//! A partition is one of
//! `{"parts": ["3","1"]}`, `{"rle": [["3","2"],["1","1"]]}` (value, count),
//! or a symbolic column vector
//! `{"columns": true, "segments": [{"len","a","b","c"}], "overlay": {"i": "v"}}`.
//! A triple is `{"lambda": P, "mu": P, "pi": P}`.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::partition::{Partition, PartitionTriple};
use crate::segmented::{Segment, SegmentedSequence, Shape};

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, got {v}"))
}

pub fn uint(v: &Value) -> Result<BigUint> {
    match v {
        Value::String(s) => BigUint::from_str(s.trim()).map_err(|_| bad("a nonnegative integer", v)),
        Value::Number(n) => n.as_u64().map(BigUint::from).ok_or_else(|| bad("a nonnegative integer", v)),
        _ => Err(bad("a nonnegative integer", v)),
    }
}

pub fn int(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| bad("an integer", v)),
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("an integer", v)),
        _ => Err(bad("an integer", v)),
    }
}

pub fn small(v: &Value) -> Result<usize> {
    use num_traits::ToPrimitive;
    uint(v)?.to_usize().ok_or_else(|| bad("a machine-size integer", v))
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

pub fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what, v))
}

pub fn num(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

pub fn rle_to_json(runs: &[(BigUint, BigUint)]) -> Value {
    Value::Array(runs.iter().map(|(v, m)| json!([num(v), num(m)])).collect())
}

pub fn rle_from_json(v: &Value) -> Result<Vec<(BigUint, BigUint)>> {
    array(v, "a run list")?
        .iter()
        .map(|run| match run.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((uint(a)?, uint(b)?)),
            _ => Err(bad("a [value, count] pair", run)),
        })
        .collect()
}

pub fn partition_to_json(p: &Partition) -> Value {
    json!({ "rle": rle_to_json(p.rle()) })
}

pub fn partition_from_json(v: &Value) -> Result<Partition> {
    if let Some(parts) = v.get("parts") {
        let runs: Result<Vec<_>> = array(parts, "a part list")?
            .iter()
            .map(|x| Ok((uint(x)?, BigUint::from(1u8))))
            .collect();
        return Partition::from_rle(runs?);
    }
    if let Some(rle) = v.get("rle") {
        return Partition::from_rle(rle_from_json(rle)?);
    }
    if let Value::String(s) = v {
        return s.parse();
    }
    Err(bad("a partition ({parts} or {rle})", v))
}

pub fn sequence_to_json(s: &SegmentedSequence) -> Value {
    let segments: Vec<Value> = s
        .segments()
        .iter()
        .map(|g| json!({ "len": num(&g.len), "a": num(&g.a), "b": num(&g.b), "c": num(&g.c) }))
        .collect();
    let overlay: Map<String, Value> = s.overlay().iter().map(|(i, d)| (i.to_string(), num(d))).collect();
    json!({ "segments": segments, "overlay": overlay })
}

pub fn sequence_from_json(v: &Value) -> Result<SegmentedSequence> {
    let mut s = SegmentedSequence::new();
    for g in array(field(v, "segments")?, "a segment list")? {
        s.push(Segment { len: uint(field(g, "len")?)?, a: int(field(g, "a")?)?, b: int(field(g, "b")?)?, c: int(field(g, "c")?)? });
    }
    if let Some(o) = v.get("overlay") {
        let o = o.as_object().ok_or_else(|| bad("an overlay object", o))?;
        for (i, d) in o {
            let i = BigUint::from_str(i).map_err(|_| Error::Parse(format!("bad overlay index {i:?}")))?;
            s.add_at(i, int(d)?)?;
        }
    }
    Ok(s)
}

pub fn shape_to_json(s: &Shape) -> Value {
    match s {
        Shape::Explicit(p) => partition_to_json(p),
        Shape::Columns(c) => {
            let mut v = sequence_to_json(c);
            v["columns"] = Value::Bool(true);
            v
        }
    }
}

pub fn shape_from_json(v: &Value) -> Result<Shape> {
    if v.get("segments").is_some() {
        if v.get("columns").and_then(Value::as_bool) != Some(true) {
            return Err(Error::Parse("symbolic shapes must set \"columns\": true".into()));
        }
        return Shape::from_columns(sequence_from_json(v)?);
    }
    partition_from_json(v).map(Shape::Explicit)
}

pub fn triple_to_json(t: &PartitionTriple) -> Value {
    json!({
        "lambda": partition_to_json(t.lambda()),
        "mu": partition_to_json(t.mu()),
        "pi": partition_to_json(t.pi()),
    })
}

pub fn triple_from_json(v: &Value) -> Result<PartitionTriple> {
    PartitionTriple::new(
        partition_from_json(field(v, "lambda")?)?,
        partition_from_json(field(v, "mu")?)?,
        partition_from_json(field(v, "pi")?)?,
    )
}
