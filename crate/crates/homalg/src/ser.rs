//! JSON encoding of the library's objects.
//!
//! All integers (and rationals) are carried as decimal strings so files
//! survive parsers with 53-bit number limits. Encoding is canonical:
//! encode(decode(encode(x))) == encode(x) byte-for-byte when emitted
//! through `to_string` on the returned values with serde_json's default
//! (insertion-ordered) maps — all maps here are built in a fixed key order.

use crate::complex::{ChainMap, Complex};
use crate::dg::{DGAlgebra, DGModule, DgObjects};
use crate::derived::Roof;
use crate::fpmodule::FPModule;
use crate::matrix::{Matrix, Ring, Scalar};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::str::FromStr;

pub type DecodeError = String;

fn scalar_string(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

fn scalar_parse(s: &str) -> Result<Scalar, DecodeError> {
    let parse_int = |t: &str| {
        BigInt::from_str(t).map_err(|_| format!("bad integer literal {:?}", t))
    };
    match s.split_once('/') {
        None => Ok(Scalar::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den == BigInt::from(0) {
                return Err(format!("zero denominator in {:?}", s));
            }
            Ok(Scalar::new(parse_int(n)?, den))
        }
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols()).map(|j| Value::String(scalar_string(m.at(i, j)))).collect(),
            )
        })
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "data": rows })
}

fn field<'a>(v: &'a Value, k: &str) -> Result<&'a Value, DecodeError> {
    v.get(k).ok_or_else(|| format!("missing field {:?}", k))
}

fn usize_field(v: &Value, k: &str) -> Result<usize, DecodeError> {
    field(v, k)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| format!("field {:?} is not a non-negative integer", k))
}

fn i64_field(v: &Value, k: &str) -> Result<i64, DecodeError> {
    field(v, k)?.as_i64().ok_or_else(|| format!("field {:?} is not an integer", k))
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix, DecodeError> {
    let rows = usize_field(v, "rows")?;
    let cols = usize_field(v, "cols")?;
    let data = field(v, "data")?.as_array().ok_or("matrix data must be an array")?;
    if data.len() != rows {
        return Err(format!("matrix claims {} rows, data has {}", rows, data.len()));
    }
    let mut m = Matrix::zero(rows, cols);
    for (i, row) in data.iter().enumerate() {
        let row = row.as_array().ok_or("matrix row must be an array")?;
        if row.len() != cols {
            return Err(format!("matrix claims {} cols, row {} has {}", cols, i, row.len()));
        }
        for (j, e) in row.iter().enumerate() {
            let s = e.as_str().ok_or("matrix entries must be decimal strings")?;
            m.set(i, j, scalar_parse(s)?);
        }
    }
    Ok(m)
}

pub fn ring_to_json(r: Ring) -> Value {
    Value::String(r.to_string())
}

pub fn ring_from_json(v: &Value) -> Result<Ring, DecodeError> {
    match v.as_str() {
        Some("Z") => Ok(Ring::Z),
        Some("Q") => Ok(Ring::Q),
        _ => Err("ring must be \"Z\" or \"Q\"".to_string()),
    }
}

pub fn module_to_json(m: &FPModule) -> Value {
    json!({
        "generators": m.generators(),
        "relations": matrix_to_json(m.relations()),
    })
}

pub fn module_from_json(ring: Ring, v: &Value) -> Result<FPModule, DecodeError> {
    let g = usize_field(v, "generators")?;
    let rel = matrix_from_json(field(v, "relations")?)?;
    if rel.rows() != g {
        return Err(format!("relations have {} rows for {} generators", rel.rows(), g));
    }
    Ok(FPModule::new(ring, g, rel))
}

pub fn complex_to_json(x: &Complex) -> Value {
    let comps: Vec<Value> =
        (x.lo()..=x.hi()).map(|n| module_to_json(&x.component(n))).collect();
    let diffs: Vec<Value> =
        (x.lo()..x.hi()).map(|n| matrix_to_json(&x.diff_action(n))).collect();
    json!({
        "ring": ring_to_json(x.ring()),
        "lo": x.lo(),
        "components": comps,
        "differentials": diffs,
    })
}

pub fn complex_from_json(v: &Value) -> Result<Complex, DecodeError> {
    let ring = ring_from_json(field(v, "ring")?)?;
    let lo = i64_field(v, "lo")?;
    let comps = field(v, "components")?.as_array().ok_or("components must be an array")?;
    let diffs = field(v, "differentials")?.as_array().ok_or("differentials must be an array")?;
    if comps.is_empty() {
        return Ok(Complex::zero_complex(ring));
    }
    if diffs.len() + 1 != comps.len() {
        return Err("need exactly one differential per adjacent pair of components".to_string());
    }
    let components: Vec<FPModule> =
        comps.iter().map(|c| module_from_json(ring, c)).collect::<Result<_, _>>()?;
    let differentials: Vec<Matrix> =
        diffs.iter().map(matrix_from_json).collect::<Result<_, _>>()?;
    Ok(Complex::new(ring, lo, components, differentials))
}

pub fn chain_map_to_json(f: &ChainMap) -> Value {
    let x = f.source();
    let comps: Vec<Value> =
        (x.lo()..=x.hi()).map(|n| matrix_to_json(&f.component_action(n))).collect();
    json!({
        "source": complex_to_json(x),
        "target": complex_to_json(f.target()),
        "components": comps,
    })
}

pub fn chain_map_from_json(v: &Value) -> Result<ChainMap, DecodeError> {
    let source = complex_from_json(field(v, "source")?)?;
    let target = complex_from_json(field(v, "target")?)?;
    let comps = field(v, "components")?.as_array().ok_or("components must be an array")?;
    let mats: Vec<Matrix> = comps.iter().map(matrix_from_json).collect::<Result<_, _>>()?;
    let want = if source.is_empty_window() { 0 } else { (source.hi() - source.lo() + 1) as usize };
    if mats.len() != want {
        return Err(format!("chain map needs {} components, got {}", want, mats.len()));
    }
    Ok(ChainMap::new(source, target, mats))
}

pub fn roof_to_json(r: &Roof) -> Value {
    json!({
        "alpha": chain_map_to_json(&r.alpha),
        "sigma": chain_map_to_json(&r.sigma),
    })
}

pub fn roof_from_json(v: &Value) -> Result<Roof, DecodeError> {
    let alpha = chain_map_from_json(field(v, "alpha")?)?;
    let sigma = chain_map_from_json(field(v, "sigma")?)?;
    Ok(Roof::new(alpha, sigma))
}

pub fn dg_algebra_to_json(a: &DGAlgebra) -> Value {
    let degrees: Vec<Value> = (a.lo..=a.hi)
        .map(|n| json!({ "degree": n, "dimension": a.dim(n) }))
        .collect();
    let mult: Vec<Value> = (a.lo..=a.hi)
        .flat_map(|p| {
            (a.lo..=a.hi).filter_map(move |q| {
                if a.dim(p) * a.dim(q) == 0 {
                    return None;
                }
                Some((p, q))
            })
        })
        .map(|(p, q)| {
            json!({ "left": p, "right": q, "matrix": matrix_to_json(&a.mult_matrix(p, q)) })
        })
        .collect();
    let diff: Vec<Value> = (a.lo..=a.hi)
        .filter(|&n| a.dim(n) > 0)
        .map(|n| json!({ "degree": n, "matrix": matrix_to_json(&a.diff_matrix(n)) }))
        .collect();
    let mut obj = Map::new();
    obj.insert("degrees".to_string(), Value::Array(degrees));
    obj.insert("unit".to_string(), matrix_to_json(&a.unit));
    obj.insert("mult".to_string(), Value::Array(mult));
    obj.insert("diff".to_string(), Value::Array(diff));
    if let Some(objs) = &a.objects {
        obj.insert("objects".to_string(), json!(objs.names));
        let eps: Vec<Value> = objs
            .endpoints
            .iter()
            .map(|(d, pairs)| {
                let ps: Vec<Value> = pairs.iter().map(|&(s, t)| json!([s, t])).collect();
                json!({ "degree": d, "pairs": ps })
            })
            .collect();
        obj.insert("endpoints".to_string(), Value::Array(eps));
    }
    Value::Object(obj)
}

pub fn dg_algebra_from_json(v: &Value) -> Result<DGAlgebra, DecodeError> {
    let degs = field(v, "degrees")?.as_array().ok_or("degrees must be an array")?;
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for d in degs {
        dims.insert(i64_field(d, "degree")?, usize_field(d, "dimension")?);
    }
    let lo = dims.keys().next().copied().unwrap_or(0);
    let hi = dims.keys().next_back().copied().unwrap_or(0);
    let unit = matrix_from_json(field(v, "unit")?)?;
    let mut mult: BTreeMap<(i64, i64), Matrix> = BTreeMap::new();
    for m in field(v, "mult")?.as_array().ok_or("mult must be an array")? {
        let p = i64_field(m, "left")?;
        let q = i64_field(m, "right")?;
        mult.insert((p, q), matrix_from_json(field(m, "matrix")?)?);
    }
    let mut diff: BTreeMap<i64, Matrix> = BTreeMap::new();
    for d in field(v, "diff")?.as_array().ok_or("diff must be an array")? {
        diff.insert(i64_field(d, "degree")?, matrix_from_json(field(d, "matrix")?)?);
    }
    let objects = match v.get("objects") {
        None => None,
        Some(names) => {
            let names: Vec<String> = names
                .as_array()
                .ok_or("objects must be an array")?
                .iter()
                .map(|n| n.as_str().map(str::to_string).ok_or("object names must be strings"))
                .collect::<Result<_, _>>()
                .map_err(str::to_string)?;
            let mut endpoints: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
            for e in field(v, "endpoints")?.as_array().ok_or("endpoints must be an array")? {
                let mut pairs = Vec::new();
                for p in field(e, "pairs")?.as_array().ok_or("pairs must be an array")? {
                    let p = p.as_array().filter(|a| a.len() == 2).ok_or("pair must be [s, t]")?;
                    let s = p[0].as_u64().ok_or("pair entries must be indices")? as usize;
                    let t = p[1].as_u64().ok_or("pair entries must be indices")? as usize;
                    pairs.push((s, t));
                }
                endpoints.insert(i64_field(e, "degree")?, pairs);
            }
            Some(DgObjects { names, endpoints })
        }
    };
    Ok(DGAlgebra { lo, hi, dims, unit, mult, diff, objects })
}

pub fn dg_module_to_json(x: &DGModule) -> Value {
    let degrees: Vec<Value> = (x.lo..=x.hi)
        .map(|n| json!({ "degree": n, "dimension": x.dim(n) }))
        .collect();
    let diff: Vec<Value> = (x.lo..=x.hi)
        .filter(|&n| x.dim(n) > 0)
        .map(|n| json!({ "degree": n, "matrix": matrix_to_json(&x.diff_matrix(n)) }))
        .collect();
    let action: Vec<Value> = (x.lo..=x.hi)
        .flat_map(|n| (x.algebra.lo..=x.algebra.hi).map(move |p| (n, p)))
        .filter(|&(n, p)| x.dim(n) * x.algebra.dim(p) > 0)
        .map(|(n, p)| {
            json!({ "degree": n, "algebra_degree": p, "matrix": matrix_to_json(&x.action_matrix(n, p)) })
        })
        .collect();
    json!({
        "algebra": dg_algebra_to_json(&x.algebra),
        "degrees": degrees,
        "diff": diff,
        "action": action,
    })
}

pub fn dg_module_from_json(v: &Value) -> Result<DGModule, DecodeError> {
    let algebra = dg_algebra_from_json(field(v, "algebra")?)?;
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for d in field(v, "degrees")?.as_array().ok_or("degrees must be an array")? {
        dims.insert(i64_field(d, "degree")?, usize_field(d, "dimension")?);
    }
    let lo = dims.keys().next().copied().unwrap_or(0);
    let hi = dims.keys().next_back().copied().unwrap_or(0);
    let mut diff: BTreeMap<i64, Matrix> = BTreeMap::new();
    for d in field(v, "diff")?.as_array().ok_or("diff must be an array")? {
        diff.insert(i64_field(d, "degree")?, matrix_from_json(field(d, "matrix")?)?);
    }
    let mut action: BTreeMap<(i64, i64), Matrix> = BTreeMap::new();
    for a in field(v, "action")?.as_array().ok_or("action must be an array")? {
        action.insert(
            (i64_field(a, "degree")?, i64_field(a, "algebra_degree")?),
            matrix_from_json(field(a, "matrix")?)?,
        );
    }
    Ok(DGModule { algebra, lo, hi, dims, diff, action })
}

/// Canonical text form used wherever byte-identical output is promised.
pub fn canonical_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serialization cannot fail")
}
