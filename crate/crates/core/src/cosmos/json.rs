//! JSON encodings of instances, objects and morphisms.

use serde_json::{json, Value};

use super::{Cosmos, Elt, VMor, VObj};
use crate::error::{Error, Result};

const MODULE: &str = "cosmos";

fn perr(op: &'static str, detail: impl Into<String>) -> Error {
    Error::parse(MODULE, op, detail)
}

/// Parses `finset`, `fvect2`, `fvect 3`, `fvect:5`, `fgab`.
pub fn parse_instance(s: &str) -> Result<Cosmos> {
    let t = s.trim().to_ascii_lowercase();
    match t.as_str() {
        "finset" | "set" => return Ok(Cosmos::FinSet),
        "fgab" | "ab" => return Ok(Cosmos::FgAb),
        _ => {}
    }
    if let Some(rest) = t.strip_prefix("fvect") {
        let digits = rest.trim_start_matches([' ', ':', '_', '=']);
        let p: u64 = digits
            .parse()
            .map_err(|_| perr("parse_instance", format!("bad prime in {s:?}")))?;
        return Cosmos::finvect(p);
    }
    Err(perr("parse_instance", format!("unknown instance {s:?}")))
}

pub fn instance_to_json(c: Cosmos) -> Value {
    match c {
        Cosmos::FinSet => json!({"kind": "finset"}),
        Cosmos::FinVect { p } => json!({"kind": "fvect", "p": p}),
        Cosmos::FgAb => json!({"kind": "fgab"}),
    }
}

pub fn instance_from_json(v: &Value) -> Result<Cosmos> {
    if let Some(s) = v.as_str() {
        return parse_instance(s);
    }
    match v.get("kind").and_then(Value::as_str) {
        Some("finset") => Ok(Cosmos::FinSet),
        Some("fgab") => Ok(Cosmos::FgAb),
        Some("fvect") => {
            let p = v
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| perr("instance_from_json", "fvect needs p"))?;
            Cosmos::finvect(p)
        }
        _ => Err(perr("instance_from_json", "unknown instance")),
    }
}

fn canonical_form(orders: &[u64]) -> Option<(usize, Vec<u64>)> {
    let free = orders.iter().take_while(|&&o| o == 0).count();
    let torsion = orders[free..].to_vec();
    let chain = torsion.iter().all(|&d| d >= 2) && torsion.windows(2).all(|w| w[1] % w[0] == 0);
    chain.then_some((free, torsion))
}

pub fn obj_to_json(c: Cosmos, a: &VObj) -> Value {
    match c {
        Cosmos::FinSet => json!({"set": a.len()}),
        Cosmos::FinVect { p } => json!({"dim": a.len(), "p": p}),
        Cosmos::FgAb => match canonical_form(a.orders()) {
            Some((free, torsion)) => json!({"free": free, "torsion": torsion}),
            None => json!({"cyclic": a.orders()}),
        },
    }
}

fn u64_list(v: &Value, op: &'static str) -> Result<Vec<u64>> {
    v.as_array()
        .ok_or_else(|| perr(op, "expected an array"))?
        .iter()
        .map(|x| x.as_u64().ok_or_else(|| perr(op, "expected a natural number")))
        .collect()
}

pub fn obj_from_json(c: Cosmos, v: &Value) -> Result<VObj> {
    const OP: &str = "obj_from_json";
    match c {
        Cosmos::FinSet => {
            let s = v.get("set").ok_or_else(|| perr(OP, "finite set needs \"set\""))?;
            let n = match s {
                Value::Array(items) => items.len(),
                other => other.as_u64().ok_or_else(|| perr(OP, "bad set size"))? as usize,
            };
            Ok(c.free(n))
        }
        Cosmos::FinVect { p } => {
            let d = v
                .get("dim")
                .and_then(Value::as_u64)
                .ok_or_else(|| perr(OP, "vector space needs \"dim\""))?;
            if let Some(q) = v.get("p").and_then(Value::as_u64) {
                if q != p {
                    return Err(Error::mismatch(MODULE, OP, format!("field F_{q} differs from F_{p}")));
                }
            }
            Ok(c.free(d as usize))
        }
        Cosmos::FgAb => {
            if let Some(cy) = v.get("cyclic") {
                return c.cyclic(&u64_list(cy, OP)?);
            }
            let free = v.get("free").and_then(Value::as_u64).unwrap_or(0) as usize;
            let torsion = match v.get("torsion") {
                Some(t) => u64_list(t, OP)?,
                None => Vec::new(),
            };
            if v.get("free").is_none() && v.get("torsion").is_none() {
                return Err(perr(OP, "group needs \"free\"/\"torsion\" or \"cyclic\""));
            }
            c.fgab(free, &torsion)
        }
    }
}

/// Morphism payload: a table for finite sets, `[[row, col, value], …]` otherwise.
pub fn mor_payload(c: Cosmos, f: &VMor) -> Value {
    match c {
        Cosmos::FinSet => json!(f.table().expect("finite-set map")),
        _ => {
            let mut trip = Vec::with_capacity(f.nnz());
            for j in 0..f.src().len() {
                for &(i, v) in f.col(j) {
                    trip.push(json!([i, j, v]));
                }
            }
            Value::Array(trip)
        }
    }
}

pub fn mor_from_payload(c: Cosmos, src: &VObj, dst: &VObj, v: &Value) -> Result<VMor> {
    const OP: &str = "mor_from_payload";
    let arr = v.as_array().ok_or_else(|| perr(OP, "expected an array"))?;
    let mut cols: Vec<Elt> = vec![Vec::new(); src.len()];
    match c {
        Cosmos::FinSet => {
            if arr.len() != src.len() {
                return Err(perr(OP, "table length differs from domain size"));
            }
            for (j, x) in arr.iter().enumerate() {
                let i = x.as_u64().ok_or_else(|| perr(OP, "bad table entry"))? as usize;
                if i >= dst.len() {
                    return Err(perr(OP, "table entry outside codomain"));
                }
                cols[j].push((i as u32, 1));
            }
        }
        _ => {
            for t in arr {
                let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| perr(OP, "expected [row, col, value]"))?;
                let i = t[0].as_u64().ok_or_else(|| perr(OP, "bad row"))? as usize;
                let j = t[1].as_u64().ok_or_else(|| perr(OP, "bad column"))? as usize;
                let x = t[2].as_i64().ok_or_else(|| perr(OP, "bad value"))?;
                if i >= dst.len() || j >= src.len() {
                    return Err(perr(OP, "entry outside matrix"));
                }
                cols[j].push((i as u32, x));
            }
        }
    }
    c.mor(src.clone(), dst.clone(), cols)
}

pub fn mor_to_json(c: Cosmos, f: &VMor) -> Value {
    json!({
        "src": obj_to_json(c, f.src()),
        "dst": obj_to_json(c, f.dst()),
        "map": mor_payload(c, f),
    })
}

pub fn mor_from_json(c: Cosmos, v: &Value) -> Result<VMor> {
    let get = |k: &str| v.get(k).ok_or_else(|| perr("mor_from_json", format!("missing {k:?}")));
    let src = obj_from_json(c, get("src")?)?;
    let dst = obj_from_json(c, get("dst")?)?;
    mor_from_payload(c, &src, &dst, get("map")?)
}

pub fn elt_to_json(c: Cosmos, x: &Elt) -> Value {
    match c {
        Cosmos::FinSet => json!(x.first().map(|e| e.0)),
        _ => Value::Array(x.iter().map(|&(i, v)| json!([i, v])).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_strings() {
        assert_eq!(parse_instance("fvect2").unwrap(), Cosmos::FinVect { p: 2 });
        assert_eq!(parse_instance("fvect 3").unwrap(), Cosmos::FinVect { p: 3 });
        assert!(parse_instance("fvect4").is_err());
        assert_eq!(parse_instance("fgab").unwrap(), Cosmos::FgAb);
    }

    #[test]
    fn objects_round_trip() {
        let c = Cosmos::FgAb;
        let a = c.fgab(1, &[2, 4]).unwrap();
        let v = obj_to_json(c, &a);
        assert_eq!(v, json!({"free": 1, "torsion": [2, 4]}));
        assert_eq!(obj_from_json(c, &v).unwrap(), a);
        let b = c.cyclic(&[3, 2]).unwrap();
        assert_eq!(obj_from_json(c, &obj_to_json(c, &b)).unwrap(), b);
        let s = obj_from_json(Cosmos::FinSet, &json!({"set": ["x", "y"]})).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn morphisms_round_trip() {
        let c = Cosmos::FinVect { p: 5 };
        let f = VMor::from_dense(c.free(2), c.free(2), &[vec![1, 2], vec![0, 3]]);
        assert_eq!(mor_from_json(c, &mor_to_json(c, &f)).unwrap(), f);
    }
}
