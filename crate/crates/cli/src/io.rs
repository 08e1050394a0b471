//! JSON envelopes and input loading.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use templex::cosmos::json::parse_instance;
use templex::cosmos::Cosmos;
use templex::functors::{hc_nerve, nerve, vcat_corpus, SVCat, VCat};
use templex::sset::{sset_from_json, FinSimpSet};
use templex::templicial::{free_templicial, Templicial};
use templex::{Error, Result};

const MODULE: &str = "cli";

pub fn envelope(schema: &str, payload: Value) -> Value {
    json!({"schema": schema, "version": 1, "payload": payload})
}

pub fn error_json(e: &Error) -> Value {
    envelope(
        "error",
        json!({"module": e.module(), "op": e.op(), "kind": e.kind(), "message": e.to_string()}),
    )
}

/// A parsed input artifact.
pub enum Input {
    Templicial(Templicial),
    SSet(FinSimpSet),
    VCat(VCat),
    SVCat(SVCat),
}

fn guess_schema(v: &Value) -> &'static str {
    if v.get("X").is_some() {
        "templicial"
    } else if v.get("levels").is_some() {
        "svcat"
    } else if v.get("comp").is_some() {
        "vcat"
    } else {
        "sset"
    }
}

pub fn instance(s: Option<&str>) -> Result<Option<Cosmos>> {
    s.map(parse_instance).transpose()
}

fn check_instance(expected: Option<Cosmos>, found: Cosmos) -> Result<()> {
    match expected {
        Some(c) if c != found => Err(Error::mismatch(
            MODULE,
            "load",
            format!("input is over {} but --instance says {}", found.name(), c.name()),
        )),
        _ => Ok(()),
    }
}

/// Reads `path`, or a corpus entry `corpus:<name>` over the given instance.
pub fn load(path: &str, inst: Option<Cosmos>) -> Result<Input> {
    if let Some(name) = path.strip_prefix("corpus:") {
        let c = inst.ok_or_else(|| Error::invalid(MODULE, "load", "corpus inputs need --instance"))?;
        return vcat_corpus(c)?
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, cat)| Input::VCat(cat))
            .ok_or_else(|| Error::invalid(MODULE, "load", format!("no corpus entry {name:?}")));
    }
    let text = fs::read_to_string(Path::new(path))
        .map_err(|e| Error::parse(MODULE, "load", format!("cannot read {path}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::parse(MODULE, "load", format!("{path}: {e}")))?;
    let (schema, payload) = match (v.get("schema").and_then(Value::as_str), v.get("payload")) {
        (Some(s), Some(p)) => (s.to_string(), p.clone()),
        _ => (guess_schema(&v).to_string(), v),
    };
    let input = match schema.as_str() {
        "templicial" => Input::Templicial(Templicial::from_json(&payload)?),
        "sset" => Input::SSet(sset_from_json(&payload)?),
        "vcat" => Input::VCat(VCat::from_json(&payload)?),
        "svcat" => Input::SVCat(SVCat::from_json(&payload)?),
        other => return Err(Error::parse(MODULE, "load", format!("unknown schema {other:?}"))),
    };
    match &input {
        Input::Templicial(x) => check_instance(inst, x.cosmos())?,
        Input::VCat(c) => check_instance(inst, c.cosmos())?,
        Input::SVCat(c) => check_instance(inst, c.cosmos())?,
        Input::SSet(_) => {}
    }
    Ok(input)
}

/// Any input as a templicial object: free on a simplicial set, the nerve of an
/// enriched category, or the homotopy coherent nerve of a simplicial one.
pub fn templicial(input: Input, inst: Option<Cosmos>, dim: Option<usize>) -> Result<Templicial> {
    match input {
        Input::Templicial(x) => Ok(x),
        Input::SSet(k) => {
            let c = inst.ok_or_else(|| Error::invalid(MODULE, "free", "simplicial set inputs need --instance"))?;
            let k = match dim {
                Some(d) if d < k.dim() => k.truncate(d)?,
                _ => k,
            };
            free_templicial(c, &k)
        }
        Input::VCat(cat) => nerve(&cat, dim.unwrap_or(3)),
        Input::SVCat(sv) => Ok(hc_nerve(&sv, dim.unwrap_or(sv.dim() + 1))?.x),
    }
}
