use serde_json::{json, Map, Value};

use super::{Tensor, Valence};
use crate::algebra::{ParameterSpace, Poly};
use crate::error::{Error, Result};

impl Tensor {
    /// `{"dim", "valence": [up, down], "entries": [{"idx", "val"}]}` with
    /// 1-based indices in lexicographic order and zero entries omitted.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .nonzero()
            .map(|(idx, p)| {
                let one_based: Vec<usize> = idx.iter().map(|i| i + 1).collect();
                json!({ "idx": one_based, "val": p.to_string() })
            })
            .collect();
        let mut m = Map::new();
        m.insert("dim".into(), json!(self.dim));
        m.insert("valence".into(), json!([self.valence.up, self.valence.down]));
        m.insert("entries".into(), Value::Array(entries));
        Value::Object(m)
    }

    pub fn from_json(space: &ParameterSpace, value: &Value) -> Result<Tensor> {
        let bad = |what: &str| Error::Json(format!("tensor: {what}"));
        let dim = value
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing dim"))? as usize;
        let valence = value
            .get("valence")
            .and_then(Value::as_array)
            .filter(|v| v.len() == 2)
            .and_then(|v| Some(Valence::new(v[0].as_u64()? as usize, v[1].as_u64()? as usize)))
            .ok_or_else(|| bad("valence must be [up, down]"))?;
        let entries = value
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing entries"))?;
        let mut parsed = Vec::with_capacity(entries.len());
        for e in entries {
            let idx = e
                .get("idx")
                .and_then(Value::as_array)
                .and_then(|a| {
                    a.iter()
                        .map(|v| v.as_u64().filter(|&i| i >= 1).map(|i| i as usize - 1))
                        .collect::<Option<Vec<_>>>()
                })
                .ok_or_else(|| bad("idx must be a list of 1-based indices"))?;
            let val = e
                .get("val")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("val must be a string"))?;
            parsed.push((idx, Poly::parse(space, val)?));
        }
        Tensor::build(space, dim, valence, parsed)
    }
}
