use super::structure::{MCoalgebra, StructureMaps, TableStructure, Tensor};
use crate::error::{Error, Result};
use crate::symbar::{generators, BarWord};
use crate::zmod::json::{complex_from_json, complex_to_json, int_from_json, int_to_json};
use crate::zmod::Chain;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Structure maps stored word by word with no equivariant extension.
#[derive(Clone, Debug)]
pub struct RawTable {
    pub entries: BTreeMap<(BarWord, String), Chain<Tensor>>,
    pub rank: usize,
}

impl StructureMaps for RawTable {
    fn kind(&self) -> String {
        "raw table".into()
    }

    fn adjoint(&self, w: &BarWord, label: &str) -> Result<Chain<Tensor>> {
        Ok(self.entries.get(&(w.clone(), label.to_string())).cloned().unwrap_or_else(Chain::zero))
    }

    fn max_rank(&self) -> usize {
        self.rank
    }
}

pub fn tensors_to_json(x: &Chain<Tensor>) -> Value {
    Value::Array(x.iter().map(|(t, c)| json!([t, int_to_json(c)])).collect())
}

pub fn tensors_from_json(v: &Value) -> Result<Chain<Tensor>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("value must be a list of [factors, coefficient]".into()))?;
    let mut out = Chain::zero();
    for t in arr {
        let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Parse("term must be [factors, coefficient]".into()))?;
        let factors = pair[0]
            .as_array()
            .ok_or_else(|| Error::Parse("factors must be a list".into()))?
            .iter()
            .map(|f| f.as_str().map(str::to_string).ok_or_else(|| Error::Parse("factor must be a label".into())))
            .collect::<Result<Vec<_>>>()?;
        out.add_term(factors, int_from_json(&pair[1])?);
    }
    Ok(out)
}

/// `{"name", "complex", "rank_bound", "degree_bound", "extend", "entries": [{rank, word, label, value}]}`.
pub fn mcoalgebra_from_json(v: &Value) -> Result<MCoalgebra> {
    let complex = Arc::new(complex_from_json(v.get("complex").ok_or_else(|| Error::Parse("missing `complex`".into()))?)?);
    let name = v.get("name").and_then(|x| x.as_str()).unwrap_or("input").to_string();
    let extend = v.get("extend").and_then(|x| x.as_str()).unwrap_or("equivariant");
    let entries = v
        .get("entries")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::Parse("missing `entries` list".into()))?;
    let mut table = TableStructure::new(&complex, 2);
    let mut raw = RawTable {
        entries: BTreeMap::new(),
        rank: 2,
    };
    for e in entries {
        let rank = e
            .get("rank")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Parse("entry needs `rank`".into()))? as usize;
        let word = e.get("word").and_then(|x| x.as_str()).ok_or_else(|| Error::Parse("entry needs `word`".into()))?;
        let label = e.get("label").and_then(|x| x.as_str()).ok_or_else(|| Error::Parse("entry needs `label`".into()))?;
        let value = tensors_from_json(e.get("value").ok_or_else(|| Error::Parse("entry needs `value`".into()))?)?;
        if rank < 2 {
            return Err(Error::Parse("ranks 0 and 1 are fixed by the augmentation and identity".into()));
        }
        let w = BarWord::parse(word, rank)?;
        if !complex.contains(label) {
            return Err(Error::UnknownLabel(label.to_string()));
        }
        for (t, _) in value.iter() {
            if t.len() != rank {
                return Err(Error::RankMismatch(format!("value of {word} on `{label}` has a tensor of rank {}", t.len())));
            }
            for f in t {
                if !complex.contains(f) {
                    return Err(Error::UnknownLabel(f.clone()));
                }
            }
        }
        match extend {
            "equivariant" => table.insert(&w, label, value)?,
            "none" => {
                raw.rank = raw.rank.max(rank);
                raw.entries.insert((w, label.to_string()), value);
            }
            other => return Err(Error::Parse(format!("unknown extension mode `{other}`"))),
        }
    }
    let structure: Arc<dyn StructureMaps> = if extend == "none" { Arc::new(raw) } else { Arc::new(table) };
    let rank_bound = v.get("rank_bound").and_then(|x| x.as_u64()).map(|x| x as usize).unwrap_or(structure.max_rank());
    let degree_bound = v.get("degree_bound").and_then(|x| x.as_u64()).unwrap_or(4) as usize;
    Ok(MCoalgebra::new(name, complex, structure, rank_bound, degree_bound))
}

/// Serialize the nonzero values on generators within the bounds.
pub fn mcoalgebra_to_json(m: &MCoalgebra, rank_bound: usize, degree_bound: usize) -> Result<Value> {
    let mut entries = Vec::new();
    for n in 2..=rank_bound {
        for k in 0..=degree_bound {
            for w in generators(n, k) {
                for c in m.complex.cells() {
                    let v = m.adjoint(&w, &c.label)?;
                    if !v.is_zero() {
                        entries.push(json!({
                            "rank": n,
                            "word": w.to_string(),
                            "label": c.label,
                            "value": tensors_to_json(&v),
                        }));
                    }
                }
            }
        }
    }
    Ok(json!({
        "name": m.name,
        "complex": complex_to_json(&m.complex),
        "rank_bound": rank_bound,
        "degree_bound": degree_bound,
        "extend": "equivariant",
        "entries": entries,
    }))
}
