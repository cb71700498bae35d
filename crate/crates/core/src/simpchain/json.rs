use super::sset::{FaceSpec, SimplicialSet};
use crate::error::{Error, Result};
use serde_json::{json, Map, Value};

fn parse_face(v: &Value) -> Result<FaceSpec> {
    match v {
        Value::String(s) => Ok(FaceSpec::from(s.as_str())),
        Value::Object(o) => {
            let id = o
                .get("id")
                .and_then(|x| x.as_str())
                .ok_or_else(|| Error::Parse("face object needs an `id`".into()))?;
            let degeneracies = match o.get("degeneracies") {
                None => Vec::new(),
                Some(Value::Array(a)) => a
                    .iter()
                    .map(|x| x.as_u64().map(|j| j as usize).ok_or_else(|| Error::Parse("degeneracy index".into())))
                    .collect::<Result<_>>()?,
                Some(_) => return Err(Error::Parse("`degeneracies` must be an array".into())),
            };
            Ok(FaceSpec {
                id: id.to_string(),
                degeneracies,
            })
        }
        _ => Err(Error::Parse("face must be an id or an object".into())),
    }
}

/// `{"simplices": {"dim": [{"id": …, "faces": [ids]}]}, "basepoint": …}`.
pub fn simplicial_set_from_json(v: &Value) -> Result<SimplicialSet> {
    let simplices = v
        .get("simplices")
        .and_then(|x| x.as_object())
        .ok_or_else(|| Error::Parse("missing `simplices` object".into()))?;
    let name = v.get("name").and_then(|x| x.as_str()).unwrap_or("input");
    let mut b = SimplicialSet::builder(name);
    for (d, list) in simplices {
        let dim: usize = d.parse().map_err(|_| Error::Parse(format!("bad dimension key `{d}`")))?;
        let list = list.as_array().ok_or_else(|| Error::Parse(format!("dimension {d} must list simplices")))?;
        for s in list {
            let id = s
                .get("id")
                .and_then(|x| x.as_str().map(str::to_string).or_else(|| x.as_i64().map(|n| n.to_string())))
                .ok_or_else(|| Error::Parse("simplex needs an `id`".into()))?;
            let faces = match s.get("faces") {
                None => Vec::new(),
                Some(Value::Array(a)) => a.iter().map(parse_face).collect::<Result<_>>()?,
                Some(_) => return Err(Error::Parse(format!("faces of `{id}` must be an array"))),
            };
            b.push(id, dim, faces);
        }
    }
    if let Some(bp) = v.get("basepoint").and_then(|x| x.as_str()) {
        b = b.basepoint(bp);
    }
    if let Some(sc) = v.get("simply_connected").and_then(|x| x.as_bool()) {
        b = b.simply_connected(sc);
    }
    b.build()
}

pub fn simplicial_set_to_json(x: &SimplicialSet) -> Value {
    let mut dims = Map::new();
    for d in 0..=x.dim() {
        let list: Vec<Value> = x
            .of_dim(d)
            .iter()
            .map(|&i| {
                let s = x.simplex(i);
                let faces: Vec<Value> = s
                    .faces
                    .iter()
                    .map(|f| {
                        let id = &x.simplex(f.base).id;
                        let js = f.degeneracy_word();
                        if js.is_empty() {
                            json!(id)
                        } else {
                            json!({"id": id, "degeneracies": js})
                        }
                    })
                    .collect();
                json!({"id": s.id, "faces": faces})
            })
            .collect();
        dims.insert(d.to_string(), Value::Array(list));
    }
    json!({
        "name": x.name,
        "simplices": dims,
        "basepoint": x.basepoint,
        "simply_connected": x.simply_connected,
    })
}
