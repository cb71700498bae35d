use crate::Args;
use mstruct_core::mcoalg::{mcoalgebra_from_json, MCoalgebra};
use mstruct_core::simpchain::{
    cp2_chains, mcoalgebra_fixture, simplicial_fixture, simplicial_set_from_json, simplicial_zigzag_from_json, SimplicialSet, SimplicialZigZag,
};
use mstruct_core::zmod::json::{chain_from_json, complex_from_json};
use mstruct_core::zmod::{Chain, FreeComplex, GradedMap};
use mstruct_core::{Error, Result};
use serde_json::{json, Value};
use std::sync::Arc;

pub const ZIGZAG_FIXTURES: [&str; 2] = ["over-point", "over-s2"];
pub const COMPLEX_FIXTURES: [&str; 1] = ["cp2"];
pub const MAP_FIXTURES: [&str; 2] = ["point:<space>", "times<n>:<space>"];

enum Source<'a> {
    Fixture(&'a str),
    Json(Value),
}

fn source(args: &Args) -> Result<Source<'_>> {
    match (&args.fixture, &args.input) {
        (Some(f), _) => Ok(Source::Fixture(f)),
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display())))?;
            let v = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            Ok(Source::Json(v))
        }
        (None, None) => Err(Error::Parse("needs --fixture or --input".into())),
    }
}

fn sset_value(v: &Value) -> Result<SimplicialSet> {
    match v {
        Value::String(name) => simplicial_fixture(name),
        _ => simplicial_set_from_json(v),
    }
}

pub fn simplicial_set(args: &Args) -> Result<SimplicialSet> {
    match source(args)? {
        Source::Fixture(f) => simplicial_fixture(f),
        Source::Json(v) => simplicial_set_from_json(&v),
    }
}

/// A chain complex: simplicial fixtures, `cp2`, simplicial set JSON or complex JSON.
pub fn complex(args: &Args) -> Result<(String, Arc<FreeComplex>)> {
    match source(args)? {
        Source::Fixture("cp2") => Ok(("cp2".into(), cp2_chains())),
        Source::Fixture(f) => Ok((f.to_string(), simplicial_fixture(f)?.chains())),
        Source::Json(v) if v.get("simplices").is_some() => {
            let x = simplicial_set_from_json(&v)?;
            Ok((x.name.clone(), x.chains()))
        }
        Source::Json(v) => {
            let name = v.get("name").and_then(|x| x.as_str()).unwrap_or("input").to_string();
            Ok((name, Arc::new(complex_from_json(&v)?)))
        }
    }
}

pub fn mcoalgebra(args: &Args, rank: usize, degree: usize) -> Result<MCoalgebra> {
    match source(args)? {
        Source::Fixture(f) => mcoalgebra_fixture(f, rank, degree),
        Source::Json(v) => mcoalgebra_from_json(&v),
    }
}

pub fn zigzag_fixture(name: &str) -> Result<Value> {
    Ok(match name {
        "over-point" => json!({"start": [[0]], "steps": [{"expand": [0, 1], "face": [1]}]}),
        "over-s2" => json!({
            "start": [[0, 1, 2], [2, 3]],
            "base": {"sphere": 2, "wrap": [[0, 1, 2]]},
            "steps": [
                {"expand": [1, 2, 3], "face": [1, 3]},
                {"collapse": [1, 2, 3], "face": [2, 3]}
            ]
        }),
        other => return Err(Error::UnknownLabel(format!("no zig-zag fixture `{other}`"))),
    })
}

pub fn zigzag(args: &Args, rank: usize, degree: usize) -> Result<(String, SimplicialZigZag)> {
    let (name, v) = match source(args)? {
        Source::Fixture(f) => (f.to_string(), zigzag_fixture(f)?),
        Source::Json(v) => ("input".to_string(), v),
    };
    Ok((name, simplicial_zigzag_from_json(&v, rank, degree)?))
}

/// `point:X` includes the base point, `times<n>:X` multiplies positive degrees by `n`.
/// JSON input: `{"source", "target", "images": {cell: chain}}` with fixture names or
/// simplicial set objects for the ends.
pub fn map(args: &Args) -> Result<(String, GradedMap)> {
    match source(args)? {
        Source::Fixture(f) => Ok((f.to_string(), map_fixture(f)?)),
        Source::Json(v) => {
            let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("map needs `{k}`")));
            let s = sset_value(get("source")?)?.chains();
            let t = sset_value(get("target")?)?.chains();
            let images = get("images")?.as_object().ok_or_else(|| Error::Parse("`images` must be an object".into()))?;
            let f = GradedMap::from_fn(s, t, 0, |l| match images.get(l) {
                Some(c) => chain_from_json(c),
                None => Ok(Chain::zero()),
            })?;
            Ok(("input".into(), f))
        }
    }
}

fn map_fixture(name: &str) -> Result<GradedMap> {
    let (kind, space) = name
        .split_once(':')
        .ok_or_else(|| Error::UnknownLabel(format!("no map fixture `{name}`; try point:<space> or times<n>:<space>")))?;
    let x = simplicial_fixture(space)?.chains();
    if kind == "point" {
        let pt = simplicial_fixture("point")?.chains();
        let base = x
            .basis(0)
            .first()
            .map(|s| s.to_string())
            .ok_or_else(|| Error::Precondition(format!("{space} has no vertices")))?;
        return GradedMap::from_fn(pt, x, 0, |_| Ok(Chain::basis(base.clone())));
    }
    let n: i64 = kind
        .strip_prefix("times")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| Error::UnknownLabel(format!("no map fixture `{name}`")))?;
    if x.basis(0).len() != 1 {
        return Err(Error::Precondition(format!("times{n} needs a single vertex, {space} has {}", x.basis(0).len())));
    }
    GradedMap::from_fn(x.clone(), x.clone(), 0, |l| {
        Ok(Chain::term(l.to_string(), if x.degree_of(l)? == 0 { 1 } else { n }))
    })
}
