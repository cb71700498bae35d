use super::chain::Chain;
use super::complex::FreeComplex;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};
use std::collections::BTreeMap;
use std::str::FromStr;

pub fn int_to_json(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => BigInt::from_str(s).map_err(|_| Error::Parse(format!("not an integer: {s}"))),
        _ => Err(Error::Parse(format!("expected integer, got {v}"))),
    }
}

/// `[["label", coeff], ...]`
pub fn chain_to_json(c: &Chain<String>) -> Value {
    Value::Array(c.iter().map(|(l, v)| json!([l, int_to_json(v)])).collect())
}

pub fn chain_from_json(v: &Value) -> Result<Chain<String>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("expected a list of [label, coeff]".into()))?;
    let mut c = Chain::zero();
    for t in arr {
        let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Parse(format!("bad term {t}")))?;
        let l = pair[0].as_str().ok_or_else(|| Error::Parse(format!("bad label {}", pair[0])))?;
        c.add_term(l.to_string(), int_from_json(&pair[1])?);
    }
    Ok(c)
}

pub fn complex_to_json(c: &FreeComplex) -> Value {
    let mut degrees = Map::new();
    for d in c.degrees() {
        degrees.insert(d.to_string(), json!(c.basis(d)));
    }
    let mut boundary = Map::new();
    for cell in c.cells() {
        let b = c.boundary_of(&cell.label).expect("own label");
        if !b.is_zero() {
            boundary.insert(cell.label.clone(), chain_to_json(&b.terms));
        }
    }
    let mut out = Map::new();
    out.insert("degrees".into(), Value::Object(degrees));
    out.insert("boundary".into(), Value::Object(boundary));
    let sk: Map<String, Value> = c
        .cells()
        .iter()
        .filter_map(|x| x.skeleton.map(|s| (x.label.clone(), json!(s))))
        .collect();
    if !sk.is_empty() {
        out.insert("skeleton".into(), Value::Object(sk));
    }
    if let Some(a) = c.augmentation_map() {
        out.insert(
            "augmentation".into(),
            Value::Object(a.iter().map(|(l, v)| (l.clone(), int_to_json(v))).collect()),
        );
    }
    Value::Object(out)
}

pub fn complex_from_json(v: &Value) -> Result<FreeComplex> {
    let degrees = v
        .get("degrees")
        .and_then(|d| d.as_object())
        .ok_or_else(|| Error::Parse("missing `degrees` object".into()))?;
    let skeleton = v.get("skeleton").and_then(|s| s.as_object());
    let mut b = FreeComplex::builder();
    let mut keys: Vec<(i64, &Vec<Value>)> = Vec::new();
    for (k, labels) in degrees {
        let d = i64::from_str(k).map_err(|_| Error::Parse(format!("bad degree key `{k}`")))?;
        let labels = labels.as_array().ok_or_else(|| Error::Parse(format!("degree {k}: expected list")))?;
        keys.push((d, labels));
    }
    keys.sort_by_key(|(d, _)| *d);
    for (d, labels) in keys {
        for l in labels {
            let l = l.as_str().ok_or_else(|| Error::Parse(format!("bad label {l}")))?;
            let sk = skeleton
                .and_then(|s| s.get(l))
                .and_then(|x| x.as_u64())
                .map(|x| x as usize);
            b.push_cell(l, d, sk);
        }
    }
    if let Some(bd) = v.get("boundary") {
        let bd = bd.as_object().ok_or_else(|| Error::Parse("`boundary` must be an object".into()))?;
        for (l, terms) in bd {
            let c = chain_from_json(terms)?;
            b.set_boundary(l.clone(), c.into_iter().collect());
        }
    }
    match v.get("augmentation") {
        Some(a) => {
            let a = a.as_object().ok_or_else(|| Error::Parse("`augmentation` must be an object".into()))?;
            let mut m = BTreeMap::new();
            for (l, c) in a {
                m.insert(l.clone(), int_from_json(c)?);
            }
            b.set_augmentation(m);
            b.build()
        }
        None => b.default_augmentation().build(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_big_coefficient() {
        let big = BigInt::from_str("123456789012345678901234567890").unwrap();
        let c = FreeComplex::builder()
            .cell("a", 0)
            .cell("b", 0)
            .cell("e", 1)
            .build()
            .unwrap();
        let mut b = FreeComplex::builder().cell("a", 0).cell("b", 0).cell("e", 1);
        b.set_boundary("e", vec![("a".into(), big.clone()), ("b".into(), -big.clone())]);
        let c2 = b.build().unwrap();
        for cx in [c, c2] {
            let v = complex_to_json(&cx);
            let text = serde_json::to_string(&v).unwrap();
            let back = complex_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, cx);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(complex_from_json(&json!({})).is_err());
        assert!(complex_from_json(&json!({"degrees": {"x": ["a"]}})).is_err());
        assert!(complex_from_json(&json!({"degrees": {"0": ["a"]}, "boundary": {"a": [["zz", 1]]}})).is_err());
    }
}
