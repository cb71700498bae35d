use mstruct_core::mcoalg::{
    check_mstructure, check_weak_coherence_all, homotopy_commutativity, mcoalgebra_from_json, verify_coherence_identity,
    MCoalgebra, Tensor,
};
use mstruct_core::simpchain::{canonical_mstructure, example_b, simplicial_fixture, SimplicialSet};
use mstruct_core::symbar::{BarWord, Permutation};
use mstruct_core::zmod::Chain;
use num_bigint::BigInt;
use serde_json::json;
use std::sync::Arc;

fn canonical(name: &str) -> (Arc<SimplicialSet>, MCoalgebra) {
    let x = Arc::new(simplicial_fixture(name).unwrap());
    let m = canonical_mstructure(x.clone(), 3, 4);
    (x, m)
}

fn tensor(parts: &[(&[&str], i64)]) -> Chain<Tensor> {
    let mut out = Chain::zero();
    for (t, c) in parts {
        out.add_term(t.iter().map(|s| s.to_string()).collect(), BigInt::from(*c));
    }
    out
}

// front p-face ⊗ back (n-p)-face, degenerate pieces dropped
fn alexander_whitney(x: &SimplicialSet, base: usize) -> Chain<Tensor> {
    let n = x.simplex(base).dim;
    let mut out = Chain::zero();
    for p in 0..=n {
        let front = x.face_on(base, &(0..=p).collect::<Vec<_>>());
        let back = x.face_on(base, &(p..=n).collect::<Vec<_>>());
        if front.is_degenerate() || back.is_degenerate() {
            continue;
        }
        out.add_term(vec![x.label(&front), x.label(&back)], BigInt::from(1));
    }
    out
}

#[test]
fn canonical_structures_pass_invariants_and_coherence() {
    for name in ["delta1", "delta2", "s2-min", "rp2"] {
        let (_, m) = canonical(name);
        let r = check_mstructure(&m, 3, 4).unwrap();
        assert!(r.passed(), "{name}: {}", r.to_text());
        let w = check_weak_coherence_all(&m, 2, 4).unwrap();
        assert!(w.passed(), "{name}: {}", w.to_text());
    }
}

#[test]
fn unit_word_gives_alexander_whitney() {
    for name in ["delta1", "delta2", "delta3", "s2-min", "rp2", "torus"] {
        let (x, m) = canonical(name);
        for (i, s) in x.simplices().iter().enumerate() {
            let got = m.adjoint(&BarWord::unit(2), &s.id).unwrap();
            assert_eq!(got, alexander_whitney(&x, i), "{name} on {}", s.id);
        }
    }
}

#[test]
fn alexander_whitney_on_triangle() {
    let (_, m) = canonical("delta2");
    let expected = tensor(&[(&["0", "012"], 1), (&["01", "12"], 1), (&["012", "2"], 1)]);
    assert_eq!(m.adjoint(&BarWord::unit(2), "012").unwrap(), expected);
    let e1 = tensor(&[(&["01", "012"], -1), (&["012", "02"], 1), (&["12", "012"], -1)]);
    assert_eq!(m.adjoint(&BarWord::e(1), "012").unwrap(), e1);
}

#[test]
fn homotopy_commutativity_sign_is_consistent() {
    let mut signs = Vec::new();
    for name in ["delta1", "delta2", "delta3", "s2-min", "rp2", "torus"] {
        let (_, m) = canonical(name);
        let r = homotopy_commutativity(&m).unwrap();
        assert!(r.passed(), "{name}: {}", r.to_text());
        signs.push(r.notes.iter().find(|(k, _)| k == "sign").unwrap().1.clone());
    }
    for s in &signs {
        assert!(s == &json!(-1) || s == &json!("both (all values vanish)"), "{s}");
    }
    assert!(signs.contains(&json!(-1)));
}

#[test]
fn coherence_identity_on_triangle() {
    let (_, m) = canonical("delta2");
    let r = verify_coherence_identity(&m).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    assert!(r.check("identity on structure maps").unwrap().checked > 0);
}

#[test]
fn example_b_printed_values() {
    let m = example_b().unwrap();
    assert_eq!(m.adjoint(&BarWord::e(0), "x").unwrap(), tensor(&[(&["1", "x"], 1), (&["x", "1"], 1)]));
    assert!(m.adjoint(&BarWord::e(2), "x").unwrap().is_zero());
    assert_eq!(m.adjoint(&BarWord::e(3), "x").unwrap(), tensor(&[(&["x", "x"], 1)]));
    let t = Permutation::transposition(2, 1, 2);
    let xx = tensor(&[(&["x", "x"], 1)]);
    assert_eq!(m.permute(&t, &xx).unwrap(), xx.negated());
}

#[test]
fn example_b_passes_checks() {
    let m = example_b().unwrap();
    let r = check_mstructure(&m, 3, 4).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    let w = check_weak_coherence_all(&m, 2, 4).unwrap();
    assert!(w.passed(), "{}", w.to_text());
}

#[test]
fn example_b_agrees_with_minimal_three_sphere() {
    let b = example_b().unwrap();
    let (_, s) = canonical("s3-min");
    let rename = |x: Chain<Tensor>| {
        let mut out = Chain::zero();
        for (t, c) in x.iter() {
            out.add_term(t.iter().map(|f| if f == "pt" { "1".to_string() } else { f.clone() }).collect(), c.clone());
        }
        out
    };
    for i in 0..=4 {
        let w = BarWord::e(i);
        assert_eq!(b.adjoint(&w, "x").unwrap(), rename(s.adjoint(&w, "x").unwrap()), "e{i}");
    }
}

#[test]
fn non_equivariant_table_is_rejected() {
    let v = json!({
        "name": "lopsided",
        "complex": {
            "degrees": {"0": ["0", "1"], "1": ["01"]},
            "boundary": {"01": [["1", 1], ["0", -1]]},
            "augmentation": {"0": 1, "1": 1}
        },
        "extend": "none",
        "entries": [
            {"rank": 2, "word": "[]", "label": "0", "value": [[["0", "0"], 1]]},
            {"rank": 2, "word": "[]", "label": "1", "value": [[["1", "1"], 1]]},
            {"rank": 2, "word": "[]", "label": "01", "value": [[["0", "01"], 1], [["01", "1"], 1]]}
        ]
    });
    let m = mcoalgebra_from_json(&v).unwrap();
    let r = check_mstructure(&m, 2, 2).unwrap();
    assert!(!r.passed());
    assert!(!r.check("equivariance").unwrap().passed);
}

#[test]
fn simplicial_maps_induce_strict_morphisms() {
    use mstruct_core::mcoalg::StrictMorphism;
    use mstruct_core::simpchain::{colouring_map, wrapping_map, SimplicialComplex};
    use std::collections::{BTreeMap, BTreeSet};
    let k = SimplicialComplex::from_facets(&[vec![0, 1, 2, 3]]);
    let x = Arc::new(k.to_sset("delta3").unwrap());
    let src = canonical_mstructure(x.clone(), 3, 3);
    let colour: BTreeMap<usize, usize> = [(0, 0), (1, 0), (2, 1), (3, 2)].into_iter().collect();
    let wrap: BTreeSet<Vec<usize>> = [vec![0, 1, 2], vec![0, 1, 3]].into_iter().collect();
    for map in [colouring_map(x.clone(), &k, 2, &colour).unwrap(), wrapping_map(x.clone(), &k, 2, &wrap).unwrap()] {
        let tgt = canonical_mstructure(map.target.clone(), 3, 3);
        let f = StrictMorphism::new(src.clone(), tgt, map.chain_map()).unwrap();
        let ch = f.check(3, 3).unwrap();
        assert!(ch.passed, "{:?}", ch.witness);
        assert!(ch.checked > 100);
    }
}
