use mstruct_core::mcoalg::{zigzag_lift, Step, StrictMorphism, ZigZag};
use mstruct_core::simpchain::{build_simplicial_zigzag, simplicial_zigzag_from_json, BaseMap, Move, SimplicialComplex};
use serde_json::json;
use std::collections::BTreeMap;

fn print_failures(r: &mstruct_core::report::Report) -> String {
    r.to_text()
}

#[test]
fn single_expansion_over_a_point() {
    let z = simplicial_zigzag_from_json(
        &json!({"start": [[0]], "steps": [{"expand": [0, 1], "face": [1]}]}),
        3,
        3,
    )
    .unwrap();
    let lift = zigzag_lift(&z.zigzag, &z.a, &z.b).unwrap();
    assert_eq!(lift.columns.len(), 2);
    let r = lift.verify(3, 3).unwrap();
    assert!(r.passed(), "{}", print_failures(&r));
    // Z₁ = C ⊕ U₁/U₀
    let z1 = &lift.columns[1].p.target;
    assert_eq!(z1.complex.len(), 3);
    let lower = lift.lower_row().unwrap();
    assert!(lower.check(3, 3).unwrap().passed());
}

#[test]
fn right_then_left_over_the_two_sphere() {
    let z = simplicial_zigzag_from_json(
        &json!({
            "start": [[0, 1, 2], [2, 3]],
            "base": {"sphere": 2, "wrap": [[0, 1, 2]]},
            "steps": [
                {"expand": [1, 2, 3], "face": [1, 3]},
                {"collapse": [1, 2, 3], "face": [2, 3]}
            ]
        }),
        3,
        3,
    )
    .unwrap();
    assert!(z.zigzag.check(3, 3).unwrap().passed());
    let lift = zigzag_lift(&z.zigzag, &z.a, &z.b).unwrap();
    let r = lift.verify(3, 3).unwrap();
    assert!(r.passed(), "{}", print_failures(&r));
}

#[test]
fn splice_fails_when_b_separates_a_new_vertex() {
    let z = simplicial_zigzag_from_json(
        &json!({"start": [[0]], "base": {"simplex": 1, "colouring": {"1": 1}}, "steps": [{"expand": [0, 1], "face": [1]}]}),
        2,
        2,
    )
    .unwrap();
    let lift = zigzag_lift(&z.zigzag, &z.a, &z.b).unwrap();
    let r = lift.verify(2, 2).unwrap();
    assert!(r.check("φ-naturality p∘φ_U = φ_Z∘p").unwrap().passed);
    let splice = r.check("splice v′∘p = b").unwrap();
    assert!(!splice.passed);
    assert_eq!(splice.witness.as_deref(), Some("1"));
}

#[test]
fn identity_zigzag_gives_constant_row() {
    let z = simplicial_zigzag_from_json(&json!({"start": [[0, 1]], "base": {"simplex": 1, "colouring": {"1": 1}}}), 3, 3).unwrap();
    let lift = zigzag_lift(&z.zigzag, &z.a, &z.b).unwrap();
    assert_eq!(lift.columns.len(), 1);
    assert!(lift.lower.is_empty());
    assert!(lift.verify(3, 3).unwrap().passed());
}

#[test]
fn non_commuting_outer_square_is_rejected() {
    let start = SimplicialComplex::from_facets(&[vec![0, 1, 2]]);
    let moves = vec![Move::Collapse { tau: vec![1, 2], sigma: vec![0, 1, 2] }];
    let wrap = [vec![0, 1, 2]].into_iter().collect();
    let z = build_simplicial_zigzag(&start, &moves, &BaseMap::Sphere { dim: 2, wrap }, 2, 2).unwrap();
    let err = zigzag_lift(&z.zigzag, &z.a, &z.b).unwrap_err();
    assert!(err.to_string().contains("outer square"), "{err}");
}

#[test]
fn malformed_zigzag_is_rejected() {
    let z = simplicial_zigzag_from_json(&json!({"start": [[0]], "steps": [{"expand": [0, 1], "face": [1]}]}), 2, 2).unwrap();
    let Step::Right(e) = &z.zigzag.steps[0] else { panic!() };
    let err = ZigZag::new(z.zigzag.start.clone(), vec![Step::Left(e.clone())]).unwrap_err();
    assert!(err.to_string().contains("step 0"), "{err}");
    let _ = BTreeMap::<usize, usize>::new();
    let _: Option<StrictMorphism> = None;
}

mod common;

const COLUMN_CHECKS: [&str; 4] = [
    "vertical maps are strict",
    "lower row consists of elementary equivalences",
    "φ-naturality p∘φ_U = φ_Z∘p",
    "v_i are elementary equivalences onto C",
];

#[test]
fn randomized_suite_of_fifty() {
    use rayon::prelude::*;
    let failures: Vec<String> = (0..50u64)
        .into_par_iter()
        .filter_map(|seed| {
            let (z, lift) = common::random_zigzag(seed, 3, 2);
            assert!(z.complexes.iter().all(|k| k.len() <= common::MAX_CELLS));
            let r = lift.verify(3, 2).unwrap();
            let ok = COLUMN_CHECKS.iter().all(|n| r.check(n).unwrap().passed);
            (!ok).then(|| format!("seed {seed}: {}", r.to_text()))
        })
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

// b vanishing on the complements ker s′ forces the right-end square to commute
#[test]
fn splice_holds_when_b_kills_the_complements() {
    for seed in 0..50u64 {
        let (z, lift) = common::random_zigzag(seed, 2, 1);
        let splice = lift.splice_check().unwrap();
        let mut kills = true;
        for (i, step) in z.zigzag.steps.iter().enumerate() {
            if let Step::Right(e) = step {
                let c = &e.contraction;
                let pi = c.injection.compose(&c.projection).unwrap();
                let id = mstruct_core::zmod::GradedMap::identity(e.big.complex.clone());
                let rest = id.sub(&pi).unwrap();
                // b restricted to U_{i+1} is b∘(projections of later left steps)∘(later injections)
                let later = ZigZag::new(e.big.clone(), z.zigzag.steps[i + 1..].to_vec()).unwrap();
                let g = z.b.map.compose(&later.underlying().unwrap()).unwrap();
                kills &= g.compose(&rest).unwrap().is_zero();
            }
        }
        if kills {
            assert!(splice.passed, "seed {seed}");
        }
    }
}

#[test]
fn splice_holds_over_a_point() {
    for seed in 0..50u64 {
        let (_, lift) = common::random_zigzag(seed, 2, 1);
        if lift.base().complex.len() == 1 {
            let splice = lift.splice_check().unwrap();
            assert!(splice.passed, "seed {seed}");
        }
    }
}

#[test]
fn random_cobar_rows_commute() {
    use mstruct_core::cobar::{cobar_row, cobar_row_over};
    let mut tested = 0;
    for seed in 0..50u64 {
        let (z, lift) = common::random_zigzag(seed, 2, 3);
        if z.b.target.complex.dim(1) != 0 {
            continue;
        }
        let row = cobar_row(&lift, 3).unwrap();
        let r = row.verify().unwrap();
        assert!(r.passed(), "seed {seed}: {}", r.to_text());
        let maps: Vec<_> = z.maps.iter().map(|m| m.map.clone()).collect();
        let over = cobar_row_over(&z.zigzag, &z.b.target, &maps, 3).unwrap();
        assert_eq!(over.f_hat, row.f_hat, "seed {seed}");
        tested += 1;
    }
    assert!(tested >= 20);
}
