use mstruct_core::cobar::{
    cobar, cobar_functor, cobar_row, cobar_row_over, pair_label, twisted_tensor, word_label, Coalgebra, TwistingCochain,
};
use mstruct_core::error::Error;
use mstruct_core::mcoalg::{zigzag_lift, Tensor};
use mstruct_core::simpchain::{canonical_mstructure, product, simplicial_fixture, simplicial_zigzag_from_json};
use mstruct_core::zmod::{homology, kunneth, sign_pow, AbelianGroup, Chain, FreeComplex, GradedMap};
use num_bigint::BigInt;
use proptest::prelude::*;
use serde_json::json;
use std::sync::Arc;

fn coalgebra(name: &str) -> Coalgebra {
    let x = Arc::new(simplicial_fixture(name).unwrap());
    Coalgebra::from_mcoalgebra(&canonical_mstructure(x, 2, 0)).unwrap()
}

fn s2_squared() -> Coalgebra {
    let s = simplicial_fixture("s2-min").unwrap();
    Coalgebra::from_mcoalgebra(&canonical_mstructure(Arc::new(product(&s, &s)), 2, 0)).unwrap()
}

fn groups(cx: &FreeComplex, hi: i64) -> Vec<String> {
    let h = homology(cx, 0, hi);
    (0..=hi).map(|d| h[&d].to_string()).collect()
}

fn scale(c: &Coalgebra, n: i64) -> GradedMap {
    let cx = c.complex.clone();
    GradedMap::from_fn(cx.clone(), cx.clone(), 0, |l| {
        Ok(Chain::term(l.to_string(), if cx.degree_of(l)? == 0 { 1 } else { n }))
    })
    .unwrap()
}

#[test]
fn cobar_of_minimal_spheres_is_a_tensor_algebra() {
    for n in [2i64, 3] {
        let (om, _) = cobar(&coalgebra(&format!("s{n}-min")), 7).unwrap();
        let want: Vec<String> = (0..=6).map(|m| if m % (n - 1) == 0 { "ℤ".into() } else { "0".into() }).collect();
        assert_eq!(groups(&om.complex, 6), want);
        for d in 0..=6 {
            let words = om.complex.dim(d);
            assert_eq!(words, usize::from(d % (n - 1) == 0), "one word per multiple of {}", n - 1);
        }
    }
}

#[test]
fn cobar_of_a_point() {
    let (om, alpha) = cobar(&coalgebra("point"), 5).unwrap();
    assert_eq!(om.complex.len(), 1);
    let t = twisted_tensor(&alpha, 5).unwrap();
    assert_eq!(groups(&t.complex, 4), ["ℤ", "0", "0", "0", "0"]);
}

#[test]
fn cobar_of_a_product_of_spheres() {
    // H(Ω(S²×S²)) = H(ΩS²) ⊗ H(ΩS²)
    let (om, _) = cobar(&s2_squared(), 6).unwrap();
    let want: Vec<String> = (0..=5).map(|m| AbelianGroup::free(m + 1).to_string()).collect();
    assert_eq!(groups(&om.complex, 5), want);
}

#[test]
fn canonical_twisted_products_are_acyclic() {
    for c in [coalgebra("s2-min"), coalgebra("s3-min"), s2_squared()] {
        let (_, alpha) = cobar(&c, 6).unwrap();
        assert!(alpha.check().unwrap().passed);
        let t = twisted_tensor(&alpha, 6).unwrap();
        assert_eq!(groups(&t.complex, 5), ["ℤ", "0", "0", "0", "0", "0"]);
    }
}

#[test]
fn zero_twisting_is_the_tensor_product() {
    let c = coalgebra("s3-min");
    let (om, _) = cobar(&c, 6).unwrap();
    let a = s2_squared();
    let t = twisted_tensor(&TwistingCochain::zero(om.clone(), a.clone()), 6).unwrap();
    let k = kunneth(&homology(&a.complex, 0, 6), &homology(&om.complex, 0, 6));
    let want: Vec<String> = (0..=5).map(|d| k[&d].to_string()).collect();
    assert_eq!(groups(&t.complex, 5), want);
}

#[test]
fn bad_coalgebras_are_rejected() {
    assert!(matches!(cobar(&coalgebra("delta1"), 3), Err(Error::Precondition(_))));
    let mut c = coalgebra("s2-min");
    let x = "x".to_string();
    let pt = c.complex.basis(0)[0].to_string();
    let mut d: Chain<Tensor> = c.coproduct_of(&x);
    d.add_term(vec![pt.clone(), x.clone()], BigInt::from(1));
    c.coproduct.insert(x.clone(), d);
    match cobar(&c, 3) {
        Err(Error::NotCoassociative(w)) => assert!(w.contains("`x`"), "{w}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn cobar_functor_laws() {
    let c = coalgebra("s2-min");
    let (om, alpha) = cobar(&c, 6).unwrap();
    let id = GradedMap::identity(c.complex.clone());
    assert_eq!(cobar_functor(&id, &om, &om).unwrap(), GradedMap::identity(om.complex.clone()));
    let (two, three) = (scale(&c, 2), scale(&c, 3));
    let lhs = cobar_functor(&two.compose(&three).unwrap(), &om, &om).unwrap();
    let rhs = cobar_functor(&two, &om, &om).unwrap().compose(&cobar_functor(&three, &om, &om).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    let o2 = cobar_functor(&two, &om, &om).unwrap();
    assert!(o2.is_chain_map());
    assert_eq!(o2.on_label("[x]"), Chain::term("[x]".to_string(), 2));
    assert_eq!(o2.on_label("[x|x]"), Chain::term("[x|x]".to_string(), 4));
    // α∘g = Ω(g)∘α
    for cell in c.complex.cells() {
        let a: Chain<String> = alpha.apply(&cell.label).iter().map(|(w, k)| (word_label(w), k.clone())).collect();
        let mut ga: Chain<String> = Chain::zero();
        for (y, k) in two.on_label(&cell.label).iter() {
            for (w, j) in alpha.apply(y).iter() {
                ga.add_term(word_label(w), k * j);
            }
        }
        assert_eq!(o2.apply_chain(&a), ga);
    }
}

#[test]
fn non_coalgebra_maps_are_rejected() {
    let c = coalgebra("s2-min");
    let (om, _) = cobar(&c, 4).unwrap();
    let pt = c.complex.basis(0)[0].to_string();
    let bad = GradedMap::from_fn(c.complex.clone(), c.complex.clone(), 0, |l| {
        Ok(if l == pt { Chain::term(l.to_string(), 2) } else { Chain::basis(l.to_string()) })
    })
    .unwrap();
    assert!(matches!(cobar_functor(&bad, &om, &om), Err(Error::Precondition(_))));
    assert!(matches!(TwistingCochain::composite(om, c, bad), Err(Error::Precondition(_))));
}

#[test]
fn multiplication_satisfies_leibniz() {
    let (om, _) = cobar(&s2_squared(), 5).unwrap();
    let words: Vec<String> = om.words().map(|(l, _)| l.clone()).collect();
    let d = |x: &Chain<String>| om.complex.boundary_chain(x).unwrap();
    for a in &words {
        for b in &words {
            let (x, y) = (Chain::basis(a.clone()), Chain::basis(b.clone()));
            let xy = om.multiply(&x, &y).unwrap();
            if xy.is_zero() {
                continue;
            }
            let s = sign_pow(om.complex.degree_of(a).unwrap());
            let mut rhs = om.multiply(&d(&x), &y).unwrap();
            rhs.add_scaled(&om.multiply(&x, &d(&y)).unwrap(), &s);
            assert_eq!(d(&xy), rhs, "{a}·{b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn degree_n_twist_has_cyclic_fibre(n in 2i64..=7) {
        // fibre of a degree-n self-map of S²
        let c = coalgebra("s2-min");
        let (om, _) = cobar(&c, 4).unwrap();
        let tau = TwistingCochain::composite(om, c.clone(), scale(&c, n)).unwrap();
        prop_assert!(tau.check().unwrap().passed);
        let t = twisted_tensor(&tau, 4).unwrap();
        let h = homology(&t.complex, 0, 1);
        prop_assert_eq!(h[&0].to_string(), "ℤ");
        prop_assert_eq!(&h[&1], &AbelianGroup::cyclic(n as u64));
    }
}

#[test]
fn stable_range_agrees_with_the_mapping_cone() {
    // μ = first-factor fundamental class on S²×S², realized by the projection
    let a = s2_squared();
    let c = coalgebra("s2-min");
    let (om, _) = cobar(&c, 5).unwrap();
    // (σ, τ) ↦ σ, zero when σ is degenerate
    let proj = GradedMap::from_fn(a.complex.clone(), c.complex.clone(), 0, |l| {
        let first = l.trim_start_matches('(').split(',').next().unwrap_or_default();
        Ok(match (a.complex.degree_of(l)?, first) {
            (0, _) => Chain::basis(c.complex.basis(0)[0].to_string()),
            (2, "x") => Chain::basis("x".to_string()),
            _ => Chain::zero(),
        })
    })
    .unwrap();
    let tau = TwistingCochain::composite(om, a.clone(), proj.clone()).unwrap();
    let t = twisted_tensor(&tau, 5).unwrap();
    let k = 2;
    let mut b = FreeComplex::builder().cell("g", k);
    for cell in a.complex.cells() {
        b = b.cell(format!("s{}", cell.label), cell.degree + 1);
    }
    for cell in a.complex.cells() {
        let mut terms: Vec<(String, BigInt)> = a
            .complex
            .boundary_of(&cell.label)
            .unwrap()
            .terms
            .iter()
            .map(|(l, v)| (format!("s{l}"), -v))
            .collect();
        if cell.degree == k {
            terms.push(("g".into(), proj.on_label(&cell.label).coeff(&"x".to_string())));
        }
        b.set_boundary(format!("s{}", cell.label), terms);
    }
    let cone = b.build().unwrap();
    let hf = homology(&t.complex, 0, k + 1);
    let hc = homology(&cone, 1, k + 2);
    for i in 0..=k + 1 {
        assert_eq!(hf[&i], hc[&(i + 1)], "degree {i}");
    }
}

mod rows {
    use super::*;

    fn worked(spec: serde_json::Value) -> mstruct_core::simpchain::SimplicialZigZag {
        simplicial_zigzag_from_json(&spec, 2, 4).unwrap()
    }

    pub fn over_a_point() -> serde_json::Value {
        json!({"start": [[0]], "steps": [{"expand": [0, 1], "face": [1]}]})
    }

    pub fn over_the_two_sphere() -> serde_json::Value {
        json!({
            "start": [[0, 1, 2], [2, 3]],
            "base": {"sphere": 2, "wrap": [[0, 1, 2]]},
            "steps": [
                {"expand": [1, 2, 3], "face": [1, 3]},
                {"collapse": [1, 2, 3], "face": [2, 3]}
            ]
        })
    }

    #[test]
    fn worked_examples_commute() {
        for spec in [over_a_point(), over_the_two_sphere()] {
            let z = worked(spec);
            let lift = zigzag_lift(&z.zigzag, &z.a, &z.b).unwrap();
            let row = cobar_row(&lift, 4).unwrap();
            let r = row.verify().unwrap();
            assert!(r.passed(), "{}", r.to_text());
            let maps: Vec<_> = z.maps.iter().map(|m| m.map.clone()).collect();
            let over = cobar_row_over(&z.zigzag, &z.b.target, &maps, 4).unwrap();
            assert!(over.verify().unwrap().passed());
            assert_eq!(over.f_hat, row.f_hat);
        }
    }

    #[test]
    fn two_sphere_row_has_loop_space_homology() {
        let z = worked(over_the_two_sphere());
        let lift = zigzag_lift(&z.zigzag, &z.a, &z.b).unwrap();
        let row = cobar_row(&lift, 5).unwrap();
        assert_eq!(row.rows.len(), 3);
        assert_eq!(groups(&row.source().complex, 4), ["ℤ"; 5]);
        assert_eq!(groups(&row.target().complex, 4), ["ℤ"; 5]);
    }

    #[test]
    fn identity_row_over_a_point() {
        let z = worked(json!({"start": [[0, 1]]}));
        let lift = zigzag_lift(&z.zigzag, &z.a, &z.b).unwrap();
        let row = cobar_row(&lift, 3).unwrap();
        assert!(row.steps.is_empty());
        assert!(row.verify().unwrap().passed());
        assert_eq!(row.f_hat, GradedMap::identity(row.source().complex.clone()));
    }

    #[test]
    fn incompatible_maps_are_rejected() {
        let z = worked(over_the_two_sphere());
        let mut maps: Vec<_> = z.maps.iter().map(|m| m.map.clone()).collect();
        maps[1] = maps[1].scaled(&BigInt::from(2));
        assert!(matches!(cobar_row_over(&z.zigzag, &z.b.target, &maps, 4), Err(Error::Precondition(_))));
        assert!(matches!(cobar_row_over(&z.zigzag, &z.b.target, &maps[..2], 4), Err(Error::Precondition(_))));
    }
}

#[test]
fn twisting_by_a_non_chain_map_is_rejected() {
    let a = s2_squared();
    let c = coalgebra("s2-min");
    let (om, _) = cobar(&c, 4).unwrap();
    let g = GradedMap::from_fn(a.complex.clone(), c.complex.clone(), 0, |l| {
        Ok(match a.complex.degree_of(l)? {
            0 => Chain::basis(c.complex.basis(0)[0].to_string()),
            2 if l == "(x,s1s0(pt))" => Chain::basis("x".to_string()),
            _ => Chain::zero(),
        })
    })
    .unwrap();
    match TwistingCochain::composite(om, a, g) {
        Err(Error::Precondition(m)) => assert!(m.contains("∂g"), "{m}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn pullback_vanishing_untwists() {
    // g: Δ² → S² collapses the boundary; g*(μ) = δb with b dual to the edge 12
    let a = coalgebra("delta2");
    let c = coalgebra("s2-min");
    let (om, _) = cobar(&c, 5).unwrap();
    let g = GradedMap::from_fn(a.complex.clone(), c.complex.clone(), 0, |l| {
        Ok(match a.complex.degree_of(l)? {
            0 => Chain::basis("pt".to_string()),
            2 => Chain::basis("x".to_string()),
            _ => Chain::zero(),
        })
    })
    .unwrap();
    let b = |l: &str| BigInt::from(i64::from(l == "12"));
    for l in a.complex.basis(2) {
        let db: BigInt = a.complex.boundary_of(l).unwrap().terms.iter().map(|(e, k)| k * b(e)).sum();
        assert_eq!(db, g.on_label(l).coeff(&"x".to_string()));
    }
    let tau = TwistingCochain::composite(om.clone(), a.clone(), g).unwrap();
    let twisted = twisted_tensor(&tau, 5).unwrap();
    let flat = twisted_tensor(&TwistingCochain::zero(om.clone(), a.clone()), 5).unwrap();
    // Ψ(a⊗w) = a⊗w + Σ b(a″) a′⊗[x]w
    let gauge = |from: &mstruct_core::cobar::TwistedTensor, to: &mstruct_core::cobar::TwistedTensor, s: i64| {
        GradedMap::from_fn(from.complex.clone(), to.complex.clone(), 0, |l| {
            let (x, w) = from.parts(l)?;
            let mut out = Chain::basis(l.to_string());
            for (t, k) in a.coproduct_of(x).iter() {
                let mut v = vec!["x".to_string()];
                v.extend(om.letters(w)?.iter().cloned());
                out.add_term(pair_label(&t[0], &word_label(&v)), k * b(&t[1]) * s);
            }
            Ok(to.truncate(&out))
        })
        .unwrap()
    };
    let psi = gauge(&twisted, &flat, 1);
    let inverse = gauge(&flat, &twisted, -1);
    for cell in twisted.complex.cells().iter().filter(|c| c.degree < 5) {
        let lhs = flat.complex.boundary_chain(&psi.on_label(&cell.label)).unwrap();
        let rhs = psi.apply_chain(&twisted.complex.boundary_of(&cell.label).unwrap().terms);
        assert_eq!(lhs, rhs, "Ψ∂ = ∂Ψ on {}", cell.label);
    }
    assert_eq!(inverse.compose(&psi).unwrap(), GradedMap::identity(twisted.complex.clone()));
    assert_eq!(psi.compose(&inverse).unwrap(), GradedMap::identity(flat.complex.clone()));
}
