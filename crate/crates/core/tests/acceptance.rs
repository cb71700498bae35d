//! Acceptance gate: one pass/fail line per criterion.

use mstruct_core::cobar::{cobar, cobar_row, k_invariant, twisted_tensor, Coalgebra};
use mstruct_core::error::Error;
use mstruct_core::mcoalg::{
    check_mstructure, check_weak_coherence_all, homotopy_commutativity, verify_coherence_identity, zigzag_lift, MCoalgebra,
    Tensor,
};
use mstruct_core::operads::{check_operad_identities, endomorphism_operad, symmetric_construct, trivial_operad};
use mstruct_core::simpchain::{
    canonical_mstructure, example_b, simplicial_fixture, simplicial_zigzag_from_json, steenrod_square, Mod2Cohomology,
    SimplicialSet,
};
use mstruct_core::symbar::{bar_resolution, BarWord, Permutation};
use mstruct_core::zmod::{homology, sign, Chain, FreeComplex, GradedMap};
use num_bigint::BigInt;
use serde_json::json;
use std::sync::Arc;
use std::time::Instant;

mod common;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn canonical(name: &str, rank: usize, degree: usize) -> (Arc<SimplicialSet>, MCoalgebra) {
    let x = Arc::new(simplicial_fixture(name).unwrap());
    let m = canonical_mstructure(x.clone(), rank, degree);
    (x, m)
}

fn tensor(parts: &[(&[&str], i64)]) -> Chain<Tensor> {
    let mut out = Chain::zero();
    for (t, c) in parts {
        out.add_term(t.iter().map(|s| s.to_string()).collect(), BigInt::from(*c));
    }
    out
}

fn groups(cx: &FreeComplex, hi: i64) -> Vec<String> {
    let h = homology(cx, 0, hi);
    (0..=hi).map(|d| h[&d].to_string()).collect()
}

fn permutation_product() -> Outcome {
    let p = Permutation::from_one_line(&[2, 3, 1, 4]).unwrap();
    let q = Permutation::from_one_line(&[4, 3, 2, 1]).unwrap();
    let got = p.multiply(&q).unwrap().one_line();
    let want = vec![4, 3, 1, 2];
    ensure(got == want, || format!("(2,3,1,4)*(4,3,2,1) = {got:?}, printed {want:?}"))?;
    Ok(format!("(2,3,1,4)*(4,3,2,1) = {got:?}"))
}

fn bar_resolution_rank_two() -> Outcome {
    let t = Permutation::transposition(2, 1, 2);
    for i in 1..=5 {
        let mut want = Chain::zero();
        want.add_term(BarWord::e(i - 1), BigInt::from(1));
        want.add_term(BarWord::e(i - 1).left_mul(&t), sign(i % 2 == 1));
        ensure(BarWord::e(i).boundary() == want, || format!("∂e_{i} differs"))?;
    }
    for n in 1..=4 {
        if let Some(w) = bar_resolution(n, 5).boundary_squared_witness() {
            return Err(format!("∂∂{w} ≠ 0 in rank {n}"));
        }
    }
    Ok("∂e_i = (1+(−1)^i t)e_{i−1} for i ≤ 5; ∂² = 0 for n ≤ 4, degree ≤ 5".into())
}

fn example_b_fixture() -> Outcome {
    let m = example_b().map_err(|e| e.to_string())?;
    let ad = |i: usize| m.adjoint(&BarWord::e(i), "x").unwrap();
    ensure(ad(0) == tensor(&[(&["1", "x"], 1), (&["x", "1"], 1)]), || "Δ_{e0}(x)".into())?;
    ensure(ad(2).is_zero(), || "Δ_{e2}(x)".into())?;
    ensure(ad(3) == tensor(&[(&["x", "x"], 1)]), || "Δ_{e3}(x)".into())?;
    let r = check_mstructure(&m, 3, 4).unwrap();
    ensure(r.passed(), || r.to_text())?;
    let w = check_weak_coherence_all(&m, 2, 4).unwrap();
    ensure(w.passed(), || w.to_text())?;
    let xx = tensor(&[(&["x", "x"], 1)]);
    let t = Permutation::transposition(2, 1, 2);
    ensure(m.permute(&t, &xx).unwrap() == xx.negated(), || "t(x⊗x) ≠ −x⊗x".into())?;
    Ok("printed values load; invariants and weak coherence (n,m ≤ 2) pass; t = −1 on B₃⊗B₃".into())
}

fn operad_identities() -> Outcome {
    let interval = simplicial_fixture("delta1").unwrap().chains();
    let oracle = check_operad_identities(&endomorphism_operad(interval, 3, (-2, 2)), 3, 2);
    let s = check_operad_identities(&symmetric_construct(3, 2), 3, 2);
    let t = check_operad_identities(&trivial_operad(3), 3, 2);
    let o = oracle.orientation().ok_or("P(C(Δ¹)) satisfies no orientation")?;
    for r in [&s, &t] {
        ensure(r.orientation().as_ref() == Some(&o), || format!("{} orientation {:?} vs {o}", r.operad, r.orientation()))?;
    }
    for r in [&oracle, &s, &t] {
        ensure(r.leibniz.passed, || format!("Leibniz fails for {}: {:?}", r.operad, r.leibniz.witness))?;
        ensure(r.unit.passed, || format!("unit fails for {}", r.operad))?;
    }
    Ok(format!("orientation: {o}; Leibniz exact on {} pairs", oracle.leibniz.checked + s.leibniz.checked + t.leibniz.checked))
}

// front p-face ⊗ back (n-p)-face, degenerate pieces dropped
fn alexander_whitney(x: &SimplicialSet, base: usize) -> Chain<Tensor> {
    let n = x.simplex(base).dim;
    let mut out = Chain::zero();
    for p in 0..=n {
        let front = x.face_on(base, &(0..=p).collect::<Vec<_>>());
        let back = x.face_on(base, &(p..=n).collect::<Vec<_>>());
        if !front.is_degenerate() && !back.is_degenerate() {
            out.add_term(vec![x.label(&front), x.label(&back)], BigInt::from(1));
        }
    }
    out
}

fn canonical_mstructures() -> Outcome {
    let mut signs = Vec::new();
    for name in ["delta1", "delta2", "s2-min", "rp2"] {
        let (x, m) = canonical(name, 3, 4);
        let r = check_mstructure(&m, 3, 4).unwrap();
        ensure(r.passed(), || r.to_text())?;
        let w = check_weak_coherence_all(&m, 2, 4).unwrap();
        ensure(w.passed(), || w.to_text())?;
        for (i, s) in x.simplices().iter().enumerate() {
            let got = m.adjoint(&BarWord::unit(2), &s.id).unwrap();
            ensure(got == alexander_whitney(&x, i), || format!("Δ_[]₂ ≠ AW on {name} {}", s.id))?;
        }
        let h = homotopy_commutativity(&m).unwrap();
        ensure(h.passed(), || h.to_text())?;
        signs.push(h.notes.iter().find(|(k, _)| k == "sign").map(|(_, v)| v.clone()).unwrap());
    }
    let nonzero: Vec<_> = signs.iter().filter(|s| s.is_number()).collect();
    ensure(!nonzero.is_empty() && nonzero.iter().all(|s| *s == nonzero[0]), || format!("signs {signs:?}"))?;
    Ok(format!("Δ¹, Δ², s2-min, rp2 pass; Δ_[]₂ = AW; homotopy sign {}", nonzero[0]))
}

fn coherence_identity() -> Outcome {
    let (_, m) = canonical("delta2", 3, 4);
    let r = verify_coherence_identity(&m).unwrap();
    ensure(r.passed(), || r.to_text())?;
    let checked = r.check("identity on structure maps").unwrap().checked;
    Ok(format!("holds on all {checked} generators of 𝒞(Δ²)"))
}

fn steenrod() -> Outcome {
    let (x, m) = canonical("rp2", 2, 3);
    let cx = x.chains();
    let h1 = Mod2Cohomology::new(&cx, 1).unwrap();
    let h2 = Mod2Cohomology::new(&cx, 2).unwrap();
    ensure(h1.dim() == 1 && h2.dim() == 1, || format!("dims {} {}", h1.dim(), h2.dim()))?;
    let sq = steenrod_square(&m, 1, 1, &h1.representatives[0]).unwrap();
    ensure(h2.class_of(&sq).unwrap() == vec![true], || "Sq¹ is zero on H¹(RP²)".into())?;
    let mut tested = 0;
    for name in ["rp2", "torus", "s2-min", "delta2"] {
        let (x, m) = canonical(name, 2, 4);
        let cx = x.chains();
        for n in 0..=2i64 {
            let h = Mod2Cohomology::new(&cx, n).unwrap();
            for (j, u) in h.representatives.iter().enumerate() {
                let want: Vec<bool> = (0..h.dim()).map(|i| i == j).collect();
                let s0 = steenrod_square(&m, n, 0, u).unwrap();
                ensure(h.class_of(&s0).unwrap() == want, || format!("Sq⁰ ≠ id on {name} H^{n} class {j}"))?;
                for k in n + 1..=n + 2 {
                    ensure(steenrod_square(&m, n, k, u).unwrap().is_empty(), || format!("Sq^{k} ≠ 0 on {name} H^{n}"))?;
                }
                tested += 1;
            }
        }
    }
    Ok(format!("Sq¹: H¹(RP²) ≅ H²(RP²); Sq⁰ = id and Sq^k = 0 above degree on {tested} classes"))
}

const COLUMN_CHECKS: [&str; 4] = [
    "vertical maps are strict",
    "lower row consists of elementary equivalences",
    "φ-naturality p∘φ_U = φ_Z∘p",
    "v_i are elementary equivalences onto C",
];

fn zigzag_suite() -> Outcome {
    use rayon::prelude::*;
    let failures: Vec<String> = (0..50u64)
        .into_par_iter()
        .filter_map(|seed| {
            let (z, lift) = common::random_zigzag(seed, 3, 2);
            if z.complexes.iter().any(|k| k.len() > common::MAX_CELLS) {
                return Some(format!("seed {seed}: complex too large"));
            }
            let r = lift.verify(3, 2).unwrap();
            let ok = COLUMN_CHECKS.iter().all(|n| r.check(n).is_some_and(|c| c.passed));
            (!ok).then(|| format!("seed {seed}: {}", r.to_text()))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("\n"))?;
    Ok("50 random zig-zags: strictness, contraction conditions, φ-naturality".into())
}

fn coalgebra(name: &str) -> Coalgebra {
    let (_, m) = canonical(name, 2, 0);
    Coalgebra::from_mcoalgebra(&m).unwrap()
}

fn cobar_suite() -> Outcome {
    for n in [2i64, 3] {
        let c = coalgebra(&format!("s{n}-min"));
        let (om, alpha) = cobar(&c, 7).unwrap();
        let want: Vec<String> = (0..=6).map(|m| if m % (n - 1) == 0 { "ℤ".into() } else { "0".into() }).collect();
        let got = groups(&om.complex, 6);
        ensure(got == want, || format!("H(ΩS^{n}) = {got:?}"))?;
        let t = twisted_tensor(&alpha, 6).unwrap();
        let got = groups(&t.complex, 5);
        ensure(got == ["ℤ", "0", "0", "0", "0", "0"], || format!("C⊗_αΩC on S^{n}: {got:?}"))?;
    }
    let worked = [
        json!({"start": [[0]], "steps": [{"expand": [0, 1], "face": [1]}]}),
        json!({
            "start": [[0, 1, 2], [2, 3]],
            "base": {"sphere": 2, "wrap": [[0, 1, 2]]},
            "steps": [{"expand": [1, 2, 3], "face": [1, 3]}, {"collapse": [1, 2, 3], "face": [2, 3]}]
        }),
    ];
    for spec in worked {
        let z = simplicial_zigzag_from_json(&spec, 2, 4).unwrap();
        let lift = zigzag_lift(&z.zigzag, &z.a, &z.b).unwrap();
        let r = cobar_row(&lift, 4).unwrap().verify().unwrap();
        let sq = r.check("square (1⊗ε)∘f̂ = f∘(1⊗ε)").ok_or("no square check")?;
        ensure(r.passed() && sq.passed, || r.to_text())?;
    }
    Ok("ΩS², ΩS³ exact through degree 6; C⊗_αΩC acyclic through 5; both cobar-row squares commute".into())
}

fn k_invariants() -> Outcome {
    let s2 = simplicial_fixture("s2-min").unwrap().chains();
    let pt = simplicial_fixture("point").unwrap().chains();
    let f = GradedMap::from_fn(pt, s2.clone(), 0, |_| Ok(Chain::basis("pt".to_string()))).unwrap();
    let kv = k_invariant(&f, 2).map_err(|e| e.to_string())?;
    ensure(kv.group.to_string() == "ℤ", || format!("M = {}", kv.group))?;
    let pairing = kv.pair(&Chain::basis("x".to_string()));
    ensure(pairing == vec![BigInt::from(1)], || format!("⟨μ, [S²]⟩ = {pairing:?}"))?;
    let double = GradedMap::from_fn(s2.clone(), s2.clone(), 0, |l| {
        Ok(Chain::term(l.to_string(), if s2.degree_of(l)? == 0 { 1 } else { 2 }))
    })
    .unwrap();
    let kv2 = k_invariant(&double, 2).map_err(|e| e.to_string())?;
    ensure(kv2.group.to_string() == "ℤ/2", || format!("M = {} for ×2", kv2.group))?;
    ensure(matches!(k_invariant(&f, 3), Err(Error::Precondition(_))), || "non-acyclic cone accepted".into())?;
    Ok("pt → S²: M = ℤ, ⟨μ, [S²]⟩ = 1; ×2: M = ℤ/2; cone preconditions enforced".into())
}

const COMMANDS: &[&[&str]] = &[
    &["homology", "--fixture", "rp2"],
    &["homology", "--fixture", "torus", "--format", "text"],
    &["mstructure", "--fixture", "delta2", "--rank", "3"],
    &["coherence", "--fixture", "example-B", "--rank", "2"],
    &["coherence", "--fixture", "rp2", "--rank", "2", "--format", "text"],
    &["steenrod", "--fixture", "rp2", "--degree", "1"],
    &["cobar", "--fixture", "s3-min", "--degree", "7"],
    &["twisted", "--fixture", "s2-min"],
    &["zigzag-lift", "--fixture", "over-s2"],
    &["zigzag-lift", "--fixture", "over-point", "--format", "text"],
    &["kinvariant", "--fixture", "times2:s2-min"],
    &["kinvariant", "--fixture", "point:s2-min", "--degree", "3"],
    &["fixtures"],
    &["fixtures", "--fixture", "example-B"],
    &["check-operad", "--which", "trivial", "--rank", "4"],
    &["check-operad", "--which", "symmetric"],
    &["homology", "--fixture", "nope"],
];

fn determinism() -> Outcome {
    for cmd in COMMANDS {
        let argv = || std::iter::once("mstruct").chain(cmd.iter().copied());
        let a = mstruct_cli::run(argv());
        let b = mstruct_cli::run(argv());
        ensure(a == b, || format!("`{}` differs between runs", cmd.join(" ")))?;
        ensure(!a.stdout.is_empty(), || format!("`{}` printed nothing", cmd.join(" ")))?;
    }
    Ok(format!("{} commands covering every verb re-run byte-identically", COMMANDS.len()))
}

#[test]
fn acceptance_gate() {
    let criteria: [Criterion; 11] = [
        ("permutation product", permutation_product),
        ("bar resolution rank 2", bar_resolution_rank_two),
        ("example B fixture", example_b_fixture),
        ("operad identity suite", operad_identities),
        ("canonical m-structure", canonical_mstructures),
        ("coherence identity", coherence_identity),
        ("Steenrod squares", steenrod),
        ("zig-zag lift suite", zigzag_suite),
        ("cobar", cobar_suite),
        ("k-invariant", k_invariants),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    println!();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
