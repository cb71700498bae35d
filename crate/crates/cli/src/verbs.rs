use crate::inputs::{self, COMPLEX_FIXTURES, MAP_FIXTURES, ZIGZAG_FIXTURES};
use crate::{Args, Verb, Which};
use mstruct_core::cobar::{cobar, cobar_row, k_invariant, twisted_tensor, Coalgebra};
use mstruct_core::mcoalg::{
    check_mstructure, check_weak_coherence_all, homotopy_commutativity, mcoalgebra_to_json, verify_coherence_identity,
    zigzag_lift,
};
use mstruct_core::operads::{check_operad_identities, endomorphism_operad, symmetric_construct, trivial_operad, IdentityReport};
use mstruct_core::report::{Check, Report};
use mstruct_core::simpchain::{
    canonical_mstructure, mcoalgebra_fixture, simplicial_fixture, simplicial_set_to_json, steenrod_square, Mod2Cohomology,
    MCOALGEBRA_FIXTURES, SIMPLICIAL_FIXTURES,
};
use mstruct_core::zmod::{homology, FreeComplex};
use mstruct_core::{Error, Result};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use std::sync::Arc;

pub fn dispatch(verb: Verb, args: &Args) -> Result<Report> {
    match verb {
        Verb::Homology => homology_report(args),
        Verb::Mstructure => mstructure(args),
        Verb::Coherence => coherence(args),
        Verb::Steenrod => steenrod(args),
        Verb::Cobar => cobar_report(args),
        Verb::Twisted => twisted(args),
        Verb::ZigzagLift => lift(args),
        Verb::Kinvariant => kinvariant(args),
        Verb::Fixtures => fixtures(args),
        Verb::CheckOperad => check_operad(args),
    }
}

fn rank(args: &Args, default: usize) -> usize {
    args.rank.map(|r| r as usize).unwrap_or(default)
}

fn degree(args: &Args, default: usize) -> usize {
    args.degree.map(|d| d as usize).unwrap_or(default)
}

fn top_degree(cx: &FreeComplex) -> i64 {
    cx.degrees().into_iter().max().unwrap_or(0)
}

fn groups(cx: &FreeComplex, hi: i64) -> Value {
    let h = homology(cx, 0, hi);
    Value::Object(h.iter().map(|(d, g)| (d.to_string(), json!(g.to_string()))).collect())
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| json!(x.to_string())).collect())
}

fn absorb(into: &mut Report, prefix: &str, r: Report) {
    for mut c in r.checks {
        c.name = format!("{prefix}{}", c.name);
        into.checks.push(c);
    }
    for (k, v) in r.notes {
        into.note(format!("{prefix}{k}"), v);
    }
}

fn homology_report(args: &Args) -> Result<Report> {
    let (name, cx) = inputs::complex(args)?;
    let hi = args.degree.map(|d| d as i64).unwrap_or_else(|| top_degree(&cx));
    let mut r = Report::new(format!("homology of {name}"));
    r.note("cells", json!(cx.cells().len()));
    r.note("groups", groups(&cx, hi));
    Ok(r)
}

fn mstructure(args: &Args) -> Result<Report> {
    let (n, d) = (rank(args, 2), degree(args, 4));
    let m = inputs::mcoalgebra(args, n, d)?;
    let mut r = check_mstructure(&m, n, d)?;
    if m.rank_bound >= 2 && m.degree_bound >= 1 {
        absorb(&mut r, "", homotopy_commutativity(&m)?);
    }
    Ok(r)
}

fn coherence(args: &Args) -> Result<Report> {
    let (n, d) = (rank(args, 2), degree(args, 4));
    // composites of two arity-n words live in rank 2n − 1
    let m = inputs::mcoalgebra(args, (2 * n - 1).max(2), d)?;
    let mut r = check_weak_coherence_all(&m, n, d)?;
    if m.rank_bound >= 3 && m.degree_bound >= 2 {
        absorb(&mut r, "", verify_coherence_identity(&m)?);
    }
    Ok(r)
}

fn steenrod(args: &Args) -> Result<Report> {
    let x = Arc::new(inputs::simplicial_set(args)?);
    let n = degree(args, 1) as i64;
    let m = canonical_mstructure(x.clone(), 2, n as usize + 1);
    let cx = x.chains();
    let h = Mod2Cohomology::new(&cx, n)?;
    let mut r = Report::new(format!("Steenrod squares on H^{n}({}; ℤ/2)", x.name));
    let mut id = Check::new("Sq^0 = id");
    let mut vanish = Check::new("Sq^k = 0 above degree");
    let mut closed = Check::new("squares are cocycles");
    let mut table = Map::new();
    for k in 0..=n + 1 {
        let target = Mod2Cohomology::new(&cx, n + k)?;
        let mut rows = Vec::new();
        for (j, u) in h.representatives.iter().enumerate() {
            let s = steenrod_square(&m, n, k, u)?;
            let class = match target.class_of(&s) {
                Ok(c) => c,
                Err(e) => {
                    closed.fail(format!("Sq^{k} of class {j}: {e}"));
                    continue;
                }
            };
            closed.tick();
            if k == 0 {
                let want: Vec<bool> = (0..h.dim()).map(|i| i == j).collect();
                id.record(class == want, || format!("Sq^0 of class {j} is {class:?}"));
            }
            if k > n {
                vanish.record(s.is_empty(), || format!("Sq^{k} of class {j} is supported on {s:?}"));
            }
            rows.push(json!(class.iter().map(|&b| b as u8).collect::<Vec<_>>()));
        }
        table.insert(format!("Sq^{k}"), json!({"target_dim": target.dim(), "images": rows}));
    }
    r.checks = vec![id, vanish, closed];
    r.note("dim", json!(h.dim()));
    r.note("representatives", json!(h.representatives));
    r.note("squares", Value::Object(table));
    Ok(r)
}

fn coalgebra(args: &Args) -> Result<(String, Coalgebra)> {
    let x = inputs::simplicial_set(args)?;
    let name = x.name.clone();
    Ok((name, Coalgebra::from_mcoalgebra(&canonical_mstructure(Arc::new(x), 2, 0))?))
}

fn cobar_report(args: &Args) -> Result<Report> {
    let bound = degree(args, 7) as i64;
    let (name, c) = coalgebra(args)?;
    let (om, _) = cobar(&c, bound)?;
    let mut r = Report::new(format!("cobar of {name} through degree {}", bound - 1));
    r.note("words", json!(om.complex.cells().len()));
    r.note("homology", groups(&om.complex, bound - 1));
    Ok(r)
}

fn twisted(args: &Args) -> Result<Report> {
    let bound = degree(args, 6) as i64;
    let (name, c) = coalgebra(args)?;
    let (_, alpha) = cobar(&c, bound)?;
    let mut r = Report::new(format!("canonical twisted product on {name} through degree {}", bound - 1));
    r.checks.push(alpha.check()?);
    let t = twisted_tensor(&alpha, bound)?;
    let h = homology(&t.complex, 0, bound - 1);
    let mut acyclic = Check::new("acyclic below the bound");
    for (d, g) in &h {
        let ok = if *d == 0 { g.to_string() == "ℤ" } else { g.is_zero() };
        acyclic.record(ok, || format!("H_{d} = {g}"));
    }
    r.checks.push(acyclic);
    r.note("cells", json!(t.complex.cells().len()));
    r.note("homology", groups(&t.complex, bound - 1));
    Ok(r)
}

fn lift(args: &Args) -> Result<Report> {
    let (n, d) = (rank(args, 2), degree(args, 4));
    let (name, z) = inputs::zigzag(args, n, d)?;
    let l = zigzag_lift(&z.zigzag, &z.a, &z.b)?;
    let mut r = Report::new(format!("zig-zag lift of {name}"));
    absorb(&mut r, "", l.verify(n, d)?);
    match cobar_row(&l, d as i64) {
        Ok(row) => absorb(&mut r, "cobar row: ", row.verify()?),
        Err(Error::Precondition(why)) => r.note("cobar row", json!(format!("skipped: {why}"))),
        Err(e) => return Err(e),
    }
    Ok(r)
}

fn kinvariant(args: &Args) -> Result<Report> {
    let k = degree(args, 2) as i64;
    let (name, f) = inputs::map(args)?;
    let kv = k_invariant(&f, k)?;
    let mut r = Report::new(format!("k-invariant of {name} in degree {k}"));
    let mut c = Check::new("μ is a cocycle");
    c.record(kv.is_cocycle(f.target())?, || "δμ ≠ 0".into());
    r.checks.push(c);
    r.note("M", json!(kv.group.to_string()));
    r.note("orders", ints(&kv.orders));
    let mu: Map<String, Value> = kv
        .cocycle
        .iter()
        .filter(|(_, v)| v.iter().any(|x| *x != BigInt::from(0)))
        .map(|(l, v)| (l.clone(), ints(v)))
        .collect();
    r.note("mu", Value::Object(mu));
    let top: Vec<&str> = f.target().basis(k);
    if top.len() == 1 {
        r.note(format!("<mu, {}>", top[0]), ints(&kv.pair(&mstruct_core::zmod::Chain::basis(top[0].to_string()))));
    }
    Ok(r)
}

fn fixtures(args: &Args) -> Result<Report> {
    let (n, d) = (rank(args, 2), degree(args, 4));
    if let Some(name) = &args.fixture {
        let mut r = Report::new(format!("fixture {name}"));
        let data = if MCOALGEBRA_FIXTURES.contains(&name.as_str()) {
            mcoalgebra_to_json(&mcoalgebra_fixture(name, n, d)?, n, d)?
        } else if ZIGZAG_FIXTURES.contains(&name.as_str()) {
            inputs::zigzag_fixture(name)?
        } else {
            simplicial_set_to_json(&simplicial_fixture(name)?)
        };
        r.note("data", data);
        return Ok(r);
    }
    let mut r = Report::new("fixtures");
    let mut load = Check::new("fixtures load");
    let mut spaces = Map::new();
    for name in SIMPLICIAL_FIXTURES {
        match simplicial_fixture(name) {
            Ok(x) => {
                load.tick();
                let cx = x.chains();
                let counts: Vec<usize> = (0..=top_degree(&cx)).map(|d| cx.basis(d).len()).collect();
                spaces.insert(name.to_string(), json!({"cells": counts, "homology": groups(&cx, top_degree(&cx))}));
            }
            Err(e) => load.fail(format!("{name}: {e}")),
        }
    }
    for name in MCOALGEBRA_FIXTURES {
        load.record(mcoalgebra_fixture(name, n, d).is_ok(), || name.to_string());
    }
    for name in ZIGZAG_FIXTURES {
        load.record(inputs::zigzag_fixture(name).is_ok(), || name.to_string());
    }
    r.checks.push(load);
    r.note("simplicial", Value::Object(spaces));
    r.note("simplicial (parametrized)", json!(["moore(m,n)"]));
    r.note("complexes", json!(COMPLEX_FIXTURES));
    r.note("m-coalgebras", json!(MCOALGEBRA_FIXTURES));
    r.note("zig-zags", json!(ZIGZAG_FIXTURES));
    r.note("maps", json!(MAP_FIXTURES));
    Ok(r)
}

fn check_operad(args: &Args) -> Result<Report> {
    let (n, d) = (rank(args, 3), degree(args, 2));
    let ir = match args.which {
        Which::Trivial => check_operad_identities(&trivial_operad(n), n, d as i64),
        Which::Symmetric => check_operad_identities(&symmetric_construct(n, d), n, d as i64),
        Which::Endo => {
            let space = args.fixture.as_deref().unwrap_or("delta1");
            let cx = simplicial_fixture(space)?.chains();
            let w = d as i64;
            check_operad_identities(&endomorphism_operad(cx, n, (-w, w)), n, d as i64)
        }
    };
    Ok(operad_report(&ir))
}

fn operad_report(ir: &IdentityReport) -> Report {
    let mut r = Report::new(format!("operad identities for {}", ir.operad));
    let mut orient = Check::new("consistent orientation");
    orient.checked = ir.variants.iter().map(|v| v.checked).sum();
    let orientation = ir.orientation();
    if orientation.is_none() {
        let bad: Vec<String> = ir
            .variants
            .iter()
            .filter(|v| !v.passed)
            .map(|v| format!("{}: {}", v.name, v.witness.clone().unwrap_or_default()))
            .collect();
        orient.fail(bad.join("; "));
    }
    r.checks.push(orient);
    for v in [&ir.leibniz, &ir.unit] {
        r.checks.push(Check {
            name: v.name.clone(),
            passed: v.passed,
            checked: v.checked,
            witness: v.witness.clone(),
        });
    }
    r.note("orientation", json!(orientation));
    r.note("variants", json!(ir.variants.iter().map(|v| v.to_json()).collect::<Vec<_>>()));
    r
}
