use super::structure::{format_tensors, MCoalgebra, Tensor};
use crate::error::{Error, Result};
use crate::operads::{symmetric_construct, Operad};
use crate::report::{Check, Report};
use crate::symbar::{generators, words, BarWord, Permutation};
use crate::zmod::{sign, Chain};
use rayon::prelude::*;
use serde_json::json;

fn cell_labels(m: &MCoalgebra) -> Vec<String> {
    m.complex.cells().iter().map(|c| c.label.clone()).collect()
}

fn ensure_bounds(m: &MCoalgebra, rank: usize, degree: usize) -> Result<()> {
    if rank > m.rank_bound || rank > m.structure.max_rank().max(1) {
        return Err(Error::BoundExhausted(format!(
            "rank {rank} requested, structure stored through rank {}",
            m.rank_bound.min(m.structure.max_rank().max(1))
        )));
    }
    if degree > m.degree_bound {
        return Err(Error::BoundExhausted(format!(
            "degree {degree} requested, structure stored through degree {}",
            m.degree_bound
        )));
    }
    Ok(())
}

struct Stage {
    degree: Check,
    support: Check,
    skeletal: Check,
    sign: Check,
    chain: Check,
    equivariance: Check,
}

impl Stage {
    fn new() -> Self {
        Stage {
            degree: Check::new("degree"),
            support: Check::new("finite support"),
            skeletal: Check::new("skeletal"),
            sign: Check::new("adjoint sign"),
            chain: Check::new("chain map"),
            equivariance: Check::new("equivariance"),
        }
    }

    fn merge(&mut self, o: Stage) {
        self.degree.merge(o.degree);
        self.support.merge(o.support);
        self.skeletal.merge(o.skeletal);
        self.sign.merge(o.sign);
        self.chain.merge(o.chain);
        self.equivariance.merge(o.equivariance);
    }
}

fn check_word(m: &MCoalgebra, w: &BarWord, cells: &[String], top: i64) -> Result<Stage> {
    let mut st = Stage::new();
    let n = w.rank();
    let k = w.degree() as i64;
    let perms = Permutation::all(n);
    for c in cells {
        let dc = m.degree_of(c);
        let v = m.adjoint(w, c)?;
        st.degree.record(
            v.keys().all(|t| t.len() == n && m.tensor_degree(t) == k + dc),
            || format!("{w} ⊗ {c}"),
        );
        if k + dc > n as i64 * top {
            st.support.record(v.is_zero(), || format!("{w} ⊗ {c} beyond the top degree"));
        }
        if let Ok(Some(sk)) = m.complex.skeleton_of(c) {
            st.skeletal.record(
                v.keys().all(|t| t.iter().all(|x| matches!(m.complex.skeleton_of(x), Ok(Some(s)) if s <= sk) || matches!(m.complex.skeleton_of(x), Ok(None)))),
                || format!("{w} ⊗ {c}"),
            );
        }
        let f = m.structure_map(c, w)?;
        st.sign.record(f.scaled(&sign((k * dc) % 2 != 0)) == v, || format!("{w} ⊗ {c}"));
        let lhs = m.tensor_boundary(&v);
        let mut rhs = m.adjoint_chain(&w.boundary(), &Chain::basis(c.clone()))?;
        let dcell = m.complex.boundary_of(c)?.terms;
        rhs.add_scaled(&m.adjoint_chain(&Chain::basis(w.clone()), &dcell)?, &sign(k % 2 != 0));
        st.chain.record(lhs == rhs, || {
            format!("{w} ⊗ {c}: ∂f̃ = {}, f̃∂ = {}", format_tensors(&lhs), format_tensors(&rhs))
        });
        for p in &perms {
            let l = m.adjoint(&w.act(p), c)?;
            let r = m.permute(p, &v)?;
            st.equivariance.record(l == r, || format!("{} ⊗ {c} against {p}·({w} ⊗ {c})", w.act(p)));
        }
    }
    Ok(st)
}

/// Verify the m-structure axioms on all generators within the bounds.
pub fn check_mstructure(m: &MCoalgebra, rank_bound: usize, degree_bound: usize) -> Result<Report> {
    ensure_bounds(m, rank_bound, degree_bound)?;
    let cells = cell_labels(m);
    let top = m.complex.degree_range().map(|r| r.1).unwrap_or(0);
    let mut counit = Check::new("(a) e1 ∘ f1 = id");
    let mut aug = Check::new("(b) f0 is the augmentation");
    for c in &cells {
        let v = m.adjoint(&BarWord::unit(1), c)?;
        counit.record(v == Chain::basis(vec![c.clone()]), || c.clone());
        let e = m.adjoint(&BarWord::unit(0), c)?;
        let want = m.complex.augmentation_of(c);
        aug.record(e.coeff(&Vec::new()) == want && e.len() <= 1, || c.clone());
    }
    let mut ws = Vec::new();
    for n in 2..=rank_bound {
        for k in 0..=degree_bound {
            ws.extend(generators(n, k));
        }
    }
    let stages: Vec<Result<Stage>> = ws.par_iter().map(|w| check_word(m, w, &cells, top)).collect();
    let mut st = Stage::new();
    for s in stages {
        st.merge(s?);
    }
    let mut r = Report::new(format!("m-structure on {}", m.name));
    r.checks = vec![counit, aug, st.degree, st.support, st.sign, st.skeletal, st.chain, st.equivariance];
    r.note("rank_bound", json!(rank_bound));
    r.note("degree_bound", json!(degree_bound));
    Ok(r)
}

/// Weak coherence for `X ∈ RS_m`, `Y ∈ RSₙ`, slot `i`:
/// `f̃(Y ∘ᵢ X ⊗ c) = (1 ⊗ ⋯ ⊗ f̃(Y ⊗ −) ⊗ ⋯ ⊗ 1) f̃(X ⊗ c)` with the Koszul sign,
/// over all word pairs with `|X| + |Y| ≤ degree_bound`.
pub fn check_weak_coherence(m: &MCoalgebra, n: usize, mm: usize, i: usize, degree_bound: usize) -> Result<Check> {
    if i == 0 || i > mm {
        return Err(Error::Precondition(format!("slot {i} outside 1..={mm}")));
    }
    ensure_bounds(m, n + mm - 1, degree_bound)?;
    let s = symmetric_construct(n + mm, degree_bound);
    let cells = cell_labels(m);
    let mut pairs = Vec::new();
    for a in 0..=degree_bound {
        for b in 0..=degree_bound - a {
            for x in words(mm, a) {
                for y in words(n, b) {
                    pairs.push((x.clone(), y));
                }
            }
        }
    }
    let results: Vec<Result<Check>> = pairs
        .par_iter()
        .map(|(x, y)| {
            let mut ch = Check::new("");
            let comp = s.compose(y, i, x);
            for c in &cells {
                let lhs = m.adjoint_chain(&comp, &Chain::basis(c.clone()))?;
                let rhs = m.apply_slot(i, y, &m.adjoint(x, c)?)?;
                ch.record(lhs == rhs, || format!("X = {x}, Y = {y}, i = {i}, c = {c}"));
            }
            Ok(ch)
        })
        .collect();
    let mut out = Check::new(format!("weak coherence n={n} m={mm} i={i}"));
    for r in results {
        out.merge(r?);
    }
    Ok(out)
}

/// Weak coherence for every `(n, m, i)` with `n, m ≤ max_arity`.
pub fn check_weak_coherence_all(m: &MCoalgebra, max_arity: usize, degree_bound: usize) -> Result<Report> {
    let mut r = Report::new(format!("weak coherence on {}", m.name));
    for n in 1..=max_arity {
        for mm in 1..=max_arity {
            for i in 1..=mm {
                r.checks.push(check_weak_coherence(m, n, mm, i, degree_bound)?);
            }
        }
    }
    Ok(r)
}

pub fn identity_words() -> (BarWord, BarWord, BarWord) {
    let e1 = BarWord::e(1);
    let a = BarWord::parse("[(1,3,2)|(1,2)]", 3).expect("word");
    let b = BarWord::parse("[(1,2)|(1,2,3)]", 3).expect("word");
    (e1, a, b)
}

/// `(Δ_{[(1,2)]} ⊗ 1) ∘ Δ_{[(1,2)]} = Δ_{[(1,3,2)|(1,2)]} − Δ_{[(1,2)|(1,2,3)]}` on every
/// basis cell, plus the underlying identity in the symmetric construct.
pub fn verify_coherence_identity(m: &MCoalgebra) -> Result<Report> {
    ensure_bounds(m, 3, 2)?;
    let (e1, a, b) = identity_words();
    let mut r = Report::new(format!("coherence identity on {}", m.name));
    let mut op = Check::new("identity in the symmetric construct");
    let s = symmetric_construct(3, 2);
    let want: Chain<BarWord> = [(a.clone(), 1.into()), (b.clone(), (-1).into())].into_iter().collect();
    op.record(s.compose(&e1, 1, &e1) == want, || format!("{e1} ∘1 {e1}"));
    let mut st = Check::new("identity on structure maps");
    let mut nonzero = 0usize;
    for c in cell_labels(m) {
        let lhs = m.apply_slot(1, &e1, &m.adjoint(&e1, &c)?)?;
        let rhs = m.adjoint_chain(&want, &Chain::basis(c.clone()))?;
        if !lhs.is_zero() {
            nonzero += 1;
        }
        st.record(lhs == rhs, || {
            format!("{c}: left {}, right {}", format_tensors(&lhs), format_tensors(&rhs))
        });
    }
    r.checks = vec![op, st];
    r.note("cells_with_nonzero_value", json!(nonzero));
    Ok(r)
}

/// `∂Δ_{[(1,2)]} = s·(TΔ − Δ)` as maps, with `∂h = ∂∘h + h∘∂` for the degree-1
/// map `h`. Reports the realized sign `s`, which must be the same for every cell.
pub fn homotopy_commutativity(m: &MCoalgebra) -> Result<Report> {
    ensure_bounds(m, 2, 1)?;
    let e1 = BarWord::e(1);
    let t = Permutation::transposition(2, 1, 2);
    let mut plus = true;
    let mut minus = true;
    let mut check = Check::new("homotopy between Δ and TΔ");
    let mut witness = None;
    for c in cell_labels(m) {
        let h = m.adjoint(&e1, &c)?;
        let mut dh = m.tensor_boundary(&h);
        dh.add_chain(&m.adjoint_chain(&Chain::basis(e1.clone()), &m.complex.boundary_of(&c)?.terms)?);
        let d = m.coproduct(&c)?;
        let mut diff = m.permute(&t, &d)?;
        diff.sub_chain(&d);
        check.tick();
        let p = dh == diff;
        let n = dh == diff.negated();
        plus &= p;
        minus &= n;
        if !p && !n && witness.is_none() {
            witness = Some(c.clone());
        }
    }
    let realized = match (plus, minus) {
        (true, true) => json!("both (all values vanish)"),
        (true, false) => json!(1),
        (false, true) => json!(-1),
        _ => json!(null),
    };
    if !(plus || minus) {
        check.fail(format!("no single sign works; first bad cell {}", witness.unwrap_or_default()));
    }
    let mut r = Report::new(format!("homotopy commutativity on {}", m.name));
    r.checks.push(check);
    r.note("sign", realized);
    Ok(r)
}

/// Value of `Δ_a(c)` rendered for reports.
pub fn render(m: &MCoalgebra, a: &BarWord, c: &str) -> Result<String> {
    let v: Chain<Tensor> = m.adjoint(a, c)?;
    Ok(format_tensors(&v))
}
