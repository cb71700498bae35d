use super::coalgebra::Coalgebra;
use super::construction::{cobar, twisted_tensor, Cobar, TwistedTensor, TwistingCochain};
use crate::error::{Error, Result};
use crate::mcoalg::{Contraction, MCoalgebra, Step, ZigZag, ZigZagLift};
use crate::report::{Check, Report};
use crate::zmod::{homology, GradedMap};
use serde_json::json;
use std::sync::Arc;

/// `A ⊗_{α∘a} ΩC → … → B ⊗_{α∘b} ΩC`: one twisted product per object of the
/// top row, the perturbed contractions between them, and the composite `f̂`.
#[derive(Clone, Debug)]
pub struct CobarRow {
    pub cobar: Arc<Cobar>,
    pub twistings: Vec<TwistingCochain>,
    pub rows: Vec<TwistedTensor>,
    /// Contractions `big → small` of twisted products, one per step.
    pub steps: Vec<(&'static str, Contraction)>,
    pub f_hat: GradedMap,
    pub f: GradedMap,
    pub bound: i64,
}

/// Cobar row of a lifted zig-zag, twisting each `U_i` by `α∘v′_i∘p_i`.
pub fn cobar_row(lift: &ZigZagLift, bound: i64) -> Result<CobarRow> {
    let maps = lift
        .columns
        .iter()
        .map(|c| c.v.contraction.projection.compose(&c.p.map))
        .collect::<Result<Vec<_>>>()?;
    cobar_row_over(&lift.top, lift.base(), &maps, bound)
}

/// Cobar row over explicit coalgebra maps `c_i: U_i → C` compatible with the
/// injections of the top row.
pub fn cobar_row_over(top: &ZigZag, base: &MCoalgebra, maps: &[GradedMap], bound: i64) -> Result<CobarRow> {
    if bound < 1 {
        return Err(Error::BoundExhausted("cobar row needs a bound of at least 1".into()));
    }
    if maps.len() != top.steps.len() + 1 {
        return Err(Error::Precondition(format!(
            "{} maps for {} objects",
            maps.len(),
            top.steps.len() + 1
        )));
    }
    let mut objects: Vec<&MCoalgebra> = vec![&top.start];
    objects.extend(top.steps.iter().map(|s| s.target()));
    let (om, _) = cobar(&Coalgebra::from_mcoalgebra(base)?, bound)?;
    for (i, s) in top.steps.iter().enumerate() {
        let inj = &s.equivalence().contraction.injection;
        let (lhs, rhs) = match s {
            Step::Right(_) => (maps[i + 1].compose(inj)?, maps[i].clone()),
            Step::Left(_) => (maps[i].compose(inj)?, maps[i + 1].clone()),
        };
        if lhs != rhs {
            return Err(Error::Precondition(format!(
                "maps to C are not compatible with step {i}: {}",
                lhs.difference_witness(&rhs).unwrap_or_default()
            )));
        }
    }
    let mut twistings = Vec::new();
    let mut rows = Vec::new();
    for (i, (u, g)) in objects.iter().zip(maps).enumerate() {
        let tau = TwistingCochain::composite(om.clone(), Coalgebra::from_mcoalgebra(u)?, g.clone())
            .map_err(|e| Error::Precondition(format!("column {i}: {e}")))?;
        rows.push(twisted_tensor(&tau, bound)?);
        twistings.push(tau);
    }
    let mut steps = Vec::new();
    let mut f_hat = GradedMap::identity(rows[0].complex.clone());
    for (i, s) in top.steps.iter().enumerate() {
        let (big, small) = match s {
            Step::Right(_) => (&rows[i + 1], &rows[i]),
            Step::Left(_) => (&rows[i], &rows[i + 1]),
        };
        let c = perturb(big, small, &s.equivalence().contraction)?;
        let m = match s {
            Step::Right(_) => &c.injection,
            Step::Left(_) => &c.projection,
        };
        f_hat = m.compose(&f_hat)?;
        steps.push((s.direction(), c));
    }
    Ok(CobarRow {
        cobar: om,
        twistings,
        rows,
        steps,
        f_hat,
        f: top.underlying()?,
        bound,
    })
}

/// Perturb `(f′⊗1, f⊗1, φ⊗1)` by the twist of `big`:
/// `f′_∞ = f′ Σ (δφ)ⁿ`, `φ_∞ = φ Σ (δφ)ⁿ`; the injection is unchanged because
/// it is a coalgebra map and `φ∘f = 0`.
fn perturb(big: &TwistedTensor, small: &TwistedTensor, c: &Contraction) -> Result<Contraction> {
    let pi = big.tensor_map(&c.projection, small)?;
    let iota = small.tensor_map(&c.injection, big)?;
    let h = big.tensor_map(&c.homotopy, big)?;
    let delta = big.twist()?;
    let series = |outer: &GradedMap, l: &str| {
        let mut x = crate::zmod::Chain::basis(l.to_string());
        let mut acc = outer.apply_chain(&x);
        for _ in 0..=big.bound + 1 {
            x = delta.apply_chain(&h.apply_chain(&x));
            if x.is_zero() {
                break;
            }
            acc.add_chain(&outer.apply_chain(&x));
        }
        Ok(acc)
    };
    let pi_inf = GradedMap::from_fn(big.complex.clone(), small.complex.clone(), 0, |l| series(&pi, l))?;
    let h_inf = GradedMap::from_fn(big.complex.clone(), big.complex.clone(), 1, |l| series(&h, l))?;
    Contraction::new(pi_inf, iota, h_inf)
}

fn agree_below(name: &str, a: &GradedMap, b: &GradedMap, below: i64) -> Check {
    let mut ch = Check::new(name);
    for cell in a.source().cells().iter().filter(|c| c.degree < below) {
        let (x, y) = (a.on_label(&cell.label), b.on_label(&cell.label));
        ch.record(x == y, || format!("on `{}`: {x} vs {y}", cell.label));
    }
    ch
}

impl CobarRow {
    pub fn source(&self) -> &TwistedTensor {
        &self.rows[0]
    }

    pub fn target(&self) -> &TwistedTensor {
        self.rows.last().expect("nonempty")
    }

    /// Exact checks; maps touching the top degree are compared below it.
    pub fn verify(&self) -> Result<Report> {
        let n = self.bound;
        let mut r = Report::new("cobar row");
        let mut tw = Check::new("twisting condition");
        for t in &self.twistings {
            tw.merge(t.check()?);
        }
        r.checks.push(tw);
        let mut sq = Check::new("twisted differentials square to zero");
        for row in &self.rows {
            for c in row.complex.cells() {
                let dd = row.complex.boundary_chain(&row.complex.boundary_of(&c.label)?.terms)?;
                sq.record(dd.is_zero(), || format!("on `{}`", c.label));
            }
        }
        r.checks.push(sq);
        let mut con = Check::new("twisted contractions");
        for (i, (_, c)) in self.steps.iter().enumerate() {
            let (p, j, h) = (&c.projection, &c.injection, &c.homotopy);
            let big = c.big().clone();
            let small = c.small().clone();
            let tag = |ch: Check| {
                let mut ch = ch;
                if let Some(w) = ch.witness.take() {
                    ch.witness = Some(format!("step {i}: {w}"));
                }
                ch
            };
            con.merge(tag(agree_below("π chain map", &p.boundary(), &GradedMap::zero(big.clone(), small.clone(), -1), n)));
            con.merge(tag(agree_below("ι chain map", &j.boundary(), &GradedMap::zero(small.clone(), big.clone(), -1), n)));
            con.merge(tag(agree_below("πι = 1", &p.compose(j)?, &GradedMap::identity(small.clone()), n + 1)));
            con.merge(tag(agree_below(
                "ιπ − 1 = ∂h",
                &j.compose(p)?.sub(&GradedMap::identity(big.clone()))?,
                &h.boundary(),
                n,
            )));
            con.merge(tag(agree_below("h² = 0", &h.compose(h)?, &GradedMap::zero(big.clone(), big.clone(), 2), n)));
            con.merge(tag(agree_below("hι = 0", &h.compose(j)?, &GradedMap::zero(small.clone(), big.clone(), 1), n)));
            con.merge(tag(agree_below("πh = 0", &p.compose(h)?, &GradedMap::zero(big.clone(), small.clone(), 1), n)));
        }
        r.checks.push(con);
        let src = self.source();
        let dst = self.target();
        r.checks.push(agree_below(
            "f̂ is a chain map",
            &self.f_hat.boundary(),
            &GradedMap::zero(src.complex.clone(), dst.complex.clone(), -1),
            n,
        ));
        let lhs = dst.counit_map()?.compose(&self.f_hat)?;
        let rhs = self.f.compose(&src.counit_map()?)?;
        r.checks.push(agree_below("square (1⊗ε)∘f̂ = f∘(1⊗ε)", &lhs, &rhs, n + 1));
        let ha = homology(&src.complex, 0, n - 1);
        let hb = homology(&dst.complex, 0, n - 1);
        let mut eq = Check::new("equal homology of the ends");
        eq.record(ha == hb, || format!("{ha:?} vs {hb:?}"));
        r.checks.push(eq);
        let show = |h: &std::collections::BTreeMap<i64, crate::zmod::AbelianGroup>| {
            h.iter().map(|(d, g)| (d.to_string(), json!(g.to_string()))).collect::<serde_json::Map<_, _>>()
        };
        r.notes.push(("source homology".into(), json!(show(&ha))));
        r.notes.push(("target homology".into(), json!(show(&hb))));
        Ok(r)
    }
}
