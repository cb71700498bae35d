use super::morphism::{Contraction, ElementaryEquivalence, StrictMorphism};
use super::structure::{map_tensors, MCoalgebra, StructureMaps, Tensor};
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::symbar::BarWord;
use crate::zmod::snf::smith_with_transforms;
use crate::zmod::{Chain, FreeComplex, GradedMap};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::json;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// One link of a zig-zag. `Right` runs small → big along the injection,
/// `Left` runs big → small along the projection.
#[derive(Clone, Debug)]
pub enum Step {
    Right(ElementaryEquivalence),
    Left(ElementaryEquivalence),
}

impl Step {
    pub fn source(&self) -> &MCoalgebra {
        match self {
            Step::Right(e) => &e.small,
            Step::Left(e) => &e.big,
        }
    }

    pub fn target(&self) -> &MCoalgebra {
        match self {
            Step::Right(e) => &e.big,
            Step::Left(e) => &e.small,
        }
    }

    pub fn equivalence(&self) -> &ElementaryEquivalence {
        match self {
            Step::Right(e) | Step::Left(e) => e,
        }
    }

    pub fn underlying(&self) -> &GradedMap {
        match self {
            Step::Right(e) => &e.contraction.injection,
            Step::Left(e) => &e.contraction.projection,
        }
    }

    pub fn direction(&self) -> &'static str {
        match self {
            Step::Right(_) => "right",
            Step::Left(_) => "left",
        }
    }
}

/// A formal composite of elementary equivalences running from `start`.
#[derive(Clone, Debug)]
pub struct ZigZag {
    pub start: MCoalgebra,
    pub steps: Vec<Step>,
}

impl ZigZag {
    pub fn new(start: MCoalgebra, steps: Vec<Step>) -> Result<Self> {
        let mut at = start.complex.signature();
        for (i, s) in steps.iter().enumerate() {
            if s.source().complex.signature() != at {
                return Err(Error::Precondition(format!("step {i} does not start where step {} ends", i as i64 - 1)));
            }
            at = s.target().complex.signature();
        }
        Ok(ZigZag { start, steps })
    }

    pub fn source(&self) -> &MCoalgebra {
        &self.start
    }

    pub fn target(&self) -> &MCoalgebra {
        self.steps.last().map(|s| s.target()).unwrap_or(&self.start)
    }

    /// Composite of the underlying chain maps.
    pub fn underlying(&self) -> Result<GradedMap> {
        let mut f = GradedMap::identity(self.start.complex.clone());
        for s in &self.steps {
            f = s.underlying().compose(&f)?;
        }
        Ok(f)
    }

    /// Check every step as an elementary equivalence.
    pub fn check(&self, rank_bound: usize, degree_bound: usize) -> Result<Report> {
        let mut r = Report::new("zig-zag");
        for (i, s) in self.steps.iter().enumerate() {
            let sub = s.equivalence().check(rank_bound, degree_bound)?;
            let mut ch = Check::new(format!("step {i} ({})", s.direction()));
            for c in sub.checks {
                ch.merge(c);
            }
            r.checks.push(ch);
        }
        Ok(r)
    }
}

/// Structure maps on `Z ⊕ K`, `K` a complement of `U_i` in `U_{i+1}`, induced
/// from the direct sum `Z ⊕ U_{i+1}` through the quotient `q`.
struct PushoutStructure {
    z: MCoalgebra,
    u: MCoalgebra,
    kvecs: BTreeMap<String, Chain<String>>,
    q: HashMap<String, Chain<String>>,
}

impl StructureMaps for PushoutStructure {
    fn kind(&self) -> String {
        "push-out".into()
    }

    fn adjoint(&self, w: &BarWord, label: &str) -> Result<Chain<Tensor>> {
        if let Some(k) = self.kvecs.get(label) {
            let x = self.u.adjoint_chain(&Chain::basis(w.clone()), k)?;
            Ok(map_tensors(&x, |l| self.q.get(l).cloned().unwrap_or_else(Chain::zero)))
        } else {
            self.z.adjoint(w, label)
        }
    }

    fn max_rank(&self) -> usize {
        self.z.rank_bound.min(self.u.rank_bound)
    }
}

/// One column of the lifted diagram.
#[derive(Clone, Debug)]
pub struct LiftColumn {
    pub p: StrictMorphism,
    /// `v_i: C → Z_i` with its projection and homotopy.
    pub v: ElementaryEquivalence,
}

/// Output of [`zigzag_lift`]: columns `p_i: U_i → Z_i`, the lower row `t_i`,
/// the third-row contractions `v_i`, and the right-end splice.
#[derive(Clone, Debug)]
pub struct ZigZagLift {
    pub top: ZigZag,
    pub a: StrictMorphism,
    pub b: StrictMorphism,
    pub columns: Vec<LiftColumn>,
    pub lower: Vec<Step>,
}

impl ZigZagLift {
    pub fn base(&self) -> &MCoalgebra {
        &self.a.target
    }

    /// The bottom row as a zig-zag `Z_0 = C → … → Z_t`.
    pub fn lower_row(&self) -> Result<ZigZag> {
        ZigZag::new(self.columns[0].p.target.clone(), self.lower.clone())
    }

    /// Right-end splice `v′_t ∘ p_t = b`. Holds exactly when `b` kills every
    /// complement `ker s′` met along the way.
    pub fn splice_check(&self) -> Result<Check> {
        let last = self.columns.last().expect("at least one column");
        let lhs = last.v.contraction.projection.compose(&last.p.map)?;
        let mut ch = Check::new("splice v′∘p = b");
        ch.record(lhs == self.b.map, || lhs.difference_witness(&self.b.map).unwrap_or_default());
        Ok(ch)
    }

    /// Strict vertical maps, contraction conditions on the lower and third rows,
    /// φ-naturality on push-out columns, and the splice.
    pub fn verify(&self, rank_bound: usize, degree_bound: usize) -> Result<Report> {
        let mut r = Report::new("zig-zag lift");
        let mut strict = Check::new("vertical maps are strict");
        let mut thirds = Check::new("v_i are elementary equivalences onto C");
        let col_results: Vec<Result<(Check, Report)>> = self
            .columns
            .par_iter()
            .map(|c| Ok((c.p.check(rank_bound, degree_bound)?, c.v.check(rank_bound, degree_bound)?)))
            .collect();
        for (i, res) in col_results.into_iter().enumerate() {
            let (s, v) = res?;
            if !s.passed {
                strict.fail(format!("column {i}: {}", s.witness.clone().unwrap_or_default()));
            } else {
                strict.tick();
            }
            for c in v.checks {
                if !c.passed {
                    thirds.fail(format!("column {i}: {} {}", c.name, c.witness.clone().unwrap_or_default()));
                } else {
                    thirds.tick();
                }
            }
        }
        let mut lower = Check::new("lower row consists of elementary equivalences");
        let mut natural = Check::new("φ-naturality p∘φ_U = φ_Z∘p");
        let mut skipped = Vec::new();
        for (i, t) in self.lower.iter().enumerate() {
            for c in t.equivalence().check(rank_bound, degree_bound)?.checks {
                if !c.passed {
                    lower.fail(format!("step {i}: {} {}", c.name, c.witness.clone().unwrap_or_default()));
                } else {
                    lower.tick();
                }
            }
            match (&self.top.steps[i], t) {
                (Step::Right(up), Step::Right(down)) => {
                    let p = &self.columns[i + 1].p.map;
                    let lhs = p.compose(&up.contraction.homotopy)?;
                    let rhs = down.contraction.homotopy.compose(p)?;
                    natural.record(lhs == rhs, || format!("step {i} at {}", lhs.difference_witness(&rhs).unwrap_or_default()));
                }
                _ => skipped.push(i),
            }
        }
        r.checks.extend([strict, lower, natural, thirds, self.splice_check()?]);
        r.note("identity lower steps", json!(skipped));
        Ok(r)
    }
}

fn signature_eq(a: &Arc<FreeComplex>, b: &Arc<FreeComplex>) -> bool {
    a.signature() == b.signature()
}

/// Lift an equivalence `A → B` over strict maps `a: A → C`, `b: B → C` to a
/// second row `C = Z_0 … Z_t` with strict vertical maps.
pub fn zigzag_lift(top: &ZigZag, a: &StrictMorphism, b: &StrictMorphism) -> Result<ZigZagLift> {
    if !signature_eq(&a.source.complex, &top.source().complex) || !signature_eq(&b.source.complex, &top.target().complex) {
        return Err(Error::Precondition("vertical maps do not start at the ends of the zig-zag".into()));
    }
    if !signature_eq(&a.target.complex, &b.target.complex) {
        return Err(Error::Precondition("vertical maps land in different complexes".into()));
    }
    let f = top.underlying()?;
    let bf = b.map.compose(&f)?;
    if bf != a.map {
        return Err(Error::Precondition(format!(
            "outer square does not commute at {}",
            bf.difference_witness(&a.map).unwrap_or_default()
        )));
    }
    let c = a.target.clone();
    let mut columns = vec![LiftColumn {
        p: a.clone(),
        v: ElementaryEquivalence::identity(c.clone()),
    }];
    let mut lower = Vec::new();
    for (i, step) in top.steps.iter().enumerate() {
        let prev = columns.last().expect("column").clone();
        match step {
            Step::Left(e) => {
                let p = StrictMorphism::new(e.small.clone(), prev.p.target.clone(), prev.p.map.compose(&e.contraction.injection)?)?;
                lower.push(Step::Left(ElementaryEquivalence::identity(prev.p.target.clone())));
                columns.push(LiftColumn { p, v: prev.v.clone() });
            }
            Step::Right(e) => {
                let (col, t) = push_out(i + 1, e, &prev)?;
                lower.push(Step::Right(t));
                columns.push(col);
            }
        }
    }
    Ok(ZigZagLift {
        top: top.clone(),
        a: a.clone(),
        b: b.clone(),
        columns,
        lower,
    })
}

fn push_out(step: usize, e: &ElementaryEquivalence, prev: &LiftColumn) -> Result<(LiftColumn, ElementaryEquivalence)> {
    let u = &e.big;
    let ucx = &u.complex;
    let s = &e.contraction.injection;
    let sp = &e.contraction.projection;
    let phi = &e.contraction.homotopy;
    let zi = &prev.p.target;
    let pi = &prev.p.map;

    // K = ker s′ per degree, with coordinates c_K
    let mut kvecs: BTreeMap<String, Chain<String>> = BTreeMap::new();
    let mut kdeg: Vec<(String, i64)> = Vec::new();
    let mut coords: HashMap<i64, Vec<(String, Vec<BigInt>)>> = HashMap::new();
    for d in ucx.degrees() {
        let basis: Vec<String> = ucx.basis(d).iter().map(|x| x.to_string()).collect();
        let m = sp.matrix(d);
        let sm = smith_with_transforms(&m);
        let r = sm.rank();
        let mut rows = Vec::new();
        for j in r..basis.len() {
            let mut col = sm.v.column(j);
            let mut row = sm.v_inv.row(j);
            if col.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                col.iter_mut().for_each(|x| *x = -&*x);
                row.iter_mut().for_each(|x| *x = -&*x);
            }
            let v: Chain<String> = basis.iter().cloned().zip(col.iter().cloned()).collect();
            let label = match v.iter().collect::<Vec<_>>().as_slice() {
                [(l, c)] if **c == BigInt::from(1) => format!("{l}'{step}"),
                _ => format!("k{step}.{d}.{}", j - r),
            };
            kvecs.insert(label.clone(), v);
            kdeg.push((label.clone(), d));
            rows.push((label, row));
        }
        coords.insert(d, rows);
    }
    let basis_pos: HashMap<String, (i64, usize)> = ucx
        .degrees()
        .into_iter()
        .flat_map(|d| ucx.basis(d).into_iter().enumerate().map(move |(i, l)| (l.to_string(), (d, i))).collect::<Vec<_>>())
        .collect();
    let c_k = |x: &Chain<String>| -> Chain<String> {
        let mut out = Chain::zero();
        for (l, c) in x.iter() {
            let (d, i) = basis_pos[l];
            for (kl, row) in &coords[&d] {
                if !row[i].is_zero() {
                    out.add_term(kl.clone(), c * &row[i]);
                }
            }
        }
        out
    };

    // Z_{i+1} = Z_i ⊕ K
    let mut bld = FreeComplex::builder();
    for cell in zi.complex.cells() {
        bld.push_cell(cell.label.clone(), cell.degree, cell.skeleton);
        let bd = zi.complex.boundary_of(&cell.label)?;
        bld.set_boundary(cell.label.clone(), bd.terms.iter().map(|(l, c)| (l.clone(), c.clone())).collect());
    }
    for (l, d) in &kdeg {
        bld.push_cell(l.clone(), *d, None);
        let bd = c_k(&ucx.boundary_chain(&kvecs[l])?);
        bld.set_boundary(l.clone(), bd.iter().map(|(l, c)| (l.clone(), c.clone())).collect());
    }
    if let Some(aug) = zi.complex.augmentation_map() {
        let mut aug = aug;
        for (l, _) in &kdeg {
            let a = ucx.augment(&kvecs[l]);
            if !a.is_zero() {
                aug.insert(l.clone(), a);
            }
        }
        bld.set_augmentation(aug);
    }
    let zcx = Arc::new(bld.build()?);

    let q: HashMap<String, Chain<String>> = ucx
        .cells()
        .iter()
        .map(|cell| {
            let e_u = Chain::basis(cell.label.clone());
            let back = sp.apply_chain(&e_u);
            let mut img = pi.apply_chain(&back);
            let mut rest = e_u.clone();
            rest.sub_chain(&s.apply_chain(&back));
            img.add_chain(&c_k(&rest));
            (cell.label.clone(), img)
        })
        .collect();

    let name = format!("Z{step}");
    let structure = PushoutStructure {
        z: zi.clone(),
        u: u.clone(),
        kvecs: kvecs.clone(),
        q: q.clone(),
    };
    let rank = structure.max_rank();
    let z_next = MCoalgebra::new(name, zcx.clone(), Arc::new(structure), rank, zi.degree_bound.min(u.degree_bound));

    let p = GradedMap::from_fn(ucx.clone(), zcx.clone(), 0, |l| Ok(q[l].clone()))?;
    let t = GradedMap::from_fn(zi.complex.clone(), zcx.clone(), 0, |l| Ok(Chain::basis(l.to_string())))?;
    let tp = GradedMap::from_fn(zcx.clone(), zi.complex.clone(), 0, |l| {
        Ok(match kvecs.get(l) {
            Some(k) => pi.apply_chain(&sp.apply_chain(k)),
            None => Chain::basis(l.to_string()),
        })
    })?;
    let phi_z = GradedMap::from_fn(zcx.clone(), zcx.clone(), 1, |l| {
        Ok(match kvecs.get(l) {
            Some(k) => c_k(&phi.apply_chain(k)),
            None => Chain::zero(),
        })
    })?;
    let t_eq = ElementaryEquivalence::new(z_next.clone(), zi.clone(), Contraction::new(tp.clone(), t.clone(), phi_z.clone())?)?;

    let vc = &prev.v.contraction;
    let v = t.compose(&vc.injection)?;
    let vp = vc.projection.compose(&tp)?;
    let psi = GradedMap::from_fn(zcx.clone(), zcx.clone(), 1, |l| {
        Ok(match kvecs.get(l) {
            Some(_) => phi_z.on_label(l),
            None => t.apply_chain(&vc.homotopy.on_label(l)),
        })
    })?;
    let v_eq = ElementaryEquivalence::new(z_next.clone(), prev.v.small.clone(), Contraction::new(vp, v, psi)?)?;
    let col = LiftColumn {
        p: StrictMorphism::new(u.clone(), z_next, p)?,
        v: v_eq,
    };
    Ok((col, t_eq))
}
