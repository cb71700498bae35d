use super::complex::FreeComplex;
use super::map::GradedMap;
use super::snf::{invariant_factors, normalize_torsion, Diagonal};
use super::chain::Chain;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Finitely generated abelian group `ℤ^rank ⊕ ⊕ ℤ/tᵢ` with `t₁ | t₂ | …`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(rank: usize, torsion: &[BigInt]) -> Self {
        AbelianGroup {
            rank,
            torsion: normalize_torsion(torsion),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup::new(rank, &[])
    }

    pub fn cyclic(order: u64) -> Self {
        if order == 0 {
            AbelianGroup::free(1)
        } else {
            AbelianGroup::new(0, &[BigInt::from(order)])
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Cyclic summands as orders, 0 meaning ℤ.
    pub fn cyclic_orders(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rank];
        v.extend(self.torsion.iter().cloned());
        v
    }

    fn from_orders(orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut rank = 0;
        let mut t = Vec::new();
        for o in orders {
            if o.is_zero() {
                rank += 1;
            } else if !o.is_one() {
                t.push(o);
            }
        }
        AbelianGroup::new(rank, &t)
    }

    pub fn direct_sum(&self, o: &AbelianGroup) -> AbelianGroup {
        AbelianGroup::from_orders(self.cyclic_orders().into_iter().chain(o.cyclic_orders()))
    }

    pub fn tensor(&self, o: &AbelianGroup) -> AbelianGroup {
        let mut out = Vec::new();
        for a in self.cyclic_orders() {
            for b in o.cyclic_orders() {
                out.push(a.gcd(&b));
            }
        }
        AbelianGroup::from_orders(out)
    }

    pub fn tor(&self, o: &AbelianGroup) -> AbelianGroup {
        let mut out = Vec::new();
        for a in &self.torsion {
            for b in &o.torsion {
                out.push(a.gcd(b));
            }
        }
        AbelianGroup::from_orders(out)
    }

    /// `Hom(self, o)`.
    pub fn hom(&self, o: &AbelianGroup) -> AbelianGroup {
        let mut out = Vec::new();
        for a in self.cyclic_orders() {
            for b in o.cyclic_orders() {
                out.push(if a.is_zero() { b.clone() } else if b.is_zero() { BigInt::one() } else { a.gcd(&b) });
            }
        }
        AbelianGroup::from_orders(out)
    }

    /// `Ext(self, o)`.
    pub fn ext(&self, o: &AbelianGroup) -> AbelianGroup {
        let mut out = Vec::new();
        for a in &self.torsion {
            for b in o.cyclic_orders() {
                out.push(if b.is_zero() { a.clone() } else { a.gcd(&b) });
            }
        }
        AbelianGroup::from_orders(out)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("ℤ/{t}"));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Parses sums such as `Z`, `ℤ^2 ⊕ ℤ/3`, `Z/2+Z/4` or `0`.
impl std::str::FromStr for AbelianGroup {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        let bad = || crate::error::Error::Parse(format!("bad abelian group `{s}`"));
        let t = s.replace('ℤ', "Z").replace('⊕', "+");
        if t.trim() == "0" {
            return Ok(AbelianGroup::free(0));
        }
        let mut orders = Vec::new();
        for part in t.split('+').map(str::trim) {
            let rest = part.strip_prefix('Z').ok_or_else(bad)?.trim();
            if rest.is_empty() {
                orders.push(BigInt::zero());
            } else if let Some(r) = rest.strip_prefix('^') {
                let r: usize = r.trim().parse().map_err(|_| bad())?;
                orders.extend(std::iter::repeat_n(BigInt::zero(), r));
            } else if let Some(n) = rest.strip_prefix('/') {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                if n <= BigInt::zero() {
                    return Err(bad());
                }
                orders.push(n);
            } else {
                return Err(bad());
            }
        }
        Ok(AbelianGroup::from_orders(orders))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn diagonals(c: &FreeComplex, lo: i64, hi: i64) -> BTreeMap<i64, Diagonal> {
    (lo..=hi + 1)
        .into_par_iter()
        .map(|d| (d, invariant_factors(&c.boundary_matrix(d))))
        .collect()
}

/// Homology per degree in `[lo, hi]`.
pub fn homology(c: &FreeComplex, lo: i64, hi: i64) -> BTreeMap<i64, AbelianGroup> {
    if hi < lo {
        return BTreeMap::new();
    }
    let diag = diagonals(c, lo, hi);
    (lo..=hi)
        .map(|d| {
            let rk_out = diag[&d].rank;
            let inc = &diag[&(d + 1)];
            let free = c.dim(d) - rk_out - inc.rank;
            (d, AbelianGroup::new(free, &inc.torsion))
        })
        .collect()
}

/// Homology over the whole degree range of `c` (empty for the zero complex).
pub fn homology_all(c: &FreeComplex) -> BTreeMap<i64, AbelianGroup> {
    match c.degree_range() {
        Some((lo, hi)) => homology(c, lo, hi),
        None => BTreeMap::new(),
    }
}

/// Cohomology with coefficients in `m` by the universal coefficient theorem.
pub fn cohomology_with_coefficients(c: &FreeComplex, m: &AbelianGroup, lo: i64, hi: i64) -> BTreeMap<i64, AbelianGroup> {
    let h = homology(c, lo - 1, hi);
    (lo..=hi)
        .map(|n| (n, h[&n].hom(m).direct_sum(&h[&(n - 1)].ext(m))))
        .collect()
}

/// Künneth prediction for `H(C⊗D)` from `H(C)` and `H(D)`.
pub fn kunneth(hc: &BTreeMap<i64, AbelianGroup>, hd: &BTreeMap<i64, AbelianGroup>) -> BTreeMap<i64, AbelianGroup> {
    let mut out: BTreeMap<i64, AbelianGroup> = BTreeMap::new();
    for (i, a) in hc {
        for (j, b) in hd {
            let e = out.entry(i + j).or_default();
            *e = e.direct_sum(&a.tensor(b));
            let e = out.entry(i + j + 1).or_default();
            *e = e.direct_sum(&a.tor(b));
        }
    }
    out
}

/// Algebraic mapping cone `D_n ⊕ C_{n−1}`, `∂(d, c) = (∂d + f c, −∂c)`.
#[derive(Clone, Debug)]
pub struct MappingCone {
    pub complex: Arc<FreeComplex>,
    /// `D → cone`, degree 0.
    pub inclusion: GradedMap,
    /// `cone → C`, degree −1.
    pub projection: GradedMap,
}

pub fn target_label(l: &str) -> String {
    format!("D:{l}")
}

pub fn source_label(l: &str) -> String {
    format!("C:{l}")
}

pub fn mapping_cone(f: &GradedMap) -> Result<MappingCone> {
    if f.degree() != 0 {
        return Err(Error::DegreeMismatch("mapping cone needs a degree-0 map".into()));
    }
    if let Some(w) = f.chain_map_witness() {
        return Err(Error::NotChainMap(format!("∂f ≠ 0 on `{w}`")));
    }
    let (c, d) = (f.source().clone(), f.target().clone());
    let mut b = FreeComplex::builder();
    for x in d.cells() {
        b.push_cell(target_label(&x.label), x.degree, x.skeleton);
    }
    for x in c.cells() {
        b.push_cell(source_label(&x.label), x.degree + 1, x.skeleton.map(|s| s + 1));
    }
    for x in d.cells() {
        let bd = d.boundary_of(&x.label)?;
        b.set_boundary(target_label(&x.label), bd.terms.iter().map(|(l, v)| (target_label(l), v.clone())).collect());
    }
    for x in c.cells() {
        let mut terms: Vec<(String, BigInt)> =
            f.on_label(&x.label).iter().map(|(l, v)| (target_label(l), v.clone())).collect();
        for (l, v) in c.boundary_of(&x.label)?.terms.iter() {
            terms.push((source_label(l), -v));
        }
        b.set_boundary(source_label(&x.label), terms);
    }
    let complex = Arc::new(b.build()?);
    let inclusion = GradedMap::from_fn(d.clone(), complex.clone(), 0, |l| Ok(Chain::basis(target_label(l))))?;
    let projection = GradedMap::from_fn(complex.clone(), c.clone(), -1, |l| {
        Ok(match l.strip_prefix("C:") {
            Some(s) => Chain::basis(s.to_string()),
            None => Chain::zero(),
        })
    })?;
    Ok(MappingCone {
        complex,
        inclusion,
        projection,
    })
}

/// Rank over ℚ of an integer matrix.
pub fn rational_rank(m: &super::snf::Mat) -> usize {
    let sp = super::snf::SparseMatrix::new(
        m.rows,
        (0..m.cols)
            .map(|j| (0..m.rows).filter(|&i| !m[(i, j)].is_zero()).map(|i| (i, m[(i, j)].clone())).collect())
            .collect(),
    );
    invariant_factors(&sp).rank
}

/// Rank over ℚ of `f_*: H_n(C) → H_n(D)`.
pub fn induced_rational_rank(f: &GradedMap, n: i64) -> usize {
    use super::snf::{kernel, Mat};
    let c = f.source();
    let d = f.target();
    let bc = c.boundary_matrix(n).to_dense();
    let (zc, _) = if bc.cols == 0 { (Mat::zeros(0, 0), Mat::zeros(0, 0)) } else { kernel(&bc) };
    let fz = if zc.cols == 0 { Mat::zeros(d.dim(n), 0) } else { f.matrix(n).mul(&zc) };
    let bd = d.boundary_matrix(n + 1).to_dense();
    let mut joined = Mat::zeros(d.dim(n), fz.cols + bd.cols);
    for i in 0..d.dim(n) {
        for j in 0..fz.cols {
            joined[(i, j)] = fz[(i, j)].clone();
        }
        for j in 0..bd.cols {
            joined[(i, fz.cols + j)] = bd[(i, j)].clone();
        }
    }
    rational_rank(&joined) - rational_rank(&bd)
}
