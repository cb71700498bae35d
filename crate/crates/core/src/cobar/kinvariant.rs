use crate::error::{Error, Result};
use crate::zmod::snf::{kernel, smith_with_transforms, Mat};
use crate::zmod::{homology, mapping_cone, AbelianGroup, Chain, FreeComplex, GradedMap};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// `M = H_k(cone f)` with `μ ∈ H^k(target; M)`, the restriction of the cocycle
/// on the cone that induces the identity of `M`.
#[derive(Clone, Debug)]
pub struct KInvariant {
    pub degree: i64,
    pub group: AbelianGroup,
    /// Order of each cyclic summand of `M`, 0 for ℤ.
    pub orders: Vec<BigInt>,
    /// Cocycle on the cone, by cell.
    pub cone_cocycle: BTreeMap<String, Vec<BigInt>>,
    /// `μ`, by cell of the target.
    pub cocycle: BTreeMap<String, Vec<BigInt>>,
    pub cone: Arc<FreeComplex>,
}

impl KInvariant {
    fn reduce(&self, v: Vec<BigInt>) -> Vec<BigInt> {
        v.into_iter()
            .zip(&self.orders)
            .map(|(x, d)| if d.is_zero() { x } else { x.mod_floor(d) })
            .collect()
    }

    /// `⟨μ, z⟩` for a chain of the target.
    pub fn pair(&self, z: &Chain<String>) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.orders.len()];
        for (l, c) in z.iter() {
            if let Some(v) = self.cocycle.get(l) {
                for (a, x) in acc.iter_mut().zip(v) {
                    *a += c * x;
                }
            }
        }
        self.reduce(acc)
    }

    /// `μ` vanishes on every boundary of the target.
    pub fn is_cocycle(&self, target: &FreeComplex) -> Result<bool> {
        for l in target.basis(self.degree + 1) {
            if self.pair(&target.boundary_of(l)?.terms).iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The algebraic k-invariant of a chain map whose cone is acyclic below `k`.
pub fn k_invariant(f: &GradedMap, k: i64) -> Result<KInvariant> {
    let cone = mapping_cone(f)?;
    let cx = cone.complex.clone();
    let lo = cx.degree_range().map(|(lo, _)| lo).unwrap_or(0).min(k);
    let h = homology(&cx, lo, k);
    if let Some((d, g)) = h.iter().find(|(d, g)| **d < k && !g.is_zero()) {
        return Err(Error::Precondition(format!("cone has H_{d} = {g}, not acyclic below {k}")));
    }
    let cells: Vec<String> = cx.basis(k).iter().map(|s| s.to_string()).collect();
    let n = cells.len();
    // cycle coordinates L, boundaries in those coordinates, Smith form of the latter
    let dk = cx.boundary_matrix(k).to_dense();
    let (kbasis, left) = if dk.rows == 0 || dk.cols == 0 { (Mat::identity(n), Mat::identity(n)) } else { kernel(&dk) };
    let z = kbasis.cols;
    let bnext = cx.boundary_matrix(k + 1).to_dense();
    let rel = if bnext.cols == 0 || z == 0 { Mat::zeros(z, 0) } else { left.mul(&bnext) };
    let (u, diag) = if rel.cols == 0 || z == 0 {
        (Mat::identity(z), vec![])
    } else {
        let s = smith_with_transforms(&rel);
        (s.u.clone(), s.d.clone())
    };
    let coords = if z == 0 { Mat::zeros(0, n) } else { u.mul(&left) };
    let mut rows = Vec::new();
    let mut orders = Vec::new();
    for i in 0..z {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_one() {
            continue;
        }
        rows.push(i);
        orders.push(d.abs());
    }
    let mut cone_cocycle: BTreeMap<String, Vec<BigInt>> = BTreeMap::new();
    for (j, l) in cells.iter().enumerate() {
        let v = rows
            .iter()
            .zip(&orders)
            .map(|(&i, d)| {
                let x = coords[(i, j)].clone();
                if d.is_zero() { x } else { x.mod_floor(d) }
            })
            .collect();
        cone_cocycle.insert(l.clone(), v);
    }
    // choose the generator of each summand so the first nonzero value is small and positive
    for (c, d) in orders.iter().enumerate() {
        if let Some(x) = cells.iter().map(|l| cone_cocycle[l][c].clone()).find(|x| !x.is_zero()) {
            let flip = if d.is_zero() { x.is_negative() } else { (d - &x) < x };
            if flip {
                for v in cone_cocycle.values_mut() {
                    v[c] = if d.is_zero() { -&v[c] } else { (-&v[c]).mod_floor(d) };
                }
            }
        }
    }
    let mut cocycle = BTreeMap::new();
    for l in f.target().basis(k) {
        let cl = crate::zmod::homology::target_label(l);
        cocycle.insert(l.to_string(), cone_cocycle[&cl].clone());
    }
    Ok(KInvariant {
        degree: k,
        group: h[&k].clone(),
        orders,
        cone_cocycle,
        cocycle,
        cone: cx,
    })
}
