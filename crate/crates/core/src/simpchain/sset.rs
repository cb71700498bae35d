use crate::error::{Error, Result};
use crate::zmod::{FreeComplex, GradedMap};
use num_bigint::BigInt;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

/// A simplex `η^*(y)`: nondegenerate `y` (by index) pulled back along a monotone
/// surjection `η: [m] → [dim y]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub base: usize,
    pub eta: Vec<u8>,
}

impl Simplex {
    pub fn nondegenerate(base: usize, dim: usize) -> Simplex {
        Simplex {
            base,
            eta: (0..=dim as u8).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.eta.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.eta.windows(2).any(|w| w[0] == w[1])
    }

    /// `s_j` of this simplex.
    pub fn degeneracy(&self, j: usize) -> Simplex {
        let mut eta = self.eta.clone();
        eta.insert(j, self.eta[j]);
        Simplex { base: self.base, eta }
    }

    /// Indices `j₁ > … > j_t` with `self = s_{j₁}⋯s_{j_t}(base)`.
    pub fn degeneracy_word(&self) -> Vec<usize> {
        let mut js: Vec<usize> = (0..self.dim()).filter(|&k| self.eta[k] == self.eta[k + 1]).collect();
        js.reverse();
        js
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegSimplex {
    pub id: String,
    pub dim: usize,
    pub faces: Vec<Simplex>,
}

/// Finite simplicial set stored by its nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    pub name: String,
    simplices: Vec<NondegSimplex>,
    index: HashMap<String, usize>,
    by_dim: Vec<Vec<usize>>,
    pub basepoint: Option<String>,
    pub simply_connected: bool,
}

impl SimplicialSet {
    pub fn builder(name: impl Into<String>) -> SimplicialSetBuilder {
        SimplicialSetBuilder {
            name: name.into(),
            cells: Vec::new(),
            basepoint: None,
            simply_connected: false,
        }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn simplices(&self) -> &[NondegSimplex] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> &NondegSimplex {
        &self.simplices[i]
    }

    pub fn of_dim(&self, d: usize) -> &[usize] {
        self.by_dim.get(d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownLabel(id.to_string()))
    }

    pub fn label(&self, s: &Simplex) -> String {
        let id = &self.simplices[s.base].id;
        let js = s.degeneracy_word();
        if js.is_empty() {
            id.clone()
        } else {
            let w: String = js.iter().map(|j| format!("s{j}")).collect();
            format!("{w}({id})")
        }
    }

    /// `d_i` of an arbitrary simplex.
    pub fn face(&self, x: &Simplex, i: usize) -> Simplex {
        let m = x.dim();
        debug_assert!(m >= 1 && i <= m);
        let rho: Vec<u8> = (0..m).map(|k| if k < i { x.eta[k] } else { x.eta[k + 1] }).collect();
        let n = self.simplices[x.base].dim as u8;
        let missing = (0..=n).find(|v| !rho.contains(v));
        match missing {
            None => Simplex { base: x.base, eta: rho },
            Some(j) => {
                let f = &self.simplices[x.base].faces[j as usize];
                let eta = rho.iter().map(|&r| f.eta[(if r < j { r } else { r - 1 }) as usize]).collect();
                Simplex { base: f.base, eta }
            }
        }
    }

    /// The face of nondegenerate `base` spanned by the increasing vertex list
    /// `verts`, as a simplex of `X`.
    pub fn face_on(&self, base: usize, verts: &[usize]) -> Simplex {
        let n = self.simplices[base].dim;
        let mut x = Simplex::nondegenerate(base, n);
        for v in (0..=n).rev() {
            if !verts.contains(&v) {
                x = self.face(&x, v);
            }
        }
        x
    }

    /// Vertices of a simplex in order, as nondegenerate indices.
    pub fn vertices(&self, x: &Simplex) -> Vec<usize> {
        (0..=x.dim()).map(|v| self.face_on_simplex(x, &[v]).base).collect()
    }

    fn face_on_simplex(&self, x: &Simplex, verts: &[usize]) -> Simplex {
        let mut y = x.clone();
        for v in (0..=x.dim()).rev() {
            if !verts.contains(&v) {
                y = self.face(&y, v);
            }
        }
        y
    }

    /// Verify `d_i d_j = d_{j−1} d_i` for `i < j` on every stored simplex.
    pub fn check_identities(&self) -> Result<()> {
        for s in &self.simplices {
            if s.faces.len() != if s.dim == 0 { 0 } else { s.dim + 1 } {
                return Err(Error::Precondition(format!("simplex `{}` has the wrong number of faces", s.id)));
            }
            for f in &s.faces {
                if f.dim() + 1 != s.dim {
                    return Err(Error::DegreeMismatch(format!("face of `{}` has the wrong dimension", s.id)));
                }
            }
            if s.dim < 2 {
                continue;
            }
            for j in 0..=s.dim {
                for i in 0..j {
                    let a = self.face(&s.faces[j], i);
                    let b = self.face(&s.faces[i], j - 1);
                    if a != b {
                        return Err(Error::Precondition(format!(
                            "simplicial identity d{i}d{j} = d{}d{i} fails on `{}`",
                            j - 1,
                            s.id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Normalized chains; the skeleton tag of a simplex is its dimension.
    pub fn chains(&self) -> Arc<FreeComplex> {
        let mut b = FreeComplex::builder();
        for s in &self.simplices {
            b.push_cell(s.id.clone(), s.dim as i64, Some(s.dim));
        }
        for s in &self.simplices {
            let mut terms: BTreeMap<String, BigInt> = BTreeMap::new();
            for (i, f) in s.faces.iter().enumerate() {
                if !f.is_degenerate() {
                    let c = if i % 2 == 0 { 1 } else { -1 };
                    *terms.entry(self.simplices[f.base].id.clone()).or_default() += c;
                }
            }
            b.set_boundary(s.id.clone(), terms.into_iter().filter(|(_, c)| c != &BigInt::from(0)).collect());
        }
        Arc::new(b.default_augmentation().build().expect("simplicial chains form a complex"))
    }
}

impl fmt::Display for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.by_dim.iter().map(|v| v.len().to_string()).collect();
        write!(f, "{} ({})", self.name, counts.join(", "))
    }
}

/// A face given by name: a nondegenerate id with degeneracies applied
/// innermost first, `s_{j₁}⋯s_{j_t}(id)` written `[j₁, …, j_t]`.
#[derive(Clone, Debug)]
pub struct FaceSpec {
    pub id: String,
    pub degeneracies: Vec<usize>,
}

impl From<&str> for FaceSpec {
    fn from(s: &str) -> Self {
        FaceSpec {
            id: s.to_string(),
            degeneracies: Vec::new(),
        }
    }
}

pub struct SimplicialSetBuilder {
    name: String,
    cells: Vec<(String, usize, Vec<FaceSpec>)>,
    basepoint: Option<String>,
    simply_connected: bool,
}

impl SimplicialSetBuilder {
    pub fn simplex(mut self, id: impl Into<String>, dim: usize, faces: Vec<FaceSpec>) -> Self {
        self.push(id, dim, faces);
        self
    }

    pub fn push(&mut self, id: impl Into<String>, dim: usize, faces: Vec<FaceSpec>) {
        self.cells.push((id.into(), dim, faces));
    }

    pub fn basepoint(mut self, id: impl Into<String>) -> Self {
        self.basepoint = Some(id.into());
        self
    }

    pub fn simply_connected(mut self, flag: bool) -> Self {
        self.simply_connected = flag;
        self
    }

    pub fn build(self) -> Result<SimplicialSet> {
        let mut order: Vec<usize> = (0..self.cells.len()).collect();
        order.sort_by_key(|&i| self.cells[i].1);
        let mut index = HashMap::new();
        for (k, &i) in order.iter().enumerate() {
            if index.insert(self.cells[i].0.clone(), k).is_some() {
                return Err(Error::DuplicateLabel(self.cells[i].0.clone()));
            }
        }
        let mut simplices = Vec::with_capacity(order.len());
        let mut by_dim: Vec<Vec<usize>> = Vec::new();
        for (k, &i) in order.iter().enumerate() {
            let (id, dim, specs) = &self.cells[i];
            let mut faces = Vec::new();
            for spec in specs {
                let &b = index.get(&spec.id).ok_or_else(|| Error::UnknownLabel(spec.id.clone()))?;
                let bd = self.cells[order[b]].1;
                let mut s = Simplex::nondegenerate(b, bd);
                for &j in spec.degeneracies.iter().rev() {
                    if j > s.dim() {
                        return Err(Error::Precondition(format!("degeneracy s{j} out of range in a face of `{id}`")));
                    }
                    s = s.degeneracy(j);
                }
                faces.push(s);
            }
            while by_dim.len() <= *dim {
                by_dim.push(Vec::new());
            }
            by_dim[*dim].push(k);
            simplices.push(NondegSimplex {
                id: id.clone(),
                dim: *dim,
                faces,
            });
        }
        if let Some(bp) = &self.basepoint {
            let &b = index.get(bp).ok_or_else(|| Error::UnknownLabel(bp.clone()))?;
            if simplices[b].dim != 0 {
                return Err(Error::Precondition(format!("basepoint `{bp}` is not a vertex")));
            }
        }
        let x = SimplicialSet {
            name: self.name,
            simplices,
            index,
            by_dim,
            basepoint: self.basepoint,
            simply_connected: self.simply_connected,
        };
        x.check_identities()?;
        Ok(x)
    }
}

/// Product simplicial set; nondegenerate simplices are pairs without a common
/// degeneracy, labelled `(x,y)`.
pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> SimplicialSet {
    // (a, b, η, ζ) for every nondegenerate simplex of X×Y
    let mut cells: Vec<(Simplex, Simplex)> = Vec::new();
    for a in 0..x.len() {
        for b in 0..y.len() {
            let (p, q) = (x.simplex(a).dim, y.simplex(b).dim);
            for path in shuffle_paths(p, q) {
                let eta: Vec<u8> = path.iter().map(|s| s.0).collect();
                let zeta: Vec<u8> = path.iter().map(|s| s.1).collect();
                cells.push((Simplex { base: a, eta }, Simplex { base: b, eta: zeta }));
            }
        }
    }
    cells.sort_by_key(|c| c.0.dim());
    let key: HashMap<(Simplex, Simplex), usize> = cells.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let label = |c: &(Simplex, Simplex)| format!("({},{})", x.label(&c.0), y.label(&c.1));
    let mut builder = SimplicialSet::builder(format!("{}×{}", x.name, y.name));
    for c in &cells {
        let m = c.0.dim();
        let mut faces = Vec::new();
        if m > 0 {
            for i in 0..=m {
                let (fa, fb) = (x.face(&c.0, i), y.face(&c.1, i));
                // split the joint map into a surjection followed by an injection
                let pairs: Vec<(u8, u8)> = fa.eta.iter().copied().zip(fb.eta.iter().copied()).collect();
                let mut distinct = pairs.clone();
                distinct.dedup();
                let sigma: Vec<usize> = {
                    let mut v = Vec::with_capacity(pairs.len());
                    let mut k = 0;
                    for (t, p) in pairs.iter().enumerate() {
                        if t > 0 && pairs[t - 1] != *p {
                            k += 1;
                        }
                        v.push(k);
                    }
                    v
                };
                let base = (
                    Simplex {
                        base: fa.base,
                        eta: distinct.iter().map(|p| p.0).collect(),
                    },
                    Simplex {
                        base: fb.base,
                        eta: distinct.iter().map(|p| p.1).collect(),
                    },
                );
                let degs: Vec<usize> = {
                    let mut js: Vec<usize> = (0..sigma.len() - 1).filter(|&k| sigma[k] == sigma[k + 1]).collect();
                    js.reverse();
                    js
                };
                let target = &cells[key[&base]];
                faces.push(FaceSpec {
                    id: label(target),
                    degeneracies: degs,
                });
            }
        }
        builder.push(label(c), m, faces);
    }
    let bp = match (&x.basepoint, &y.basepoint) {
        (Some(p), Some(q)) => Some(format!("({p},{q})")),
        _ => None,
    };
    let mut b = builder.simply_connected(x.simply_connected && y.simply_connected);
    if let Some(bp) = bp {
        b = b.basepoint(bp);
    }
    b.build().expect("product of simplicial sets")
}

/// Lattice paths from `(0,0)` to `(p,q)` with unit steps in either coordinate
/// or both; these are the jointly injective monotone pairs `[m] → [p]×[q]`.
fn shuffle_paths(p: usize, q: usize) -> Vec<Vec<(u8, u8)>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![(0u8, 0u8)]];
    while let Some(path) = stack.pop() {
        let &(a, b) = path.last().unwrap();
        if a as usize == p && b as usize == q {
            out.push(path);
            continue;
        }
        if (a as usize) < p {
            let mut v = path.clone();
            v.push((a + 1, b));
            stack.push(v);
        }
        if (b as usize) < q {
            let mut v = path.clone();
            v.push((a, b + 1));
            stack.push(v);
        }
        if (a as usize) < p && (b as usize) < q {
            let mut v = path;
            v.push((a + 1, b + 1));
            stack.push(v);
        }
    }
    out.sort();
    out
}

/// Simplicial map given on nondegenerate simplices; values may be degenerate.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub source: Arc<SimplicialSet>,
    pub target: Arc<SimplicialSet>,
    pub images: Vec<Simplex>,
}

impl SimplicialMap {
    pub fn new(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, images: BTreeMap<String, FaceSpec>) -> Result<Self> {
        let mut out = Vec::with_capacity(source.len());
        for s in source.simplices() {
            let spec = images.get(&s.id).ok_or_else(|| Error::UnknownLabel(s.id.clone()))?;
            let b = target.index_of(&spec.id)?;
            let mut x = Simplex::nondegenerate(b, target.simplex(b).dim);
            for &j in spec.degeneracies.iter().rev() {
                x = x.degeneracy(j);
            }
            if x.dim() != s.dim {
                return Err(Error::DegreeMismatch(format!("image of `{}`", s.id)));
            }
            out.push(x);
        }
        let m = SimplicialMap {
            source,
            target,
            images: out,
        };
        for (i, s) in m.source.simplices().iter().enumerate() {
            for (k, f) in s.faces.iter().enumerate() {
                if m.target.face(&m.images[i], k) != m.apply(f) {
                    return Err(Error::NotChainMap(format!("map does not commute with d{k} on `{}`", s.id)));
                }
            }
        }
        Ok(m)
    }

    pub fn apply(&self, x: &Simplex) -> Simplex {
        let y = &self.images[x.base];
        Simplex {
            base: y.base,
            eta: x.eta.iter().map(|&k| y.eta[k as usize]).collect(),
        }
    }

    /// Induced map on normalized chains.
    pub fn chain_map(&self) -> GradedMap {
        let (cs, ct) = (self.source.chains(), self.target.chains());
        GradedMap::from_fn(cs, ct, 0, |l| {
            let i = self.source.index_of(l)?;
            let y = &self.images[i];
            Ok(if y.is_degenerate() {
                crate::zmod::Chain::zero()
            } else {
                crate::zmod::Chain::basis(self.target.simplex(y.base).id.clone())
            })
        })
        .expect("labels exist")
    }
}
