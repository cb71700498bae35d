use super::canonical::canonical_mstructure;
use super::fixtures::{minimal_sphere, standard_simplex};
use super::sset::{FaceSpec, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};
use crate::mcoalg::{Contraction, ElementaryEquivalence, MCoalgebra, Step, StrictMorphism, ZigZag};
use crate::zmod::{Chain, GradedMap};
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// Ordered simplicial complex stored as its set of simplices (sorted vertex lists).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Vec<usize>>,
}

pub fn simplex_label(verts: &[usize]) -> String {
    if verts.iter().all(|&v| v < 10) {
        verts.iter().map(|v| v.to_string()).collect()
    } else {
        verts.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
    }
}

fn faces_of(s: &[usize]) -> Vec<Vec<usize>> {
    (0..s.len())
        .map(|i| s.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &v)| v).collect())
        .collect()
}

impl SimplicialComplex {
    pub fn from_facets(facets: &[Vec<usize>]) -> Self {
        let mut simplices = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            for mask in 1u32..(1 << f.len()) {
                simplices.insert(f.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect());
            }
        }
        SimplicialComplex { simplices }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplices.contains(s)
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect()
    }

    fn cofaces(&self, t: &[usize]) -> Vec<&Vec<usize>> {
        self.simplices
            .iter()
            .filter(|s| s.len() == t.len() + 1 && t.iter().all(|v| s.contains(v)))
            .collect()
    }

    /// Pairs `(τ, σ)` with `σ` maximal and `τ` a face of `σ` with no other coface.
    pub fn free_pairs(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::new();
        for s in &self.simplices {
            if s.len() < 2 || !self.cofaces(s).is_empty() {
                continue;
            }
            for t in faces_of(s) {
                if self.cofaces(&t).len() == 1 {
                    out.push((t, s.clone()));
                }
            }
        }
        out
    }

    /// Pairs `(τ, σ)` not in the complex whose addition is an elementary expansion;
    /// `fresh` is a vertex not yet used.
    pub fn expansions(&self, fresh: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::new();
        for v in self.vertices() {
            let mut e = vec![v, fresh];
            e.sort_unstable();
            out.push((vec![fresh], e));
        }
        let verts = self.vertices();
        for k in 2..=4usize.min(verts.len()) {
            for s in subsets(&verts, k) {
                if self.contains(&s) {
                    continue;
                }
                let missing: Vec<Vec<usize>> = faces_of(&s).into_iter().filter(|f| !self.contains(f)).collect();
                if let [t] = missing.as_slice() {
                    if faces_of(t).iter().all(|f| f.is_empty() || self.contains(f)) {
                        out.push((t.clone(), s.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn check_expansion(&self, tau: &[usize], sigma: &[usize]) -> Result<()> {
        let ok = !self.contains(sigma)
            && !self.contains(tau)
            && tau.len() + 1 == sigma.len()
            && tau.iter().all(|v| sigma.contains(v))
            && faces_of(sigma).iter().all(|f| f.as_slice() == tau || f.is_empty() || self.contains(f))
            && faces_of(tau).iter().all(|f| f.is_empty() || self.contains(f));
        if ok {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "adding {} with free face {} is not an elementary expansion",
                simplex_label(sigma),
                simplex_label(tau)
            )))
        }
    }

    pub fn check_collapse(&self, tau: &[usize], sigma: &[usize]) -> Result<()> {
        if self.free_pairs().iter().any(|(t, s)| t == tau && s == sigma) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{} is not a free face of a maximal {}",
                simplex_label(tau),
                simplex_label(sigma)
            )))
        }
    }

    pub fn with(&self, tau: &[usize], sigma: &[usize]) -> Self {
        let mut s = self.clone();
        s.simplices.insert(tau.to_vec());
        s.simplices.insert(sigma.to_vec());
        s
    }

    pub fn without(&self, tau: &[usize], sigma: &[usize]) -> Self {
        let mut s = self.clone();
        s.simplices.remove(tau);
        s.simplices.remove(sigma);
        s
    }

    pub fn to_sset(&self, name: impl Into<String>) -> Result<SimplicialSet> {
        let mut b = SimplicialSet::builder(name);
        for s in &self.simplices {
            let faces = if s.len() == 1 {
                Vec::new()
            } else {
                faces_of(s).iter().map(|f| FaceSpec::from(simplex_label(f).as_str())).collect()
            };
            b.push(simplex_label(s), s.len() - 1, faces);
        }
        if let Some(v) = self.vertices().first() {
            b = b.basepoint(simplex_label(&[*v]));
        }
        b.build()
    }
}

fn subsets(v: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if v.len() < k {
        return Vec::new();
    }
    let mut out = subsets(&v[1..], k);
    for mut s in subsets(&v[1..], k - 1) {
        s.insert(0, v[0]);
        out.push(s);
    }
    out
}

/// Elementary equivalence `big → small` of canonical structures for the collapse of
/// the free pair `(τ, σ)`: `f′(τ) = τ − c∂σ`, `f′(σ) = 0`, `φ(τ) = −cσ`, with `c = ±1`
/// the coefficient of `τ` in `∂σ`.
pub fn collapse_equivalence(big: &MCoalgebra, small: &MCoalgebra, tau: &[usize], sigma: &[usize]) -> Result<ElementaryEquivalence> {
    let (tl, sl) = (simplex_label(tau), simplex_label(sigma));
    let bcx = big.complex.clone();
    let scx = small.complex.clone();
    let dsigma = bcx.boundary_of(&sl)?.terms;
    let c = dsigma.coeff(&tl);
    let inj = GradedMap::from_fn(scx.clone(), bcx.clone(), 0, |l| Ok(Chain::basis(l.to_string())))?;
    let proj = GradedMap::from_fn(bcx.clone(), scx.clone(), 0, |l| {
        Ok(if l == sl {
            Chain::zero()
        } else if l == tl {
            let mut v = Chain::basis(tl.clone());
            v.add_scaled(&dsigma, &-&c);
            v
        } else {
            Chain::basis(l.to_string())
        })
    })?;
    let phi = GradedMap::from_fn(bcx.clone(), bcx, 1, |l| {
        Ok(if l == tl { Chain::term(sl.clone(), -&c) } else { Chain::zero() })
    })?;
    ElementaryEquivalence::new(big.clone(), small.clone(), Contraction::new(proj, inj, phi)?)
}

/// Simplicial map to `Δ^m` from a vertex colouring that is monotone on every simplex.
pub fn colouring_map(x: Arc<SimplicialSet>, complex: &SimplicialComplex, m: usize, colour: &BTreeMap<usize, usize>) -> Result<SimplicialMap> {
    let target = Arc::new(standard_simplex(m));
    let mut images = BTreeMap::new();
    for s in complex.simplices() {
        let cs: Vec<usize> = s
            .iter()
            .map(|v| colour.get(v).copied().ok_or_else(|| Error::Precondition(format!("vertex {v} has no colour"))))
            .collect::<Result<_>>()?;
        if cs.windows(2).any(|w| w[0] > w[1]) || cs.iter().any(|&c| c > m) {
            return Err(Error::Precondition(format!("colouring is not monotone on {}", simplex_label(s))));
        }
        let mut distinct = cs.clone();
        distinct.dedup();
        let degeneracies: Vec<usize> = (0..cs.len().saturating_sub(1)).rev().filter(|&k| cs[k] == cs[k + 1]).collect();
        images.insert(
            simplex_label(s),
            FaceSpec {
                id: simplex_label(&distinct),
                degeneracies,
            },
        );
    }
    SimplicialMap::new(x, target, images)
}

/// Map from every complex of a zig-zag to the base.
#[derive(Clone, Debug)]
pub enum BaseMap {
    /// Vertex colouring onto `Δ^dim`.
    Simplex { dim: usize, colour: BTreeMap<usize, usize> },
    /// The listed `dim`-simplices go to `x` in the minimal sphere, everything else to the base point.
    Sphere { dim: usize, wrap: BTreeSet<Vec<usize>> },
}

impl BaseMap {
    pub fn space(&self) -> SimplicialSet {
        match self {
            BaseMap::Simplex { dim, .. } => standard_simplex(*dim),
            BaseMap::Sphere { dim, .. } => minimal_sphere(*dim),
        }
    }

    pub fn map(&self, x: Arc<SimplicialSet>, complex: &SimplicialComplex) -> Result<SimplicialMap> {
        match self {
            BaseMap::Simplex { dim, colour } => colouring_map(x, complex, *dim, colour),
            BaseMap::Sphere { dim, wrap } => wrapping_map(x, complex, *dim, wrap),
        }
    }
}

/// Simplicial map onto the minimal `n`-sphere collapsing all but the wrapped `n`-simplices.
pub fn wrapping_map(x: Arc<SimplicialSet>, complex: &SimplicialComplex, n: usize, wrap: &BTreeSet<Vec<usize>>) -> Result<SimplicialMap> {
    let target = Arc::new(minimal_sphere(n));
    let point = |d: usize| FaceSpec {
        id: "pt".into(),
        degeneracies: (0..d).rev().collect(),
    };
    let mut images = BTreeMap::new();
    for s in complex.simplices() {
        let d = s.len() - 1;
        let spec = if d < n {
            point(d)
        } else if d == n {
            if wrap.contains(s) {
                FaceSpec::from("x")
            } else {
                point(d)
            }
        } else {
            let hit: Vec<usize> = faces_of(s)
                .iter()
                .enumerate()
                .filter(|(_, f)| wrap.contains(*f))
                .map(|(i, _)| i)
                .collect();
            match hit.as_slice() {
                [] => point(d),
                [j, k] if d == n + 1 && *k == j + 1 => FaceSpec {
                    id: "x".into(),
                    degeneracies: vec![*j],
                },
                _ => {
                    return Err(Error::Precondition(format!(
                        "no simplicial image for {} over the wrapped simplices",
                        simplex_label(s)
                    )))
                }
            }
        };
        images.insert(simplex_label(s), spec);
    }
    SimplicialMap::new(x, target, images)
}

/// A zig-zag of elementary expansions and collapses over a base.
#[derive(Clone, Debug)]
pub struct SimplicialZigZag {
    pub complexes: Vec<SimplicialComplex>,
    pub zigzag: ZigZag,
    pub a: StrictMorphism,
    pub b: StrictMorphism,
    /// Base maps of every object, `maps[0] = a` and the last is `b`.
    pub maps: Vec<StrictMorphism>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Expand { tau: Vec<usize>, sigma: Vec<usize> },
    Collapse { tau: Vec<usize>, sigma: Vec<usize> },
}

pub fn build_simplicial_zigzag(
    start: &SimplicialComplex,
    moves: &[Move],
    base: &BaseMap,
    rank_bound: usize,
    degree_bound: usize,
) -> Result<SimplicialZigZag> {
    let structure = |k: &SimplicialComplex, i: usize| -> Result<(Arc<SimplicialSet>, MCoalgebra)> {
        let x = Arc::new(k.to_sset(format!("U{i}"))?);
        let mut m = canonical_mstructure(x.clone(), rank_bound, degree_bound);
        m.name = format!("U{i}");
        Ok((x, m))
    };
    let mut complexes = vec![start.clone()];
    let (x0, m0) = structure(start, 0)?;
    let mut objects = vec![(x0, m0)];
    let mut steps = Vec::new();
    for (i, mv) in moves.iter().enumerate() {
        let cur = complexes.last().expect("nonempty").clone();
        let (next, step) = match mv {
            Move::Expand { tau, sigma } => {
                cur.check_expansion(tau, sigma)?;
                let next = cur.with(tau, sigma);
                let (x, m) = structure(&next, i + 1)?;
                let e = collapse_equivalence(&m, &objects[i].1, tau, sigma)?;
                objects.push((x, m));
                (next, Step::Right(e))
            }
            Move::Collapse { tau, sigma } => {
                cur.check_collapse(tau, sigma)?;
                let next = cur.without(tau, sigma);
                let (x, m) = structure(&next, i + 1)?;
                let e = collapse_equivalence(&objects[i].1, &m, tau, sigma)?;
                objects.push((x, m));
                (next, Step::Left(e))
            }
        };
        complexes.push(next);
        steps.push(step);
    }
    let zigzag = ZigZag::new(objects[0].1.clone(), steps)?;
    let mut cm = canonical_mstructure(Arc::new(base.space()), rank_bound, degree_bound);
    cm.name = "C".into();
    let strict = |k: usize| -> Result<StrictMorphism> {
        let (x, m) = &objects[k];
        let g = base.map(x.clone(), &complexes[k])?.chain_map();
        let g = GradedMap::from_fn(m.complex.clone(), cm.complex.clone(), 0, |l| Ok(g.on_label(l)))?;
        StrictMorphism::new(m.clone(), cm.clone(), g)
    };
    let maps = (0..objects.len()).map(strict).collect::<Result<Vec<_>>>()?;
    let a = maps[0].clone();
    let b = maps[maps.len() - 1].clone();
    Ok(SimplicialZigZag {
        complexes,
        zigzag,
        a,
        b,
        maps,
    })
}

fn verts(v: &Value) -> Result<Vec<usize>> {
    let mut out: Vec<usize> = v
        .as_array()
        .ok_or_else(|| Error::Parse("simplex must be a list of vertices".into()))?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse("vertex must be a natural number".into())))
        .collect::<Result<_>>()?;
    out.sort_unstable();
    Ok(out)
}

/// `{"start": [[facet]], "base": {"simplex": m, "colouring": {"v": c}} | {"sphere": n, "wrap": [[σ]]},
///   "steps": [{"expand"|"collapse": σ, "face": τ}]}`. The base defaults to a point.
pub fn simplicial_zigzag_from_json(v: &Value, rank_bound: usize, degree_bound: usize) -> Result<SimplicialZigZag> {
    let facets = v
        .get("start")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::Parse("missing `start` facets".into()))?
        .iter()
        .map(verts)
        .collect::<Result<Vec<_>>>()?;
    let start = SimplicialComplex::from_facets(&facets);
    let mut moves = Vec::new();
    let steps = v.get("steps").and_then(|x| x.as_array()).cloned().unwrap_or_default();
    let mut used: BTreeSet<usize> = start.vertices().into_iter().collect();
    for s in &steps {
        let tau = verts(s.get("face").ok_or_else(|| Error::Parse("step needs `face`".into()))?)?;
        let mv = if let Some(sigma) = s.get("expand") {
            Move::Expand { tau, sigma: verts(sigma)? }
        } else if let Some(sigma) = s.get("collapse") {
            Move::Collapse { tau, sigma: verts(sigma)? }
        } else {
            return Err(Error::Parse("step must be `expand` or `collapse`".into()));
        };
        if let Move::Expand { sigma, .. } = &mv {
            used.extend(sigma.iter().copied());
        }
        moves.push(mv);
    }
    let base = base_from_json(v.get("base"), &used)?;
    build_simplicial_zigzag(&start, &moves, &base, rank_bound, degree_bound)
}

fn base_from_json(v: Option<&Value>, used: &BTreeSet<usize>) -> Result<BaseMap> {
    let Some(v) = v else {
        return Ok(BaseMap::Simplex {
            dim: 0,
            colour: used.iter().map(|&u| (u, 0)).collect(),
        });
    };
    if let Some(n) = v.get("sphere").and_then(|x| x.as_u64()) {
        let wrap = v
            .get("wrap")
            .and_then(|x| x.as_array())
            .map(|a| a.iter().map(verts).collect::<Result<BTreeSet<_>>>())
            .transpose()?
            .unwrap_or_default();
        return Ok(BaseMap::Sphere { dim: n as usize, wrap });
    }
    let dim = v.get("simplex").and_then(|x| x.as_u64()).unwrap_or(0) as usize;
    let mut colour: BTreeMap<usize, usize> = used.iter().map(|&u| (u, 0)).collect();
    if let Some(obj) = v.get("colouring").and_then(|x| x.as_object()) {
        for (k, c) in obj {
            let k: usize = k.parse().map_err(|_| Error::Parse(format!("bad vertex `{k}`")))?;
            let c = c.as_u64().ok_or_else(|| Error::Parse("colour must be a natural number".into()))? as usize;
            colour.insert(k, c);
        }
    }
    Ok(BaseMap::Simplex { dim, colour })
}

