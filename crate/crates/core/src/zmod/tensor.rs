use super::chain::{sign_pow, Chain};
use super::complex::{Element, FreeComplex};
use super::map::GradedMap;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::Arc;

/// Label of `a⊗b`; factors containing `⊗` are parenthesized.
pub fn tensor_label(a: &str, b: &str) -> String {
    let wrap = |s: &str| {
        if s.contains('⊗') {
            format!("({s})")
        } else {
            s.to_string()
        }
    };
    format!("{}⊗{}", wrap(a), wrap(b))
}

/// `C ⊗ D` together with the decomposition of its basis into pairs.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: Arc<FreeComplex>,
    pub left: Arc<FreeComplex>,
    pub right: Arc<FreeComplex>,
    split: HashMap<String, (String, String)>,
    join: HashMap<(String, String), String>,
}

/// Tensor product with `∂(a⊗b) = ∂a⊗b + (−1)^{|a|} a⊗∂b`.
pub fn tensor(c: Arc<FreeComplex>, d: Arc<FreeComplex>) -> TensorComplex {
    let mut b = FreeComplex::builder();
    let mut split = HashMap::new();
    let mut join = HashMap::new();
    for x in c.cells() {
        for y in d.cells() {
            let l = tensor_label(&x.label, &y.label);
            let sk = match (x.skeleton, y.skeleton) {
                (Some(p), Some(q)) => Some(p + q),
                _ => None,
            };
            b.push_cell(l.clone(), x.degree + y.degree, sk);
            split.insert(l.clone(), (x.label.clone(), y.label.clone()));
            join.insert((x.label.clone(), y.label.clone()), l);
        }
    }
    for x in c.cells() {
        let dx = c.boundary_of(&x.label).expect("own label");
        let s = sign_pow(x.degree);
        for y in d.cells() {
            let dy = d.boundary_of(&y.label).expect("own label");
            let mut terms = Vec::new();
            for (u, k) in dx.terms.iter() {
                terms.push((join[&(u.clone(), y.label.clone())].clone(), k.clone()));
            }
            for (v, k) in dy.terms.iter() {
                terms.push((join[&(x.label.clone(), v.clone())].clone(), k * &s));
            }
            b.set_boundary(join[&(x.label.clone(), y.label.clone())].clone(), terms);
        }
    }
    if let (Some(ac), Some(ad)) = (c.augmentation_map(), d.augmentation_map()) {
        let mut aug = std::collections::BTreeMap::new();
        for (x, p) in &ac {
            for (y, q) in &ad {
                aug.insert(join[&(x.clone(), y.clone())].clone(), p * q);
            }
        }
        b.set_augmentation(aug);
    }
    let complex = Arc::new(b.build().expect("tensor of complexes is a complex"));
    TensorComplex {
        complex,
        left: c,
        right: d,
        split,
        join,
    }
}

impl TensorComplex {
    pub fn join(&self, a: &str, b: &str) -> Result<&str> {
        self.join
            .get(&(a.to_string(), b.to_string()))
            .map(|s| s.as_str())
            .ok_or_else(|| Error::UnknownLabel(format!("{a}⊗{b}")))
    }

    pub fn split(&self, l: &str) -> Result<(&str, &str)> {
        self.split
            .get(l)
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .ok_or_else(|| Error::UnknownLabel(l.to_string()))
    }

    /// Bilinear `a ⊗ b` of chains.
    pub fn product(&self, a: &Chain<String>, b: &Chain<String>) -> Result<Chain<String>> {
        let mut out = Chain::zero();
        for (x, p) in a.iter() {
            for (y, q) in b.iter() {
                out.add_term(self.join(x, y)?.to_string(), p * q);
            }
        }
        Ok(out)
    }
}

/// `(f⊗g)(a⊗b) = (−1)^{deg g·|a|} f(a)⊗g(b)`.
pub fn apply_tensor_map(
    f: &GradedMap,
    g: &GradedMap,
    src: &TensorComplex,
    dst: &TensorComplex,
    x: &Element,
) -> Result<Element> {
    if f.source().signature() != src.left.signature() || g.source().signature() != src.right.signature() {
        return Err(Error::ComplexMismatch("source tensor factors differ from map sources".into()));
    }
    if f.target().signature() != dst.left.signature() || g.target().signature() != dst.right.signature() {
        return Err(Error::ComplexMismatch("target tensor factors differ from map targets".into()));
    }
    src.complex.check_element(x)?;
    let mut out = Chain::zero();
    for (l, c) in x.terms.iter() {
        let (a, b) = src.split(l)?;
        let s = sign_pow(g.degree() * src.left.degree_of(a)?);
        let fa = f.on_label(a);
        let gb = g.on_label(b);
        out.add_scaled(&dst.product(&fa, &gb)?, &(c * s));
    }
    Ok(Element {
        degree: x.degree + f.degree() + g.degree(),
        terms: out,
    })
}

/// `f⊗g` as a graded map between tensor complexes.
pub fn tensor_map(f: &GradedMap, g: &GradedMap, src: &TensorComplex, dst: &TensorComplex) -> Result<GradedMap> {
    GradedMap::from_fn(src.complex.clone(), dst.complex.clone(), f.degree() + g.degree(), |l| {
        let d = src.complex.degree_of(l)?;
        Ok(apply_tensor_map(f, g, src, dst, &Element::basis(l, d))?.terms)
    })
}

/// `T(c⊗d) = (−1)^{|c||d|} d⊗c` from `cd` to `dc`.
pub fn transpose(cd: &TensorComplex, dc: &TensorComplex) -> Result<GradedMap> {
    if cd.left.signature() != dc.right.signature() || cd.right.signature() != dc.left.signature() {
        return Err(Error::ComplexMismatch("transpose needs C⊗D and D⊗C".into()));
    }
    GradedMap::from_fn(cd.complex.clone(), dc.complex.clone(), 0, |l| {
        let (a, b) = cd.split(l)?;
        let s = sign_pow(cd.left.degree_of(a)? * cd.right.degree_of(b)?);
        Ok(Chain::term(dc.join(b, a)?.to_string(), s))
    })
}

/// `ΣC` with the suspension map `s: C → ΣC` of degree +1; `∂_Σ = −s∂s⁻¹`.
pub fn suspend(c: &Arc<FreeComplex>) -> (Arc<FreeComplex>, GradedMap) {
    shift_with_map(c, 1)
}

/// `Σ⁻¹C` with the desuspension map of degree −1.
pub fn desuspend(c: &Arc<FreeComplex>) -> (Arc<FreeComplex>, GradedMap) {
    shift_with_map(c, -1)
}

fn shift_with_map(c: &Arc<FreeComplex>, k: i64) -> (Arc<FreeComplex>, GradedMap) {
    let s = Arc::new(c.shifted(k));
    let m = GradedMap::from_fn(c.clone(), s.clone(), k, |l| Ok(Chain::basis(l.to_string())))
        .expect("same labels");
    (s, m)
}
