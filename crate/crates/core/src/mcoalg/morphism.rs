use super::structure::{map_tensors, MCoalgebra};
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::symbar::generators;
use crate::zmod::{Chain, FreeComplex, GradedMap};
use rayon::prelude::*;
use std::sync::Arc;

/// A chain map `g: C₁ → C₂` commuting with all structure maps; the resolution
/// map `h` is the identity of the symmetric construct.
#[derive(Clone, Debug)]
pub struct StrictMorphism {
    pub source: MCoalgebra,
    pub target: MCoalgebra,
    pub map: GradedMap,
}

impl StrictMorphism {
    pub fn new(source: MCoalgebra, target: MCoalgebra, map: GradedMap) -> Result<Self> {
        if map.degree() != 0
            || map.source().signature() != source.complex.signature()
            || map.target().signature() != target.complex.signature()
        {
            return Err(Error::ComplexMismatch("map does not run between the given m-coalgebras".into()));
        }
        Ok(StrictMorphism { source, target, map })
    }

    pub fn identity(m: MCoalgebra) -> Self {
        let map = GradedMap::identity(m.complex.clone());
        StrictMorphism {
            source: m.clone(),
            target: m,
            map,
        }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &StrictMorphism) -> Result<StrictMorphism> {
        StrictMorphism::new(first.source.clone(), self.target.clone(), self.map.compose(&first.map)?)
    }

    /// Chain map, augmentation, and `f̃₂(w ⊗ g c) = gⁿ f̃₁(w ⊗ c)` on generators in range.
    pub fn check(&self, rank_bound: usize, degree_bound: usize) -> Result<Check> {
        let mut ch = Check::new(format!("strict {} → {}", self.source.name, self.target.name));
        ch.record(self.map.is_chain_map(), || {
            format!("not a chain map at {}", self.map.chain_map_witness().unwrap_or_default())
        });
        for c in self.source.complex.cells() {
            let img = self.map.on_label(&c.label);
            ch.record(self.target.complex.augment(&img) == self.source.complex.augmentation_of(&c.label), || {
                format!("augmentation differs on {}", c.label)
            });
        }
        let mut jobs = Vec::new();
        for n in 2..=rank_bound {
            for k in 0..=degree_bound {
                for w in generators(n, k) {
                    for c in self.source.complex.cells() {
                        jobs.push((w.clone(), c.label.clone()));
                    }
                }
            }
        }
        let results: Vec<Result<Option<String>>> = jobs
            .par_iter()
            .map(|(w, c)| {
                let lhs = self.target.adjoint_chain(&Chain::basis(w.clone()), &self.map.on_label(c))?;
                let rhs = map_tensors(&self.source.adjoint(w, c)?, |l| self.map.on_label(l));
                Ok((lhs != rhs).then(|| format!("{w} on {c}")))
            })
            .collect();
        for r in results {
            match r? {
                None => ch.tick(),
                Some(w) => ch.fail(w),
            }
        }
        Ok(ch)
    }
}

/// `(f′, f, φ)`: projection `big → small`, injection `small → big`, homotopy on `big`.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub projection: GradedMap,
    pub injection: GradedMap,
    pub homotopy: GradedMap,
}

impl Contraction {
    pub fn new(projection: GradedMap, injection: GradedMap, homotopy: GradedMap) -> Result<Self> {
        let big = projection.source().signature();
        let small = projection.target().signature();
        if injection.source().signature() != small
            || injection.target().signature() != big
            || homotopy.source().signature() != big
            || homotopy.target().signature() != big
            || projection.degree() != 0
            || injection.degree() != 0
            || homotopy.degree() != 1
        {
            return Err(Error::ComplexMismatch("contraction maps do not fit together".into()));
        }
        Ok(Contraction {
            projection,
            injection,
            homotopy,
        })
    }

    pub fn identity(c: Arc<FreeComplex>) -> Self {
        Contraction {
            projection: GradedMap::identity(c.clone()),
            injection: GradedMap::identity(c.clone()),
            homotopy: GradedMap::zero(c.clone(), c, 1),
        }
    }

    pub fn big(&self) -> &Arc<FreeComplex> {
        self.projection.source()
    }

    pub fn small(&self) -> &Arc<FreeComplex> {
        self.projection.target()
    }

    /// The five conditions, plus that `f` and `f′` are chain maps.
    pub fn check(&self) -> Result<Report> {
        let mut r = Report::new("contraction");
        let f = &self.injection;
        let fp = &self.projection;
        let phi = &self.homotopy;
        let mut chain = Check::new("f and f′ are chain maps");
        chain.record(f.is_chain_map(), || "injection".into());
        chain.record(fp.is_chain_map(), || "projection".into());
        r.checks.push(chain);
        let equal = |name: &str, a: GradedMap, b: GradedMap| {
            let mut ch = Check::new(name);
            ch.record(a == b, || a.difference_witness(&b).unwrap_or_default());
            ch
        };
        let id_small = GradedMap::identity(self.small().clone());
        let id_big = GradedMap::identity(self.big().clone());
        r.checks.push(equal("f′∘f = 1", fp.compose(f)?, id_small));
        r.checks.push(equal("f∘f′ − 1 = ∂φ", f.compose(fp)?.sub(&id_big)?, phi.boundary()));
        let zero_big = GradedMap::zero(self.big().clone(), self.big().clone(), 2);
        r.checks.push(equal("φ² = 0", phi.compose(phi)?, zero_big));
        r.checks.push(equal(
            "φ∘f = 0",
            phi.compose(f)?,
            GradedMap::zero(self.small().clone(), self.big().clone(), 1),
        ));
        r.checks.push(equal(
            "f′∘φ = 0",
            fp.compose(phi)?,
            GradedMap::zero(self.big().clone(), self.small().clone(), 1),
        ));
        Ok(r)
    }
}

/// A contraction `big → small` whose injection is a strict morphism.
#[derive(Clone, Debug)]
pub struct ElementaryEquivalence {
    pub big: MCoalgebra,
    pub small: MCoalgebra,
    pub contraction: Contraction,
}

impl ElementaryEquivalence {
    pub fn new(big: MCoalgebra, small: MCoalgebra, contraction: Contraction) -> Result<Self> {
        if contraction.big().signature() != big.complex.signature()
            || contraction.small().signature() != small.complex.signature()
        {
            return Err(Error::ComplexMismatch("contraction does not run between the given m-coalgebras".into()));
        }
        Ok(ElementaryEquivalence { big, small, contraction })
    }

    pub fn identity(m: MCoalgebra) -> Self {
        let contraction = Contraction::identity(m.complex.clone());
        ElementaryEquivalence {
            big: m.clone(),
            small: m,
            contraction,
        }
    }

    pub fn injection(&self) -> StrictMorphism {
        StrictMorphism {
            source: self.small.clone(),
            target: self.big.clone(),
            map: self.contraction.injection.clone(),
        }
    }

    pub fn check(&self, rank_bound: usize, degree_bound: usize) -> Result<Report> {
        let mut r = self.contraction.check()?;
        r.subject = format!("elementary equivalence {} → {}", self.big.name, self.small.name);
        let mut s = self.injection().check(rank_bound, degree_bound)?;
        s.name = "injection is strict".into();
        r.checks.push(s);
        Ok(r)
    }
}
