use super::endo::{endomorphism_operad, EndoBasis, EndomorphismOperad};
use super::trivial::trivial_operad;
use super::Operad;
use crate::error::{Error, Result};
use crate::symbar::BarWord;
use crate::zmod::{Chain, GradedMap, TensorComplex};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

impl MorphismReport {
    pub fn to_json(&self) -> Value {
        json!({"passed": self.passed, "checked": self.checked, "witness": self.witness})
    }
}

/// Check that `f` preserves rank, degree, `∂`, every `∘ᵢ` and the unit.
pub fn check_morphism<A: Operad, B: Operad>(
    source: &A,
    target: &B,
    f: impl Fn(&A::Basis) -> Chain<B::Basis> + Sync,
    rank_bound: usize,
    degree_bound: i64,
) -> MorphismReport {
    let map = |c: &Chain<A::Basis>| c.flat_map(|x| f(x));
    let mut elems = Vec::new();
    for r in 0..=rank_bound.min(source.max_rank()) {
        for d in source.degrees(r) {
            if d.abs() <= degree_bound {
                elems.extend(source.basis(r, d));
            }
        }
    }
    let mut checked = 0;
    let mut witness = None;
    let fail = |w: String, witness: &mut Option<String>| {
        if witness.is_none() {
            *witness = Some(w);
        }
    };
    if let (Some(u), Some(v)) = (source.unit(), target.unit()) {
        checked += 1;
        if map(&u) != v {
            fail("unit".into(), &mut witness);
        }
    }
    for a in &elems {
        let fa = f(a);
        checked += 1;
        if fa.keys().any(|y| target.rank(y) != source.rank(a) || target.degree(y) != source.degree(a)) {
            fail(format!("{a} changes rank or degree"), &mut witness);
        }
        if map(&source.differential(a)) != target.differential_chain(&fa) {
            fail(format!("∂ at {a}"), &mut witness);
        }
        for b in &elems {
            if source.rank(a) + source.rank(b) > rank_bound + 1 {
                continue;
            }
            let fb = f(b);
            for i in 1..=source.rank(b) {
                checked += 1;
                if map(&source.compose(a, i, b)) != target.compose_chains(&fa, i, &fb) {
                    fail(format!("{a} ∘{i} {b}"), &mut witness);
                }
            }
        }
    }
    MorphismReport {
        passed: witness.is_none(),
        checked,
        witness,
    }
}

/// `𝔖 → I`: degree-0 words of rank `n` go to `b_n`, everything else to 0.
pub fn augmentation_morphism(w: &BarWord) -> Chain<usize> {
    if w.degree() == 0 {
        Chain::basis(w.rank())
    } else {
        Chain::zero()
    }
}

/// Morphism `I → P(C)` attached to a coassociative counital coproduct.
#[derive(Clone, Debug)]
pub struct CoalgebraMorphism {
    pub operad: EndomorphismOperad,
    /// Image of `b_n` at index `n`.
    pub images: Vec<Chain<EndoBasis>>,
}

impl CoalgebraMorphism {
    pub fn image(&self, n: usize) -> Chain<EndoBasis> {
        self.images.get(n).cloned().unwrap_or_else(Chain::zero)
    }

    pub fn check(&self) -> MorphismReport {
        let r = self.images.len() - 1;
        check_morphism(&trivial_operad(r), &self.operad, |b| self.image(*b), r, 0)
    }
}

/// Build `bₙ ↦ Δ^{(n)}` from `Δ: C → C⊗C`, rejecting non-coassociative or
/// non-counital input.
pub fn coalgebra_as_morphism(delta: &GradedMap, cc: &TensorComplex, rank_bound: usize) -> Result<CoalgebraMorphism> {
    let c = cc.left.clone();
    if delta.degree() != 0 || delta.source() != &c || delta.target() != &cc.complex {
        return Err(Error::Precondition("coproduct must be a degree-0 map C → C⊗C".into()));
    }
    if let Some(w) = delta.chain_map_witness() {
        return Err(Error::NotChainMap(w));
    }
    if !c.has_augmentation() {
        return Err(Error::Precondition("complex has no augmentation".into()));
    }
    let window = c.degree_range().map(|(lo, hi)| (lo - hi, (hi - lo) * rank_bound.max(1) as i64)).unwrap_or((0, 0));
    let operad = endomorphism_operad(c.clone(), rank_bound.max(2), window);
    let d = operad.from_map(|x| {
        let mut out = Chain::zero();
        for (l, k) in delta.on_label(x).iter() {
            let (a, b) = cc.split(l).expect("tensor label");
            out.add_term(vec![a.to_string(), b.to_string()], k.clone());
        }
        out
    });
    let left = operad.compose_chains(&d, 1, &d);
    let right = operad.compose_chains(&d, 2, &d);
    if left != right {
        let bad = c
            .cells()
            .iter()
            .find(|x| EndomorphismOperad::evaluate(&left, &x.label) != EndomorphismOperad::evaluate(&right, &x.label))
            .map(|x| x.label.clone())
            .unwrap_or_default();
        return Err(Error::NotCoassociative(bad));
    }
    let eps = operad.augmentation();
    let id = operad.unit().expect("unit");
    for i in 1..=2 {
        if operad.compose_chains(&eps, i, &d) != id {
            return Err(Error::Precondition(format!("coproduct is not counital in factor {i}")));
        }
    }
    let mut images = vec![eps, id];
    for n in 2..=rank_bound {
        let next = operad.compose_chains(&d, 1, &images[n - 1]);
        images.push(next);
    }
    Ok(CoalgebraMorphism { operad, images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::{tensor, FreeComplex};
    use std::sync::Arc;

    fn coproduct(c: &Arc<FreeComplex>, rules: &[(&str, &[(&str, &str)])]) -> (GradedMap, TensorComplex) {
        let cc = tensor(c.clone(), c.clone());
        let d = GradedMap::from_fn(c.clone(), cc.complex.clone(), 0, |x| {
            let (_, terms) = rules.iter().find(|r| r.0 == x).expect("rule");
            Ok(terms.iter().map(|(a, b)| (cc.join(a, b).unwrap().to_string(), 1.into())).collect())
        })
        .unwrap();
        (d, cc)
    }

    #[test]
    fn primitive_coproduct_is_a_morphism() {
        let c = Arc::new(FreeComplex::builder().cell("1", 0).cell("x", 3).default_augmentation().build().unwrap());
        let (d, cc) = coproduct(&c, &[("1", &[("1", "1")]), ("x", &[("1", "x"), ("x", "1")])]);
        let m = coalgebra_as_morphism(&d, &cc, 4).unwrap();
        let r = m.check();
        assert!(r.passed, "{:?}", r.witness);
        assert_eq!(m.image(3).len(), 1 + 3);
    }

    #[test]
    fn non_coassociative_is_rejected() {
        let mut aug = std::collections::BTreeMap::new();
        aug.insert("1".to_string(), 1.into());
        aug.insert("a".to_string(), 0.into());
        aug.insert("b".to_string(), 0.into());
        let c = Arc::new(FreeComplex::builder().cell("1", 0).cell("a", 0).cell("b", 0).augmentation(aug).build().unwrap());
        let (d, cc) = coproduct(
            &c,
            &[
                ("1", &[("1", "1")]),
                ("a", &[("1", "a"), ("a", "1"), ("b", "b")]),
                ("b", &[("1", "b"), ("b", "1"), ("a", "a")]),
            ],
        );
        match coalgebra_as_morphism(&d, &cc, 3) {
            Err(Error::NotCoassociative(x)) => assert_eq!(x, "a"),
            other => panic!("{other:?}"),
        }
    }
}
