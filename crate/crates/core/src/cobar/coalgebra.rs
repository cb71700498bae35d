use crate::error::{Error, Result};
use crate::mcoalg::{MCoalgebra, Tensor};
use crate::report::Check;
use crate::symbar::BarWord;
use crate::zmod::{Chain, FreeComplex, GradedMap};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A chain complex with a coproduct `Δ: C → C ⊗ C`.
#[derive(Clone, Debug)]
pub struct Coalgebra {
    pub complex: Arc<FreeComplex>,
    pub coproduct: BTreeMap<String, Chain<Tensor>>,
}

impl Coalgebra {
    pub fn new(complex: Arc<FreeComplex>, coproduct: BTreeMap<String, Chain<Tensor>>) -> Result<Self> {
        for (l, v) in &coproduct {
            let d = complex.degree_of(l)?;
            for (t, _) in v.iter() {
                if t.len() != 2 {
                    return Err(Error::RankMismatch(format!("coproduct of `{l}` has a term with {} factors", t.len())));
                }
                if complex.degree_of(&t[0])? + complex.degree_of(&t[1])? != d {
                    return Err(Error::DegreeMismatch(format!("coproduct of `{l}` is not homogeneous")));
                }
            }
        }
        Ok(Coalgebra { complex, coproduct })
    }

    /// The diagonal `Δ_{[ ]₂}` of an m-structure.
    pub fn from_mcoalgebra(m: &MCoalgebra) -> Result<Self> {
        let unit = BarWord::unit(2);
        let mut coproduct = BTreeMap::new();
        for c in m.complex.cells() {
            coproduct.insert(c.label.clone(), m.adjoint(&unit, &c.label)?);
        }
        Coalgebra::new(m.complex.clone(), coproduct)
    }

    pub fn coproduct_of(&self, label: &str) -> Chain<Tensor> {
        self.coproduct.get(label).cloned().unwrap_or_default()
    }

    fn apply_left(&self, x: &Chain<Tensor>) -> Chain<Tensor> {
        let mut out = Chain::zero();
        for (t, c) in x.iter() {
            for (s, d) in self.coproduct_of(&t[0]).iter() {
                out.add_term(vec![s[0].clone(), s[1].clone(), t[1].clone()], c * d);
            }
        }
        out
    }

    fn apply_right(&self, x: &Chain<Tensor>) -> Chain<Tensor> {
        let mut out = Chain::zero();
        for (t, c) in x.iter() {
            for (s, d) in self.coproduct_of(&t[1]).iter() {
                out.add_term(vec![t[0].clone(), s[0].clone(), s[1].clone()], c * d);
            }
        }
        out
    }

    /// `(Δ⊗1)Δ = (1⊗Δ)Δ` on every cell of degree at most `degree_bound`.
    pub fn check_coassociative(&self, degree_bound: i64) -> Result<()> {
        for c in self.complex.cells().iter().filter(|c| c.degree <= degree_bound) {
            let d = self.coproduct_of(&c.label);
            if self.apply_left(&d) != self.apply_right(&d) {
                return Err(Error::NotCoassociative(format!("(Δ⊗1)Δ ≠ (1⊗Δ)Δ on `{}`", c.label)));
            }
        }
        Ok(())
    }

    /// `g` is a chain map and `(g⊗g)∘Δ = Δ∘g` on generators.
    pub fn check_map(&self, g: &GradedMap, target: &Coalgebra) -> Check {
        let mut ch = Check::new("coalgebra map");
        if let Some(w) = g.chain_map_witness() {
            ch.fail(format!("∂g ≠ g∂ on `{w}`"));
            return ch;
        }
        for c in self.complex.cells() {
            let mut lhs = Chain::zero();
            for (t, k) in self.coproduct_of(&c.label).iter() {
                for (x, a) in g.on_label(&t[0]).iter() {
                    for (y, b) in g.on_label(&t[1]).iter() {
                        lhs.add_term(vec![x.clone(), y.clone()], k * a * b);
                    }
                }
            }
            let mut rhs: Chain<Tensor> = Chain::zero();
            for (x, a) in g.on_label(&c.label).iter() {
                rhs.add_scaled(&target.coproduct_of(x), a);
            }
            ch.record(lhs == rhs, || format!("on `{}`", c.label));
        }
        ch
    }
}
