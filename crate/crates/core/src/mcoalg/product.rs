use super::structure::{MCoalgebra, StructureMaps, Tensor};
use crate::error::{Error, Result};
use crate::symbar::BarWord;
use crate::zmod::{sign, tensor, Chain, TensorComplex};
use std::sync::Arc;

/// Alexander–Whitney diagonal of the symmetric construct for `∂′`:
/// `w ↦ Σ_p (−1)^{p(k−p)} (h_0…h_p) ⊗ (h_p…h_k)`.
pub fn bar_diagonal(w: &BarWord) -> Chain<(BarWord, BarWord)> {
    let v = w.vertices();
    let k = v.len() - 1;
    let mut out = Chain::zero();
    for p in 0..=k {
        let front = BarWord::from_vertices(v[..=p].to_vec());
        let back = BarWord::from_vertices(v[p..].to_vec());
        if let (Some(a), Some(b)) = (front, back) {
            out.add_term((a, b), sign(!(p * (k - p)).is_multiple_of(2)));
        }
    }
    out
}

/// Structure maps on `C₁ ⊗ C₂` built from pairs of words, `Vₙ` shuffling the
/// factors together; pulled back to single words along [`bar_diagonal`].
pub struct ProductStructure {
    pub left: MCoalgebra,
    pub right: MCoalgebra,
    pub tc: TensorComplex,
}

impl ProductStructure {
    /// `(u ⊗ v)(c₁ ⊗ c₂) = (−1)^{|v||c₁|} Vₙ(f̃(u ⊗ c₁) ⊗ f̃(v ⊗ c₂))`.
    pub fn pair_adjoint(&self, u: &BarWord, v: &BarWord, label: &str) -> Result<Chain<Tensor>> {
        if u.rank() != v.rank() {
            return Err(Error::RankMismatch("pair of words of different ranks".into()));
        }
        let (c1, c2) = self.tc.split(label)?;
        let x = self.left.adjoint(u, c1)?;
        let y = self.right.adjoint(v, c2)?;
        let mut out = Chain::zero();
        let odd = (v.degree() as i64 * self.left.degree_of(c1)) % 2 != 0;
        for (a, ca) in x.iter() {
            let da: Vec<i64> = a.iter().map(|l| self.left.degree_of(l)).collect();
            for (b, cb) in y.iter() {
                let mut s = odd;
                let mut t = Vec::with_capacity(a.len());
                for i in 0..a.len() {
                    let db = self.right.degree_of(&b[i]);
                    let after: i64 = da[i + 1..].iter().sum();
                    s ^= (db * after) % 2 != 0;
                    t.push(self.tc.join(&a[i], &b[i])?.to_string());
                }
                out.add_term(t, ca * cb * sign(s));
            }
        }
        Ok(out)
    }
}

impl StructureMaps for ProductStructure {
    fn kind(&self) -> String {
        "product".into()
    }

    fn adjoint(&self, w: &BarWord, label: &str) -> Result<Chain<Tensor>> {
        let mut out = Chain::zero();
        for ((u, v), c) in bar_diagonal(w).iter() {
            out.add_scaled(&self.pair_adjoint(u, v, label)?, c);
        }
        Ok(out)
    }

    fn max_rank(&self) -> usize {
        self.left.rank_bound.min(self.right.rank_bound)
    }
}

/// `M₁ ⊗ M₂` with rank bound at most `rank_bound`.
pub fn product_mstructure(m1: &MCoalgebra, m2: &MCoalgebra, rank_bound: usize) -> MCoalgebra {
    let tc = tensor(m1.complex.clone(), m2.complex.clone());
    let complex = tc.complex.clone();
    let s = ProductStructure {
        left: m1.clone(),
        right: m2.clone(),
        tc,
    };
    let rank = rank_bound.min(s.max_rank());
    let degree = m1.degree_bound.min(m2.degree_bound);
    MCoalgebra::new(format!("{} ⊗ {}", m1.name, m2.name), complex, Arc::new(s), rank, degree)
}

