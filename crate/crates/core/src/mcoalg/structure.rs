use crate::error::{Error, Result};
use crate::symbar::{permute_factors, BarWord, Permutation};
use crate::zmod::{sign, Chain, Element, FreeComplex};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Basis tensor of `Cⁿ`, one label per factor.
pub type Tensor = Vec<String>;

/// Adjoint structure maps `f̃ₙ: RSₙ ⊗ C → Cⁿ` in ranks `n ≥ 2`.
pub trait StructureMaps: Send + Sync {
    fn kind(&self) -> String;
    fn adjoint(&self, word: &BarWord, label: &str) -> Result<Chain<Tensor>>;
    fn max_rank(&self) -> usize;
}

/// A chain complex with an m-structure over the symmetric construct.
#[derive(Clone)]
pub struct MCoalgebra {
    pub name: String,
    pub complex: Arc<FreeComplex>,
    pub structure: Arc<dyn StructureMaps>,
    pub rank_bound: usize,
    pub degree_bound: usize,
}

impl fmt::Debug for MCoalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MCoalgebra")
            .field("name", &self.name)
            .field("structure", &self.structure.kind())
            .field("rank_bound", &self.rank_bound)
            .field("degree_bound", &self.degree_bound)
            .finish()
    }
}

impl MCoalgebra {
    pub fn new(
        name: impl Into<String>,
        complex: Arc<FreeComplex>,
        structure: Arc<dyn StructureMaps>,
        rank_bound: usize,
        degree_bound: usize,
    ) -> Self {
        MCoalgebra {
            name: name.into(),
            complex,
            structure,
            rank_bound,
            degree_bound,
        }
    }

    pub fn degree_of(&self, label: &str) -> i64 {
        self.complex.degree_of(label).unwrap_or(0)
    }

    pub fn tensor_degree(&self, t: &[String]) -> i64 {
        t.iter().map(|x| self.degree_of(x)).sum()
    }

    /// `f̃ₙ(w ⊗ c)` on a basis word and basis cell.
    pub fn adjoint(&self, w: &BarWord, label: &str) -> Result<Chain<Tensor>> {
        let n = w.rank();
        if n > self.rank_bound || n > self.structure.max_rank().max(1) {
            return Err(Error::BoundExhausted(format!("rank {n} exceeds the stored rank bound {}", self.rank_bound)));
        }
        if w.degree() > self.degree_bound {
            return Err(Error::BoundExhausted(format!(
                "word degree {} exceeds the stored degree bound {}",
                w.degree(),
                self.degree_bound
            )));
        }
        if !self.complex.contains(label) {
            return Err(Error::UnknownLabel(label.to_string()));
        }
        match n {
            0 => {
                let e = self.complex.augmentation_of(label);
                Ok(if e.is_zero() { Chain::zero() } else { Chain::term(Vec::new(), e) })
            }
            1 => Ok(Chain::basis(vec![label.to_string()])),
            _ => self.structure.adjoint(w, label),
        }
    }

    pub fn adjoint_chain(&self, a: &Chain<BarWord>, c: &Chain<String>) -> Result<Chain<Tensor>> {
        let mut out = Chain::zero();
        for (w, p) in a.iter() {
            for (l, q) in c.iter() {
                out.add_scaled(&self.adjoint(w, l)?, &(p * q));
            }
        }
        Ok(out)
    }

    /// `Δ_a(c) = f̃ₙ(a ⊗ c)`.
    pub fn higher_coproduct(&self, a: &Chain<BarWord>, c: &Element) -> Result<Chain<Tensor>> {
        self.complex.check_element(c)?;
        self.adjoint_chain(a, &c.terms)
    }

    /// `fₙ(c)(r) = (−1)^{|r||c|} f̃ₙ(r ⊗ c)`.
    pub fn structure_map(&self, label: &str, r: &BarWord) -> Result<Chain<Tensor>> {
        let s = sign((r.degree() as i64 * self.degree_of(label)) % 2 != 0);
        Ok(self.adjoint(r, label)?.scaled(&s))
    }

    /// The underlying coproduct `Δ = Δ_{[ ]₂}`.
    pub fn coproduct(&self, label: &str) -> Result<Chain<Tensor>> {
        self.adjoint(&BarWord::unit(2), label)
    }

    /// `∂` on `Cⁿ`.
    pub fn tensor_boundary(&self, x: &Chain<Tensor>) -> Chain<Tensor> {
        let mut out = Chain::zero();
        for (t, c) in x.iter() {
            let mut before = 0i64;
            for (m, l) in t.iter().enumerate() {
                let s = sign(before % 2 != 0);
                if let Ok(b) = self.complex.boundary_of(l) {
                    for (y, k) in b.terms.iter() {
                        let mut v = t.clone();
                        v[m] = y.clone();
                        out.add_term(v, c * k * &s);
                    }
                }
                before += self.degree_of(l);
            }
        }
        out
    }

    /// Koszul-signed factor permutation: factor `i` moves to position `p(i)`.
    pub fn permute(&self, p: &Permutation, x: &Chain<Tensor>) -> Result<Chain<Tensor>> {
        let mut out = Chain::zero();
        for (t, c) in x.iter() {
            let (neg, v) = permute_factors(p, t, |l| self.degree_of(l) % 2 != 0)?;
            out.add_term(v, if neg { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// `(1^{⊗(i−1)} ⊗ f̃(y ⊗ −) ⊗ 1^{⊗(m−i)})` applied to `x`, with the Koszul sign
    /// `(−1)^{|y|·(degree of the first i−1 factors)}`.
    pub fn apply_slot(&self, i: usize, y: &BarWord, x: &Chain<Tensor>) -> Result<Chain<Tensor>> {
        let mut out = Chain::zero();
        for (t, c) in x.iter() {
            if i == 0 || i > t.len() {
                return Err(Error::RankMismatch(format!("slot {i} on a tensor of rank {}", t.len())));
            }
            let pre = self.tensor_degree(&t[..i - 1]);
            let s = sign((pre * y.degree() as i64) % 2 != 0);
            for (u, k) in self.adjoint(y, &t[i - 1])?.iter() {
                let mut v = t[..i - 1].to_vec();
                v.extend(u.iter().cloned());
                v.extend(t[i..].iter().cloned());
                out.add_term(v, c * k * &s);
            }
        }
        Ok(out)
    }
}

/// Structure maps given on generators `h₀ = e` and extended by equivariance.
#[derive(Clone, Debug)]
pub struct TableStructure {
    pub entries: BTreeMap<(BarWord, String), Chain<Tensor>>,
    pub degrees: BTreeMap<String, i64>,
    pub rank: usize,
}

impl TableStructure {
    pub fn empty(rank: usize) -> Self {
        TableStructure {
            entries: BTreeMap::new(),
            degrees: BTreeMap::new(),
            rank,
        }
    }

    pub fn new(complex: &FreeComplex, rank: usize) -> Self {
        TableStructure {
            entries: BTreeMap::new(),
            degrees: complex.cells().iter().map(|c| (c.label.clone(), c.degree)).collect(),
            rank,
        }
    }

    fn permute(&self, p: &Permutation, x: &Chain<Tensor>) -> Result<Chain<Tensor>> {
        let mut out = Chain::zero();
        for (t, c) in x.iter() {
            let (neg, v) = permute_factors(p, t, |l| self.degrees.get(l).copied().unwrap_or(0) % 2 != 0)?;
            out.add_term(v, if neg { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// Record `f̃(w ⊗ label) = value`, normalizing `w` to its generator.
    pub fn insert(&mut self, w: &BarWord, label: &str, value: Chain<Tensor>) -> Result<()> {
        if w.rank() > self.rank {
            self.rank = w.rank();
        }
        let (rep, p) = w.normal_form();
        let v = self.permute(&p.inverse(), &value)?;
        let key = (rep, label.to_string());
        if let Some(old) = self.entries.get(&key) {
            if old != &v {
                return Err(Error::Precondition(format!("conflicting entries for {w} on `{label}`")));
            }
        }
        self.entries.insert(key, v);
        Ok(())
    }
}

impl StructureMaps for TableStructure {
    fn kind(&self) -> String {
        "table".into()
    }

    fn adjoint(&self, w: &BarWord, label: &str) -> Result<Chain<Tensor>> {
        let (rep, p) = w.normal_form();
        match self.entries.get(&(rep, label.to_string())) {
            Some(v) => self.permute(&p, v),
            None => Ok(Chain::zero()),
        }
    }

    fn max_rank(&self) -> usize {
        self.rank
    }
}

/// `a⊗b − c⊗d` style rendering of a tensor chain; rank-0 tensors print as `1`.
pub fn format_tensors(x: &Chain<Tensor>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (t, c)) in x.iter().enumerate() {
        let body = if t.is_empty() { "1".to_string() } else { t.join("⊗") };
        let neg = c.sign() == num_bigint::Sign::Minus;
        let mag = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag != 1.into() {
            s.push_str(&format!("{mag}·"));
        }
        s.push_str(&body);
    }
    s
}

/// `gⁿ` for a degree-0 map given on labels.
pub fn map_tensors(x: &Chain<Tensor>, g: impl Fn(&str) -> Chain<String>) -> Chain<Tensor> {
    let mut out = Chain::zero();
    for (t, c) in x.iter() {
        let mut acc: Vec<(Tensor, BigInt)> = vec![(Vec::new(), c.clone())];
        for f in t {
            let img = g(f);
            let mut next = Vec::with_capacity(acc.len() * img.len());
            for (prefix, a) in &acc {
                for (l, b) in img.iter() {
                    let mut p = prefix.clone();
                    p.push(l.clone());
                    next.push((p, a * b));
                }
            }
            acc = next;
            if acc.is_empty() {
                break;
            }
        }
        for (t, c) in acc {
            out.add_term(t, c);
        }
    }
    out
}
