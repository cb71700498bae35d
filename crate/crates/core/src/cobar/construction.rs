use super::coalgebra::Coalgebra;
use crate::error::{Error, Result};
use crate::report::Check;
use crate::zmod::{sign_pow, Chain, FreeComplex, GradedMap};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Label of the word `[c₁|…|c_r]`.
pub fn word_label(letters: &[String]) -> String {
    format!("[{}]", letters.join("|"))
}

/// The cobar construction `ΩC = T(s⁻¹C̄)` on a 1-reduced coalgebra, truncated
/// to words of degree at most `bound`. A letter `[c]` has degree `|c| − 1` and
///
/// `d[c] = −[∂c] + Σ (−1)^{|c′|} [c′|c″]` over the reduced coproduct,
///
/// extended to words as a derivation with the Koszul sign of the letters passed.
#[derive(Clone, Debug)]
pub struct Cobar {
    pub coalgebra: Coalgebra,
    pub bound: i64,
    pub basepoint: String,
    pub complex: Arc<FreeComplex>,
    words: BTreeMap<String, Vec<String>>,
    reduced: BTreeMap<String, Chain<(String, String)>>,
}

impl Cobar {
    pub fn new(c: Coalgebra, bound: i64) -> Result<Self> {
        let cx = c.complex.clone();
        let zero = cx.basis(0);
        if zero.len() != 1 || cx.dim(1) != 0 || cx.degree_range().is_some_and(|(lo, _)| lo < 0) {
            return Err(Error::Precondition("cobar needs C₀ = ℤ and C₁ = 0".into()));
        }
        let basepoint = zero[0].to_string();
        c.check_coassociative(bound + 1)?;
        let mut reduced = BTreeMap::new();
        for cell in cx.cells() {
            let delta = c.coproduct_of(&cell.label);
            let mut r = Chain::zero();
            for (t, k) in delta.iter() {
                let (x, y) = (&t[0], &t[1]);
                let unit = if cell.label == basepoint {
                    x == &basepoint && y == &basepoint
                } else {
                    (x == &basepoint && y == &cell.label) || (y == &basepoint && x == &cell.label)
                };
                if unit {
                    if !k.is_one() {
                        return Err(Error::Precondition(format!("coproduct of `{}` is not counital", cell.label)));
                    }
                } else if x == &basepoint || y == &basepoint {
                    return Err(Error::Precondition(format!("coproduct of `{}` is not counital", cell.label)));
                } else {
                    r.add_term((x.clone(), y.clone()), k.clone());
                }
            }
            let units = if cell.label == basepoint { 1 } else { 2 };
            if delta.len() != r.len() + units {
                return Err(Error::Precondition(format!("coproduct of `{}` is not counital", cell.label)));
            }
            reduced.insert(cell.label.clone(), r);
        }
        let letters: Vec<(String, i64)> = cx
            .cells()
            .iter()
            .filter(|l| l.label != basepoint)
            .map(|l| (l.label.clone(), l.degree - 1))
            .collect();
        let mut words = BTreeMap::new();
        let mut stack: Vec<(Vec<String>, i64)> = vec![(vec![], 0)];
        let mut b = FreeComplex::builder();
        while let Some((w, d)) = stack.pop() {
            b.push_cell(word_label(&w), d, None);
            for (l, e) in &letters {
                if d + e <= bound {
                    let mut v = w.clone();
                    v.push(l.clone());
                    stack.push((v, d + e));
                }
            }
            words.insert(word_label(&w), w);
        }
        let mut me = Cobar {
            coalgebra: c,
            bound,
            basepoint,
            complex: Arc::new(FreeComplex::zero()),
            words,
            reduced,
        };
        for (l, w) in &me.words {
            let dw = me.differential(w)?;
            b.set_boundary(l.clone(), dw.iter().map(|(x, k)| (word_label(x), k.clone())).collect());
        }
        me.complex = Arc::new(b.default_augmentation().build()?);
        Ok(me)
    }

    pub fn letter_degree(&self, l: &str) -> Result<i64> {
        Ok(self.coalgebra.complex.degree_of(l)? - 1)
    }

    pub fn word_degree(&self, w: &[String]) -> Result<i64> {
        w.iter().map(|l| self.letter_degree(l)).sum()
    }

    pub fn letters(&self, label: &str) -> Result<&[String]> {
        self.words.get(label).map(|v| v.as_slice()).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn words(&self) -> impl Iterator<Item = (&String, &Vec<String>)> {
        self.words.iter()
    }

    fn letter_differential(&self, l: &str) -> Result<Chain<Vec<String>>> {
        let mut out = Chain::zero();
        for (x, k) in self.coalgebra.complex.boundary_of(l)?.terms.iter() {
            if x != &self.basepoint {
                out.add_term(vec![x.clone()], -k);
            }
        }
        for ((x, y), k) in self.reduced[l].iter() {
            let s = sign_pow(self.coalgebra.complex.degree_of(x)?);
            out.add_term(vec![x.clone(), y.clone()], k * s);
        }
        Ok(out)
    }

    /// Differential of a word as a combination of words.
    pub fn differential(&self, w: &[String]) -> Result<Chain<Vec<String>>> {
        let mut out = Chain::zero();
        let mut before = 0;
        for (i, l) in w.iter().enumerate() {
            let s = sign_pow(before);
            for (x, k) in self.letter_differential(l)?.iter() {
                let mut v = w[..i].to_vec();
                v.extend(x.iter().cloned());
                v.extend(w[i + 1..].iter().cloned());
                out.add_term(v, k * &s);
            }
            before += self.letter_degree(l)?;
        }
        Ok(out)
    }

    /// Concatenation, dropping words beyond the bound.
    pub fn multiply(&self, x: &Chain<String>, y: &Chain<String>) -> Result<Chain<String>> {
        let mut out = Chain::zero();
        for (a, s) in x.iter() {
            for (b, t) in y.iter() {
                let mut v = self.letters(a)?.to_vec();
                v.extend(self.letters(b)?.iter().cloned());
                let l = word_label(&v);
                if self.words.contains_key(&l) {
                    out.add_term(l, s * t);
                }
            }
        }
        Ok(out)
    }

    /// Augmentation `ε: ΩC → ℤ`, the coefficient of the empty word.
    pub fn counit(&self, x: &Chain<String>) -> BigInt {
        x.coeff(&word_label(&[]))
    }
}

/// `Ω(g)[c₁|…|c_r] = [g c₁|…|g c_r]` for a coalgebra map `g: C → D`.
pub fn cobar_functor(g: &GradedMap, source: &Cobar, target: &Cobar) -> Result<GradedMap> {
    let ch = source.coalgebra.check_map(g, &target.coalgebra);
    if !ch.passed {
        return Err(Error::Precondition(format!(
            "not a coalgebra map: {}",
            ch.witness.unwrap_or_default()
        )));
    }
    if g.degree() != 0 || target.bound < source.bound {
        return Err(Error::Precondition("Ω(g) needs a degree-0 map and a target bound at least the source bound".into()));
    }
    GradedMap::from_fn(source.complex.clone(), target.complex.clone(), 0, |l| {
        let mut acc: Chain<Vec<String>> = Chain::basis(vec![]);
        for letter in source.letters(l)? {
            let mut next = Chain::zero();
            for (w, k) in acc.iter() {
                for (x, c) in g.on_label(letter).iter() {
                    if x == &target.basepoint {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(x.clone());
                    next.add_term(v, k * c);
                }
            }
            acc = next;
        }
        Ok(acc.iter().map(|(w, k)| (word_label(w), k.clone())).collect())
    })
}

/// `τ = α∘g: A → ΩC` for a coalgebra map `g: A → C`; `α(c) = [c]` on `C̄`.
#[derive(Clone, Debug)]
pub struct TwistingCochain {
    pub source: Coalgebra,
    pub cobar: Arc<Cobar>,
    /// `g: A → C`, or `None` for the zero cochain.
    pub map: Option<GradedMap>,
}

impl TwistingCochain {
    /// The canonical `α: C → ΩC`.
    pub fn canonical(cobar: Arc<Cobar>) -> Self {
        TwistingCochain {
            source: cobar.coalgebra.clone(),
            map: Some(GradedMap::identity(cobar.coalgebra.complex.clone())),
            cobar,
        }
    }

    /// `α∘g`; `g` must be a coalgebra map into the cobar's coalgebra.
    pub fn composite(cobar: Arc<Cobar>, source: Coalgebra, g: GradedMap) -> Result<Self> {
        let ch = source.check_map(&g, &cobar.coalgebra);
        if !ch.passed {
            return Err(Error::Precondition(format!(
                "twisting composite needs a coalgebra map: {}",
                ch.witness.unwrap_or_default()
            )));
        }
        Ok(TwistingCochain {
            source,
            cobar,
            map: Some(g),
        })
    }

    pub fn zero(cobar: Arc<Cobar>, source: Coalgebra) -> Self {
        TwistingCochain { source, cobar, map: None }
    }

    /// `τ(a)` as a combination of one-letter words.
    pub fn apply(&self, a: &str) -> Chain<Vec<String>> {
        let mut out = Chain::zero();
        if let Some(g) = &self.map {
            for (x, k) in g.on_label(a).iter() {
                if x != &self.cobar.basepoint {
                    out.add_term(vec![x.clone()], k.clone());
                }
            }
        }
        out
    }

    /// `dτ(a) + τ(∂a) = Σ (−1)^{|a′|} τ(a′)τ(a″)` on every cell whose value lies
    /// within the cobar bound.
    pub fn check(&self) -> Result<Check> {
        let mut ch = Check::new("twisting condition");
        let cx = &self.source.complex;
        for cell in cx.cells().iter().filter(|c| c.degree - 1 <= self.cobar.bound) {
            let mut lhs: Chain<Vec<String>> = Chain::zero();
            for (w, k) in self.apply(&cell.label).iter() {
                lhs.add_scaled(&self.cobar.differential(w)?, k);
            }
            for (x, k) in cx.boundary_of(&cell.label)?.terms.iter() {
                lhs.add_scaled(&self.apply(x), k);
            }
            let mut rhs = Chain::zero();
            for (t, k) in self.source.coproduct_of(&cell.label).iter() {
                let s = sign_pow(cx.degree_of(&t[0])?);
                for (u, a) in self.apply(&t[0]).iter() {
                    for (v, b) in self.apply(&t[1]).iter() {
                        let mut w = u.clone();
                        w.extend(v.iter().cloned());
                        rhs.add_term(w, k * a * b * &s);
                    }
                }
            }
            ch.record(lhs == rhs, || format!("on `{}`", cell.label));
        }
        Ok(ch)
    }
}

/// `A ⊗_τ ΩC` through total degree `bound`:
///
/// `d(a⊗w) = ∂a⊗w + (−1)^{|a|} a⊗dw + Σ (−1)^{|a′|+1} a′⊗τ(a″)·w`.
#[derive(Clone, Debug)]
pub struct TwistedTensor {
    pub complex: Arc<FreeComplex>,
    pub base: Arc<FreeComplex>,
    pub cobar: Arc<Cobar>,
    pub bound: i64,
    parts: BTreeMap<String, (String, String)>,
}

pub fn pair_label(a: &str, w: &str) -> String {
    format!("{a}⊗{w}")
}

impl TwistedTensor {
    pub fn new(tau: &TwistingCochain, bound: i64) -> Result<Self> {
        let cobar = tau.cobar.clone();
        if cobar.bound < bound - 1 {
            return Err(Error::BoundExhausted(format!(
                "cobar truncated at {} but the twisted product needs {}",
                cobar.bound,
                bound - 1
            )));
        }
        let a = tau.source.complex.clone();
        let mut b = FreeComplex::builder();
        let mut parts = BTreeMap::new();
        for x in a.cells() {
            for y in cobar.complex.cells() {
                if x.degree + y.degree <= bound {
                    let l = pair_label(&x.label, &y.label);
                    b.push_cell(l.clone(), x.degree + y.degree, None);
                    parts.insert(l, (x.label.clone(), y.label.clone()));
                }
            }
        }
        for (l, (x, y)) in &parts {
            let dx = a.degree_of(x)?;
            let mut terms: Chain<String> = Chain::zero();
            for (u, k) in a.boundary_of(x)?.terms.iter() {
                terms.add_term(pair_label(u, y), k.clone());
            }
            let s = sign_pow(dx);
            for (v, k) in cobar.complex.boundary_of(y)?.terms.iter() {
                terms.add_term(pair_label(x, v), k * &s);
            }
            let w = cobar.letters(y)?;
            for (t, k) in tau.source.coproduct_of(x).iter() {
                let s = -sign_pow(a.degree_of(&t[0])?);
                for (v, c) in tau.apply(&t[1]).iter() {
                    let mut word = v.clone();
                    word.extend(w.iter().cloned());
                    terms.add_term(pair_label(&t[0], &word_label(&word)), k * c * &s);
                }
            }
            b.set_boundary(l.clone(), terms.iter().map(|(x, k)| (x.clone(), k.clone())).collect());
        }
        let complex = Arc::new(b.default_augmentation().build()?);
        Ok(TwistedTensor {
            complex,
            base: a,
            cobar,
            bound,
            parts,
        })
    }

    pub fn parts(&self, label: &str) -> Result<(&str, &str)> {
        self.parts
            .get(label)
            .map(|(a, w)| (a.as_str(), w.as_str()))
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Keep only the terms that are cells of this truncation.
    pub fn truncate(&self, x: &Chain<String>) -> Chain<String> {
        x.iter().filter(|(l, _)| self.parts.contains_key(*l)).map(|(l, k)| (l.clone(), k.clone())).collect()
    }

    /// `1⊗ε: A ⊗_τ ΩC → A`.
    pub fn counit_map(&self) -> Result<GradedMap> {
        let empty = word_label(&[]);
        GradedMap::from_fn(self.complex.clone(), self.base.clone(), 0, |l| {
            let (a, w) = self.parts(l)?;
            Ok(if w == empty { Chain::basis(a.to_string()) } else { Chain::zero() })
        })
    }

    /// `g ⊗ 1` into another twisted product over the same cobar, with the given degree.
    pub fn tensor_map(&self, g: &GradedMap, target: &TwistedTensor) -> Result<GradedMap> {
        GradedMap::from_fn(self.complex.clone(), target.complex.clone(), g.degree(), |l| {
            let (a, w) = self.parts(l)?;
            let mut out = Chain::zero();
            for (x, k) in g.on_label(a).iter() {
                out.add_term(pair_label(x, w), k.clone());
            }
            Ok(target.truncate(&out))
        })
    }

    /// The twist part `δ = d − ∂⊗1 − 1⊗d` as a degree −1 map.
    pub fn twist(&self) -> Result<GradedMap> {
        GradedMap::from_fn(self.complex.clone(), self.complex.clone(), -1, |l| {
            let (a, w) = self.parts(l)?;
            let mut out = self.complex.boundary_of(l)?.terms;
            for (u, k) in self.base.boundary_of(a)?.terms.iter() {
                out.add_term(pair_label(u, w), -k);
            }
            let s = sign_pow(self.base.degree_of(a)?);
            for (v, k) in self.cobar.complex.boundary_of(w)?.terms.iter() {
                out.add_term(pair_label(a, v), -(k * &s));
            }
            Ok(out)
        })
    }
}

/// `A ⊗_τ ΩC` through total degree `bound`; `∂² = 0` is asserted on construction.
pub fn twisted_tensor(tau: &TwistingCochain, bound: i64) -> Result<TwistedTensor> {
    TwistedTensor::new(tau, bound)
}

/// `ΩC` with its canonical twisting cochain.
pub fn cobar(c: &Coalgebra, bound: i64) -> Result<(Arc<Cobar>, TwistingCochain)> {
    let om = Arc::new(Cobar::new(c.clone(), bound)?);
    let alpha = TwistingCochain::canonical(om.clone());
    Ok((om, alpha))
}
