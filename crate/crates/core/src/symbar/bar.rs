use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::zmod::{sign, Chain, FreeComplex};
use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Normalized bar word `g₀[g₁|…|g_k]` of `RS_n`, stored in homogeneous
/// coordinates `h₀ = g₀`, `hᵢ = hᵢ₋₁ * gᵢ` (adjacent vertices distinct).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BarWord {
    rank: usize,
    verts: Vec<Permutation>,
}

impl Ord for BarWord {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.rank, self.verts.len(), &self.verts).cmp(&(o.rank, o.verts.len(), &o.verts))
    }
}

impl PartialOrd for BarWord {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl BarWord {
    /// `[ ]_n`.
    pub fn unit(n: usize) -> BarWord {
        BarWord {
            rank: n,
            verts: vec![Permutation::identity(n)],
        }
    }

    /// `None` when two adjacent vertices coincide (degenerate).
    pub fn from_vertices(verts: Vec<Permutation>) -> Option<BarWord> {
        let rank = verts.first()?.rank();
        if verts.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(BarWord { rank, verts })
    }

    /// `None` when some letter is the identity.
    pub fn from_letters(g0: Permutation, letters: &[Permutation]) -> Result<Option<BarWord>> {
        let n = g0.rank();
        let mut verts = vec![g0];
        for g in letters {
            if g.rank() != n {
                return Err(Error::RankMismatch(format!("letter {g} in a word of rank {n}")));
            }
            let h = verts.last().expect("nonempty").mul(g);
            verts.push(h);
        }
        Ok(BarWord::from_vertices(verts))
    }

    /// `e_i = [t|…|t]` in `RS_2`.
    pub fn e(i: usize) -> BarWord {
        let t = Permutation::transposition(2, 1, 2);
        BarWord::from_letters(Permutation::identity(2), &vec![t; i])
            .expect("rank 2")
            .expect("t is not the identity")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.verts
    }

    pub fn g0(&self) -> &Permutation {
        &self.verts[0]
    }

    pub fn letters(&self) -> Vec<Permutation> {
        self.verts
            .windows(2)
            .map(|w| w[0].inverse().mul(&w[1]))
            .collect()
    }

    /// `i`-th face (vertex `i` dropped); `None` if degenerate.
    pub fn face(&self, i: usize) -> Option<BarWord> {
        let mut v = self.verts.clone();
        v.remove(i);
        BarWord::from_vertices(v)
    }

    /// `∂ = Σᵢ (−1)^{k−i} dᵢ` on degree `k`.
    pub fn boundary(&self) -> Chain<BarWord> {
        let k = self.degree();
        let mut out = Chain::zero();
        if k == 0 {
            return out;
        }
        for i in 0..=k {
            if let Some(f) = self.face(i) {
                out.add_term(f, sign((k - i) % 2 == 1));
            }
        }
        out
    }

    /// The same differential evaluated on bar letters:
    /// `(−1)^k (g₀g₁[g₂|…] + Σ(−1)ⁱ g₀[…|gᵢgᵢ₊₁|…] + (−1)^k g₀[g₁|…|g_{k−1}])`.
    pub fn boundary_from_letters(&self) -> Chain<BarWord> {
        let k = self.degree();
        let mut out = Chain::zero();
        if k == 0 {
            return out;
        }
        let g = self.letters();
        let g0 = self.g0();
        let outer = sign(k % 2 == 1);
        let mut push = |w: Result<Option<BarWord>>, s: BigInt| {
            if let Ok(Some(w)) = w {
                out.add_term(w, s * &outer);
            }
        };
        push(BarWord::from_letters(g0.mul(&g[0]), &g[1..]), BigInt::one());
        for i in 1..k {
            let mut l = g.clone();
            let merged = l[i - 1].mul(&l[i]);
            l.splice(i - 1..=i, [merged]);
            if l[i - 1].is_identity() {
                continue;
            }
            push(BarWord::from_letters(g0.clone(), &l), sign(i % 2 == 1));
        }
        push(BarWord::from_letters(g0.clone(), &g[..k - 1]), sign(k % 2 == 1));
        out
    }

    /// Value relabelling `hᵢ ↦ hᵢ * p`: the action under which the higher
    /// diagonals are equivariant (a right action: acting by `p` then `q` is `p*q`).
    pub fn act(&self, p: &Permutation) -> BarWord {
        BarWord {
            rank: self.rank,
            verts: self.verts.iter().map(|h| h.mul(p)).collect(),
        }
    }

    /// ℤSₙ-module structure `g·(g₀[g₁|…]) = (g*g₀)[g₁|…]`.
    pub fn left_mul(&self, g: &Permutation) -> BarWord {
        BarWord {
            rank: self.rank,
            verts: self.verts.iter().map(|h| g.mul(h)).collect(),
        }
    }

    /// Representative with `h₀ = e` and the permutation `p` with `self = rep.act(p)`.
    pub fn normal_form(&self) -> (BarWord, Permutation) {
        let p = self.verts[0].clone();
        let pinv = p.inverse();
        (self.act(&pinv), p)
    }

    /// Parse `g₀[g₁|…|g_k]` (g₀ optional) with cycle-notation letters.
    pub fn parse(s: &str, n: usize) -> Result<BarWord> {
        let s = s.trim();
        let open = s.find('[').ok_or_else(|| Error::Parse(format!("bar word `{s}` lacks `[`")))?;
        let body = s[open + 1..]
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("bar word `{s}` lacks closing `]`")))?;
        let g0 = if open == 0 {
            Permutation::identity(n)
        } else {
            Permutation::parse(&s[..open], n)?
        };
        let letters: Vec<Permutation> = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split('|').map(|x| Permutation::parse(x, n)).collect::<Result<_>>()?
        };
        BarWord::from_letters(g0, &letters)?
            .ok_or_else(|| Error::Parse(format!("`{s}` has an identity letter (degenerate)")))
    }

    pub fn from_cycle_list(g0: Option<&str>, letters: &[String], n: usize) -> Result<BarWord> {
        let g0 = match g0 {
            Some(x) => Permutation::parse(x, n)?,
            None => Permutation::identity(n),
        };
        let l: Vec<Permutation> = letters.iter().map(|x| Permutation::parse(x, n)).collect::<Result<_>>()?;
        BarWord::from_letters(g0, &l)?.ok_or_else(|| Error::Parse("identity letter in bar word".into()))
    }
}

impl fmt::Display for BarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.g0().is_identity() {
            write!(f, "{}", self.g0())?;
        }
        let l: Vec<String> = self.letters().iter().map(|g| g.to_string()).collect();
        write!(f, "[{}]", l.join("|"))
    }
}

impl fmt::Debug for BarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All normalized words of rank `n` and degree `k`, in basis order.
pub fn words(n: usize, k: usize) -> Vec<BarWord> {
    let g = Permutation::all(n);
    let mut out: Vec<Vec<Permutation>> = g.iter().map(|h| vec![h.clone()]).collect();
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * g.len().saturating_sub(1));
        for w in &out {
            for h in &g {
                if h != w.last().expect("nonempty") {
                    let mut v = w.clone();
                    v.push(h.clone());
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|verts| BarWord { rank: n, verts })
        .collect()
}

/// Free ℤSₙ-module generators (words with `g₀ = e`) of degree `k`.
pub fn generators(n: usize, k: usize) -> Vec<BarWord> {
    words(n, k)
        .into_iter()
        .filter(|w| w.g0().is_identity())
        .collect()
}

/// Truncated normalized bar resolution `RS_n` through a degree bound.
#[derive(Clone, Debug)]
pub struct BarResolution {
    pub n: usize,
    pub bound: usize,
}

pub fn bar_resolution(n: usize, bound: usize) -> BarResolution {
    BarResolution { n, bound }
}

impl BarResolution {
    pub fn basis(&self, k: usize) -> Vec<BarWord> {
        if k > self.bound {
            Vec::new()
        } else {
            words(self.n, k)
        }
    }

    /// Materialize as a labelled free complex (augmented by `[ ] ↦ 1`).
    pub fn complex(&self) -> FreeComplex {
        let mut b = FreeComplex::builder();
        let mut aug = std::collections::BTreeMap::new();
        for k in 0..=self.bound {
            for w in words(self.n, k) {
                let l = w.to_string();
                if k == 0 {
                    aug.insert(l.clone(), BigInt::one());
                }
                b.push_cell(l.clone(), k as i64, None);
                b.set_boundary(l, w.boundary().into_iter().map(|(x, c)| (x.to_string(), c)).collect());
            }
        }
        b.set_augmentation(aug);
        b.build().expect("bar resolution is a complex")
    }

    pub fn augmentation(w: &BarWord) -> BigInt {
        if w.degree() == 0 {
            BigInt::one()
        } else {
            BigInt::default()
        }
    }

    /// `Φ(h₀,…,h_k) = (−1)^{k+1} (e, h₀, …, h_k)`, zero when `h₀ = e`.
    pub fn contracting_homotopy(w: &BarWord) -> Chain<BarWord> {
        if w.g0().is_identity() {
            return Chain::zero();
        }
        let mut v = vec![Permutation::identity(w.rank)];
        v.extend(w.verts.iter().cloned());
        let k = w.degree();
        Chain::term(
            BarWord::from_vertices(v).expect("h₀ ≠ e"),
            sign(k.is_multiple_of(2)),
        )
    }

    /// First generator `w` of degree ≤ bound with `∂∂w ≠ 0`, by a direct
    /// index-level evaluation (generators suffice since ∂ commutes with the
    /// module structure).
    pub fn boundary_squared_witness(&self) -> Option<BarWord> {
        let g = Permutation::all(self.n);
        let m = g.len();
        let index: HashMap<&Permutation, u8> = g.iter().enumerate().map(|(i, p)| (p, i as u8)).collect();
        let id = index[&Permutation::identity(self.n)];
        for k in 2..=self.bound {
            let total = m.checked_sub(1).map(|b| b.pow(k as u32)).unwrap_or(0);
            let bad = (0..total).into_par_iter().find_first(|&code| {
                let mut v = vec![id];
                let mut c = code;
                for _ in 0..k {
                    let digit = (c % (m - 1)) as u8;
                    c /= m - 1;
                    let prev = *v.last().expect("nonempty");
                    v.push(if digit >= prev { digit + 1 } else { digit });
                }
                !squares_to_zero(&v)
            });
            if let Some(code) = bad {
                let mut v = vec![id];
                let mut c = code;
                for _ in 0..k {
                    let digit = (c % (m - 1)) as u8;
                    c /= m - 1;
                    let prev = *v.last().expect("nonempty");
                    v.push(if digit >= prev { digit + 1 } else { digit });
                }
                let verts = v.iter().map(|&i| g[i as usize].clone()).collect();
                return Some(BarWord { rank: self.n, verts });
            }
        }
        None
    }
}

fn squares_to_zero(v: &[u8]) -> bool {
    let k = v.len() - 1;
    let mut acc: Vec<(Vec<u8>, i32)> = Vec::new();
    for i in 0..=k {
        let mut f = v.to_vec();
        f.remove(i);
        if f.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let s1 = if (k - i) % 2 == 1 { -1 } else { 1 };
        for j in 0..k {
            let mut g = f.clone();
            g.remove(j);
            if g.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let s2 = if (k - 1 - j) % 2 == 1 { -1 } else { 1 };
            acc.push((g, s1 * s2));
        }
    }
    acc.sort();
    let mut i = 0;
    while i < acc.len() {
        let mut j = i;
        let mut s = 0;
        while j < acc.len() && acc[j].0 == acc[i].0 {
            s += acc[j].1;
            j += 1;
        }
        if s != 0 {
            return false;
        }
        i = j;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::homology;

    fn t() -> Permutation {
        Permutation::transposition(2, 1, 2)
    }

    #[test]
    fn e_boundaries_match_printed_formula() {
        for i in 1..=5 {
            let mut want = Chain::zero();
            want.add_term(BarWord::e(i - 1), BigInt::one());
            want.add_term(BarWord::e(i - 1).left_mul(&t()), sign(i % 2 == 1));
            assert_eq!(BarWord::e(i).boundary(), want, "e_{i}");
        }
        assert!(BarWord::unit(3).boundary().is_zero());
    }

    #[test]
    fn letter_formula_agrees_with_homogeneous() {
        for k in 0..=3 {
            for w in words(3, k) {
                assert_eq!(w.boundary(), w.boundary_from_letters(), "{w}");
            }
        }
    }

    #[test]
    fn parse_display_round_trip() {
        let w = BarWord::parse("(1,2)[(1,3,2)|(1,2)]", 3).unwrap();
        assert_eq!(w.to_string(), "(1,2)[(1,3,2)|(1,2)]");
        assert_eq!(BarWord::parse(&w.to_string(), 3).unwrap(), w);
        assert!(BarWord::parse("[()|(1,2)]", 2).is_err());
        assert_eq!(BarWord::parse("[]", 4).unwrap(), BarWord::unit(4));
    }

    #[test]
    fn actions_commute_with_boundary() {
        for k in 0..=3 {
            for w in words(3, k) {
                for p in Permutation::all(3) {
                    let lhs = w.act(&p).boundary();
                    let rhs = w.boundary().flat_map(|x| Chain::basis(x.act(&p)));
                    assert_eq!(lhs, rhs);
                    let lhs = w.left_mul(&p).boundary();
                    let rhs = w.boundary().flat_map(|x| Chain::basis(x.left_mul(&p)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn act_is_right_action() {
        let g = Permutation::all(3);
        let w = BarWord::parse("[(1,2)|(2,3)]", 3).unwrap();
        for p in &g {
            for q in &g {
                assert_eq!(w.act(p).act(q), w.act(&p.mul(q)));
            }
        }
    }

    #[test]
    fn homotopy_identities() {
        for k in 0..=4 {
            for w in words(3, k) {
                let phi = BarResolution::contracting_homotopy(&w);
                assert!(phi.flat_map(BarResolution::contracting_homotopy).is_zero());
                let mut lhs = phi.flat_map(|x| x.boundary());
                lhs.add_chain(&w.boundary().flat_map(BarResolution::contracting_homotopy));
                let mut rhs = Chain::basis(w.clone());
                if k == 0 {
                    rhs.add_term(BarWord::unit(3), -BigInt::one());
                }
                assert_eq!(lhs, rhs, "{w}");
            }
        }
        assert!(BarResolution::contracting_homotopy(&BarWord::unit(3)).is_zero());
    }

    #[test]
    fn resolution_is_acyclic() {
        let r = bar_resolution(2, 6).complex();
        let h = homology(&r, 0, 5);
        assert_eq!(h[&0].rank, 1);
        assert!((1..=5).all(|d| h[&d].is_zero()));
        let r = bar_resolution(3, 3).complex();
        let h = homology(&r, 0, 2);
        assert_eq!(h[&0].rank, 1);
        assert!(h[&1].is_zero() && h[&2].is_zero());
    }

    #[test]
    fn boundary_squared_small() {
        for n in 1..=3 {
            assert_eq!(bar_resolution(n, 4).boundary_squared_witness(), None);
        }
    }
}
