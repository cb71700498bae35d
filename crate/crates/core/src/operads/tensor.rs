use super::Operad;
use crate::zmod::Chain;
use std::fmt;

/// Aritywise tensor product `A ⊗ B` of two operads.
#[derive(Clone, Debug)]
pub struct TensorOperad<A, B> {
    pub left: A,
    pub right: B,
}

pub fn tensor_operad<A: Operad, B: Operad>(left: A, right: B) -> TensorOperad<A, B> {
    TensorOperad { left, right }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair<X, Y>(pub X, pub Y);

impl<X: fmt::Display, Y: fmt::Display> fmt::Display for Pair<X, Y> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) ⊗ ({})", self.0, self.1)
    }
}

fn pair<X: Ord + Clone, Y: Ord + Clone>(a: &Chain<X>, b: &Chain<Y>, s: bool) -> Chain<Pair<X, Y>> {
    let mut out = Chain::zero();
    for (x, p) in a.iter() {
        for (y, q) in b.iter() {
            let c = p * q;
            out.add_term(Pair(x.clone(), y.clone()), if s { -c } else { c });
        }
    }
    out
}

impl<A: Operad, B: Operad> Operad for TensorOperad<A, B> {
    type Basis = Pair<A::Basis, B::Basis>;

    fn name(&self) -> String {
        format!("{} ⊗ {}", self.left.name(), self.right.name())
    }

    fn rank(&self, b: &Self::Basis) -> usize {
        self.left.rank(&b.0)
    }

    fn degree(&self, b: &Self::Basis) -> i64 {
        self.left.degree(&b.0) + self.right.degree(&b.1)
    }

    fn differential(&self, b: &Self::Basis) -> Chain<Self::Basis> {
        let mut out = pair(&self.left.differential(&b.0), &Chain::basis(b.1.clone()), false);
        let odd = self.left.degree(&b.0) % 2 != 0;
        out.add_chain(&pair(&Chain::basis(b.0.clone()), &self.right.differential(&b.1), odd));
        out
    }

    /// `(a⊗b) ∘ᵢ (c⊗d) = (−1)^{|b||c|} (a∘ᵢc) ⊗ (b∘ᵢd)`.
    fn compose(&self, inner: &Self::Basis, i: usize, outer: &Self::Basis) -> Chain<Self::Basis> {
        let s = (self.right.degree(&inner.1) * self.left.degree(&outer.0)) % 2 != 0;
        pair(
            &self.left.compose(&inner.0, i, &outer.0),
            &self.right.compose(&inner.1, i, &outer.1),
            s,
        )
    }

    fn unit(&self) -> Option<Chain<Self::Basis>> {
        Some(pair(&self.left.unit()?, &self.right.unit()?, false))
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<Self::Basis> {
        let mut out = Vec::new();
        for p in self.left.degrees(rank) {
            let ls = self.left.basis(rank, p);
            if ls.is_empty() {
                continue;
            }
            let rs = self.right.basis(rank, degree - p);
            for a in &ls {
                for b in &rs {
                    out.push(Pair(a.clone(), b.clone()));
                }
            }
        }
        out
    }

    fn degrees(&self, rank: usize) -> Vec<i64> {
        let mut v: Vec<i64> = self
            .left
            .degrees(rank)
            .iter()
            .flat_map(|p| self.right.degrees(rank).into_iter().map(move |q| p + q))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    fn max_rank(&self) -> usize {
        self.left.max_rank().min(self.right.max_rank())
    }
}
