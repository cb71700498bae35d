use super::Operad;
use crate::zmod::{sign, Chain, FreeComplex};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;
use std::sync::Arc;

/// Elementary map sending the basis cell `source` to the tensor `target` and
/// every other cell to zero. Rank 0 elements are functionals `C → ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EndoBasis {
    pub source: String,
    pub target: Vec<String>,
}

impl fmt::Display for EndoBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.target.is_empty() {
            write!(f, "{}*", self.source)
        } else {
            write!(f, "{} ↦ {}", self.source, self.target.join("⊗"))
        }
    }
}

/// The endomorphism operad `P(C)` with `P(C)_n = Hom(C, C^{⊗n})`.
#[derive(Clone, Debug)]
pub struct EndomorphismOperad {
    pub complex: Arc<FreeComplex>,
    pub rank_bound: usize,
    pub degree_window: (i64, i64),
}

pub fn endomorphism_operad(complex: Arc<FreeComplex>, rank_bound: usize, degree_window: (i64, i64)) -> EndomorphismOperad {
    EndomorphismOperad {
        complex,
        rank_bound,
        degree_window,
    }
}

impl EndomorphismOperad {
    fn tensor_degree(&self, t: &[String]) -> i64 {
        t.iter().map(|x| self.complex.degree_of(x).unwrap_or(0)).sum()
    }

    fn cell_boundary(&self, x: &str) -> Chain<String> {
        self.complex.boundary_of(x).map(|e| e.terms).unwrap_or_else(|_| Chain::zero())
    }

    /// `∂` on `C^{⊗n}` applied to a basis tensor.
    pub fn tensor_boundary(&self, t: &[String]) -> Chain<Vec<String>> {
        let mut out = Chain::zero();
        let mut before = 0i64;
        for (m, x) in t.iter().enumerate() {
            let s = sign(before % 2 != 0);
            for (y, c) in self.cell_boundary(x).iter() {
                let mut v = t.to_vec();
                v[m] = y.clone();
                out.add_term(v, &s * c);
            }
            before += self.complex.degree_of(x).unwrap_or(0);
        }
        out
    }

    /// The element of rank `n` given by a linear map on basis cells.
    pub fn from_map(&self, f: impl Fn(&str) -> Chain<Vec<String>>) -> Chain<EndoBasis> {
        let mut out = Chain::zero();
        for c in self.complex.cells() {
            for (t, k) in f(&c.label).iter() {
                out.add_term(
                    EndoBasis {
                        source: c.label.clone(),
                        target: t.clone(),
                    },
                    k.clone(),
                );
            }
        }
        out
    }

    /// The augmentation `ε ∈ P(C)_0`.
    pub fn augmentation(&self) -> Chain<EndoBasis> {
        self.from_map(|c| {
            let e = self.complex.augmentation_of(c);
            if e.is_zero() {
                Chain::zero()
            } else {
                Chain::term(Vec::new(), e)
            }
        })
    }

    /// Evaluate an element on a basis cell.
    pub fn evaluate(f: &Chain<EndoBasis>, cell: &str) -> Chain<Vec<String>> {
        let mut out = Chain::zero();
        for (b, k) in f.iter() {
            if b.source == cell {
                out.add_term(b.target.clone(), k.clone());
            }
        }
        out
    }
}

impl Operad for EndomorphismOperad {
    type Basis = EndoBasis;

    fn name(&self) -> String {
        "endomorphism".into()
    }

    fn rank(&self, b: &EndoBasis) -> usize {
        b.target.len()
    }

    fn degree(&self, b: &EndoBasis) -> i64 {
        self.tensor_degree(&b.target) - self.complex.degree_of(&b.source).unwrap_or(0)
    }

    /// `∂f = ∂∘f − (−1)^{|f|} f∘∂`.
    fn differential(&self, b: &EndoBasis) -> Chain<EndoBasis> {
        let mut out = Chain::zero();
        for (t, k) in self.tensor_boundary(&b.target).iter() {
            out.add_term(
                EndoBasis {
                    source: b.source.clone(),
                    target: t.clone(),
                },
                k.clone(),
            );
        }
        let s = -sign(self.degree(b) % 2 != 0);
        let d = self.complex.degree_of(&b.source).unwrap_or(0);
        for x in self.complex.basis(d + 1) {
            let c = self.cell_boundary(x).coeff(&b.source);
            if !c.is_zero() {
                out.add_term(
                    EndoBasis {
                        source: x.to_string(),
                        target: b.target.clone(),
                    },
                    &s * c,
                );
            }
        }
        out
    }

    /// `(1^{⊗(i−1)} ⊗ inner ⊗ 1^{⊗(n−i)}) ∘ outer` with the Koszul sign.
    fn compose(&self, inner: &EndoBasis, i: usize, outer: &EndoBasis) -> Chain<EndoBasis> {
        if i == 0 || i > outer.target.len() || outer.target[i - 1] != inner.source {
            return Chain::zero();
        }
        let before = self.tensor_degree(&outer.target[..i - 1]);
        let mut target = outer.target[..i - 1].to_vec();
        target.extend(inner.target.iter().cloned());
        target.extend(outer.target[i..].iter().cloned());
        Chain::term(
            EndoBasis {
                source: outer.source.clone(),
                target,
            },
            sign((before * self.degree(inner)) % 2 != 0),
        )
    }

    fn unit(&self) -> Option<Chain<EndoBasis>> {
        Some(self.from_map(|c| Chain::basis(vec![c.to_string()])))
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<EndoBasis> {
        if rank > self.rank_bound || degree < self.degree_window.0 || degree > self.degree_window.1 {
            return Vec::new();
        }
        let labels: Vec<&str> = self.complex.cells().iter().map(|c| c.label.as_str()).collect();
        let mut tensors: Vec<Vec<String>> = vec![Vec::new()];
        for _ in 0..rank {
            tensors = tensors
                .into_iter()
                .flat_map(|t| {
                    labels.iter().map(move |l| {
                        let mut v = t.clone();
                        v.push(l.to_string());
                        v
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for c in self.complex.cells() {
            for t in &tensors {
                if self.tensor_degree(t) - c.degree == degree {
                    out.push(EndoBasis {
                        source: c.label.clone(),
                        target: t.clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }

    fn degrees(&self, rank: usize) -> Vec<i64> {
        let _ = rank;
        (self.degree_window.0..=self.degree_window.1).collect()
    }

    fn max_rank(&self) -> usize {
        self.rank_bound
    }
}

/// Value of the coefficient of `f` on `source ↦ target`.
pub fn coefficient(f: &Chain<EndoBasis>, source: &str, target: &[String]) -> BigInt {
    f.coeff(&EndoBasis {
        source: source.to_string(),
        target: target.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> Arc<FreeComplex> {
        Arc::new(
            FreeComplex::builder()
                .cell("v0", 0)
                .cell("v1", 0)
                .cell("e", 1)
                .boundary("e", [("v1", 1), ("v0", -1)])
                .build()
                .unwrap(),
        )
    }

    #[test]
    fn differential_squares_to_zero() {
        let o = endomorphism_operad(interval(), 2, (-1, 2));
        for r in 0..=2 {
            for d in -1..=2 {
                for b in o.basis(r, d) {
                    assert!(o.differential_chain(&o.differential(&b)).is_zero(), "{b}");
                }
            }
        }
    }

    #[test]
    fn unit_and_augmentation() {
        let c = interval();
        let o = endomorphism_operad(c.clone(), 3, (-1, 1));
        let id = o.unit().unwrap();
        assert!(o.differential_chain(&id).is_zero());
        let eps = o.augmentation();
        assert!(o.differential_chain(&eps).is_zero());
        for r in 0..=2 {
            for b in o.basis(r, 0) {
                let x = Chain::basis(b.clone());
                for i in 1..=r {
                    assert_eq!(o.compose_chains(&id, i, &x), x);
                }
                assert_eq!(o.compose_chains(&x, 1, &id), x);
            }
        }
        // ε inserted into the first slot of the identity of rank 1 is ε
        assert_eq!(o.compose_chains(&eps, 1, &id), eps);
    }
}
