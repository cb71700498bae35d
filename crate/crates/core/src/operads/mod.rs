//! Operads in chain complexes with partial compositions.
//!
//! Orientation: `compose(s1, i, s2)` is `S₁ ∘ᵢ S₂`, the element `S₁` inserted
//! into slot `i` of `S₂`; rank is `rank S₁ + rank S₂ − 1` and degrees add.

pub mod check;
pub mod endo;
pub mod morphism;
pub mod symmetric;
pub mod tensor;
pub mod trivial;

use crate::zmod::Chain;
use std::fmt::{Debug, Display};
use std::hash::Hash;

pub use check::{check_leibniz, check_operad_identities, IdentityReport, VariantReport};
pub use endo::{endomorphism_operad, EndoBasis, EndomorphismOperad};
pub use morphism::{augmentation_morphism, check_morphism, coalgebra_as_morphism, MorphismReport};
pub use symmetric::{symmetric_construct, SymmetricConstruct};
pub use tensor::{tensor_operad, Pair, TensorOperad};
pub use trivial::{trivial_operad, TrivialOperad};

pub trait Operad: Sync {
    type Basis: Clone + Ord + Eq + Hash + Debug + Display + Send + Sync;

    fn name(&self) -> String;
    fn rank(&self, b: &Self::Basis) -> usize;
    fn degree(&self, b: &Self::Basis) -> i64;
    fn differential(&self, b: &Self::Basis) -> Chain<Self::Basis>;
    /// `inner ∘ᵢ outer`: `inner` inserted into slot `i` (1-based) of `outer`.
    fn compose(&self, inner: &Self::Basis, i: usize, outer: &Self::Basis) -> Chain<Self::Basis>;
    fn unit(&self) -> Option<Chain<Self::Basis>>;
    /// Basis of the `(rank, degree)` component (empty outside stored bounds).
    fn basis(&self, rank: usize, degree: i64) -> Vec<Self::Basis>;
    /// Degrees with a nonzero component at this rank, within stored bounds.
    fn degrees(&self, rank: usize) -> Vec<i64>;
    fn max_rank(&self) -> usize;

    fn compose_chains(&self, a: &Chain<Self::Basis>, i: usize, b: &Chain<Self::Basis>) -> Chain<Self::Basis> {
        let mut out = Chain::zero();
        for (x, p) in a.iter() {
            for (y, q) in b.iter() {
                out.add_scaled(&self.compose(x, i, y), &(p * q));
            }
        }
        out
    }

    fn differential_chain(&self, a: &Chain<Self::Basis>) -> Chain<Self::Basis> {
        a.flat_map(|x| self.differential(x))
    }
}
