//! Cobar constructions, twisting cochains, twisted tensor products, cobar rows
//! over lifted zig-zags and algebraic k-invariants.

pub mod coalgebra;
pub mod construction;
pub mod kinvariant;
pub mod row;

pub use coalgebra::Coalgebra;
pub use construction::{cobar, cobar_functor, pair_label, twisted_tensor, word_label, Cobar, TwistedTensor, TwistingCochain};
pub use row::{cobar_row, cobar_row_over, CobarRow};
pub use kinvariant::{k_invariant, KInvariant};
