//! m-structures: structure maps, their checkers, products, strict morphisms,
//! contractions and zig-zag lifting.

pub mod structure;

pub use structure::{format_tensors, map_tensors, MCoalgebra, StructureMaps, TableStructure, Tensor};
pub mod checks;

pub use checks::{
    check_mstructure, check_weak_coherence, check_weak_coherence_all, homotopy_commutativity, verify_coherence_identity,
};
pub mod json;

pub use json::{mcoalgebra_from_json, mcoalgebra_to_json, RawTable};
pub mod morphism;

pub use morphism::{Contraction, ElementaryEquivalence, StrictMorphism};
pub mod zigzag;

pub use zigzag::{zigzag_lift, LiftColumn, Step, ZigZag, ZigZagLift};
pub mod product;

pub use product::{bar_diagonal, product_mstructure, ProductStructure};
