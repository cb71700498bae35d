//! Finite simplicial sets, normalized chains, the canonical m-structure and
//! mod-2 Steenrod squares.

pub mod fixtures;
pub mod canonical;
pub mod em;
pub mod json;
pub mod surjection;
pub mod sset;
pub mod steenrod;
pub mod zigzag;

pub use fixtures::{
    cp2_chains, example_b, mcoalgebra_fixture, minimal_sphere, moore, rp2, simplicial_fixture, standard_simplex, torus,
    MCOALGEBRA_FIXTURES, SIMPLICIAL_FIXTURES,
};
pub use json::{simplicial_set_from_json, simplicial_set_to_json};
pub use sset::{product, FaceSpec, NondegSimplex, Simplex, SimplicialMap, SimplicialSet};
pub use canonical::{canonical_mstructure, SimplicialStructure};
pub use zigzag::{
    build_simplicial_zigzag, collapse_equivalence, wrapping_map, BaseMap, colouring_map, simplex_label, simplicial_zigzag_from_json, Move,
    SimplicialComplex, SimplicialZigZag,
};
pub use steenrod::{coboundary, cup_i, steenrod_square, Cochain, Mod2Cohomology};
pub use em::em_space;
