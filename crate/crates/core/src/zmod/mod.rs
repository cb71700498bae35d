//! Exact chain-complex kernel over ℤ.

pub mod chain;
pub mod complex;
pub mod homology;
pub mod json;
pub mod map;
pub mod snf;
pub mod tensor;

pub use chain::{sign, sign_pow, Chain};
pub use complex::{Cell, Element, FreeComplex};
pub use homology::{
    cohomology_with_coefficients, homology, homology_all, kunneth, mapping_cone, AbelianGroup, MappingCone,
};
pub use map::GradedMap;
pub use tensor::{apply_tensor_map, desuspend, suspend, tensor, tensor_label, tensor_map, transpose, TensorComplex};
