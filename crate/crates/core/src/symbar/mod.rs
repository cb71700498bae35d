//! Symmetric groups and the normalized bar resolutions `RS_n`.

pub mod bar;
pub mod perm;

pub use bar::{bar_resolution, generators, words, BarResolution, BarWord};
pub use perm::{permute_factors, Permutation};
