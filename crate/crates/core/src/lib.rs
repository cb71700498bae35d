//! Chain-level m-structures: exact complexes over ℤ, bar resolutions of the
//! symmetric groups, operads, higher diagonals on simplicial chains, cobar
//! constructions and twisted tensor products.

pub mod cobar;
pub mod error;
pub mod mcoalg;
pub mod operads;
pub mod report;
pub mod simpchain;
pub mod symbar;
pub mod zmod;

pub use error::{Error, Result};
