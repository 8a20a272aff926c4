//! Combinatorics of N∞ operads for finite groups: subgroup lattices,
//! G-sets, characters over a prime field, universes, indexing systems,
//! operad admissibility and Burnside-level transfers and norms.

pub mod characters;
pub mod error;
pub mod group;
pub mod gset;
pub mod indexing;
pub mod mackey;
pub mod operad;
pub mod perm;
pub mod universe;

pub use error::{Error, Result};
