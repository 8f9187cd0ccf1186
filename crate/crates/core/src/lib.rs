//! Computational finite group theory at desk scale: explicit groups,
//! subgroup lattices, generalized Fitting subgroups, formations and
//! K-𝔉-subnormality.

pub mod arith;
pub mod canonical;
pub mod error;
pub mod formations;
pub mod kernel;
pub mod lattice;
pub mod par;
pub mod schmidt;
pub mod subnormality;
#[cfg(test)]
mod testing;

pub use error::{Error, Result};
pub use kernel::{FiniteGroup, Permutation, Subgroup};
pub use par::Execution;
