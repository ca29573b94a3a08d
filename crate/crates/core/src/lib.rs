//! Automorphism groups of rational circulant graphs.
//!
//! A rational circulant `Cay(Z_n, S)` generates a rational Schur ring,
//! which is determined by a sublattice of the divisor lattice L(n). That
//! lattice corresponds to an increasing weighted poset, and the automorphism
//! group of the graph is the generalized wreath product of symmetric groups
//! over that poset. This crate computes every step of the chain, produces
//! explicit generators on `Z_n`, and checks the result against brute force.

pub mod arith;
pub mod error;
pub mod gwp;
pub mod lattice;
pub mod oracle;
pub mod perm;
pub mod pipeline;
pub mod poset;
pub mod report;
pub mod schur;
pub mod zn;

pub use arith::Factored;
pub use error::{Error, Result};
pub use gwp::GeneralizedWreathProduct;
pub use lattice::DivisorLattice;
pub use perm::{Permutation, PermutationGroup};
pub use poset::{PartitionOfZn, WeightedPoset};
pub use schur::{RationalSRing, SchurRing};
pub use zn::ZnSubset;
