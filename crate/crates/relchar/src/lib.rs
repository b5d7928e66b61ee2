//! Exact-arithmetic differential character groups of finite simplicial pairs.
//!
//! Given finite simplicial complexes `A`, `M` and a simplicial map
//! `rho: A -> M`, this crate builds the cochain complexes whose homology
//! realizes the relative character groups, computes those groups in the
//! canonical form `Q^a + (Q/Z)^b + Z^c + torsion`, and machine-verifies the
//! exact sequences relating them. All arithmetic is exact: integers and
//! rationals of arbitrary precision, never floating point.

pub mod linalg;
pub mod demo;
pub mod diffchar;
pub mod forms;
pub mod sequences;
pub mod simplicial;
pub mod mixed;

pub use linalg::{Int, Rat};
