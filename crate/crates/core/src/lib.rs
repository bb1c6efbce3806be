//! Braid orbits of generating tuples in finite permutation groups.
//!
//! The library computes, for a finite permutation group `G` and an ordered
//! list of conjugacy classes `C_1, ..., C_r`, the orbits of the braid group
//! (restricted to the subgroup preserving the class order) on the set of
//! tuples `(g_1, ..., g_r)` with `g_i` in `C_i` and product 1, taken modulo
//! simultaneous conjugation.  On top of the orbit enumeration it provides
//! the class-product accounting that certifies completeness, genus
//! computations for the curves parametrizing 4-branch-point covers, and a
//! census harness for genus-zero systems.
//!
//! Conventions used throughout: permutations act on points on the right,
//! products of permutations and of tuple entries read left to right, and
//! conjugation is `g^h = h^-1 g h`.

pub mod braid;
pub mod cli;
pub mod config;
pub mod count;
pub mod hurwitz;
pub mod orbit;
pub mod perm;

pub use braid::{BraidWord, ClassSignature, Tuple};
pub use config::Config;
pub use perm::{PermGroup, Permutation};
