//! Finitely generated abelian groups given by integer presentations.
//!
//! A group is `coker(R)` for an integer relation matrix `R`; elements are
//! coordinate vectors on the generators, and homomorphisms are matrices. The
//! exact-sequence toolkit (kernel, image, cokernel, free dual, torsion),
//! characters of finite groups and subgroup enumeration are built on Smith
//! and Hermite normal forms.

mod character;
mod group;
mod hom;
mod subgroups;

pub use character::{pair_character, Character};
pub use group::{FgAbGroup, GroupElt, Order};
pub(crate) use group::enumerate_box;
pub use hom::{dual_free, torsion_subgroup, DualFree, GroupHom};
pub use subgroups::{subgroups, DEFAULT_SUBGROUP_BOUND};
