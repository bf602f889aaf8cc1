//! Exact integer and lattice algorithms for abelian covers of normal varieties
//! and toric covers of complete toric varieties.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is computed with
//! arbitrary-precision integers; no floating point is used anywhere.
//!
//! Module map:
//!
//! * [`intlin`]: integer matrices, Smith and Hermite normal forms, integral
//!   linear systems and kernels.
//! * [`abgrp`]: finitely generated abelian groups given by presentations,
//!   homomorphisms, kernels, cokernels, characters and subgroup enumeration.
//! * [`fan`]: fans, finite-index sublattices and toric covers.
//! * [`classgroup`]: divisor class groups and the torsion cover.
//! * [`cover`]: branch data, the maximal abelian and toric covers, building
//!   data and the relations they satisfy.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod abgrp;
pub mod classgroup;
pub mod cover;
mod error;
pub mod fan;
pub mod intlin;

pub use error::{Error, Result};

pub use num_bigint::BigInt;
