//! Exact integer linear algebra: Smith and Hermite normal forms, integral
//! solutions of linear systems and integer kernels.

mod matrix;
mod normal_form;

pub use matrix::IntMatrix;
pub use normal_form::{
    hnf, hnf_with_transform, kernel_basis, lattice_basis, rank, snf, solve, solve_with, SnfResult,
};

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Converts small integers to a big-integer vector.
pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Nonnegative gcd of the entries; zero for the zero vector.
pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Least common multiple of the entries; one for an empty list.
pub fn lcm_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::from(1), |l, x| l.lcm(x))
}
