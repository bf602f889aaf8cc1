//! Complete fans, finite-index sublattices and toric covers.
//!
//! A toric cover of the toric variety of `(N, Σ)` is given by a sublattice
//! `N' ⊆ N` of finite index with the same fan; its Galois group is `N/N'` and
//! it ramifies over the divisor of ray `r_i` with the least `d_i ≥ 1` such
//! that `d_i·r_i ∈ N'`.

mod completeness;
mod sublattice;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::intlin::{gcd_all, rank, solve, IntMatrix};
use crate::{Error, Result};

pub use sublattice::{
    quotient_group, ramification_orders, refine, sublattice_from_multiples, CoverSpec, Sublattice,
};

/// Divides a nonzero vector by the gcd of its entries.
pub fn primitive(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::InvalidInput("zero vector has no primitive generator".into()));
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// A fan in `N ⊗ R` with `N = Z^rank`.
///
/// Rays are primitive and pairwise distinct; their order is the global
/// indexing of the invariant divisors `D_i`. Cones are sets of ray indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<BigInt>>,
    cones: Vec<Vec<usize>>,
    complete: bool,
}

impl Fan {
    /// Validates and builds a fan.
    ///
    /// When `complete` is asserted, completeness is verified exactly in rank at
    /// most two; in higher rank the rays must span and a seeded sample of
    /// lattice points must each land in some cone.
    pub fn new(
        rank: usize,
        rays: Vec<Vec<BigInt>>,
        cones: Vec<Vec<usize>>,
        complete: bool,
    ) -> Result<Self> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::InvalidInput(alloc::format!(
                    "rays[{}] has {} coordinates, expected {}",
                    i,
                    r.len(),
                    rank
                )));
            }
            if r.iter().all(Zero::is_zero) {
                return Err(Error::InvalidInput(alloc::format!("rays[{}] is zero", i)));
            }
            if !gcd_all(r).is_one() {
                return Err(Error::InvalidInput(alloc::format!(
                    "rays[{}] is not primitive",
                    i
                )));
            }
        }
        let distinct: BTreeSet<&Vec<BigInt>> = rays.iter().collect();
        if distinct.len() != rays.len() {
            return Err(Error::InvalidInput("rays are not pairwise distinct".into()));
        }
        let mut covered = alloc::vec![false; rays.len()];
        let mut canonical_cones = Vec::with_capacity(cones.len());
        for (c, cone) in cones.iter().enumerate() {
            if cone.is_empty() {
                return Err(Error::InvalidInput(alloc::format!("cones[{}] is empty", c)));
            }
            let set: BTreeSet<usize> = cone.iter().copied().collect();
            if set.len() != cone.len() {
                return Err(Error::InvalidInput(alloc::format!(
                    "cones[{}] repeats a ray",
                    c
                )));
            }
            if let Some(&bad) = set.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidInput(alloc::format!(
                    "cones[{}] refers to ray {} but there are {} rays",
                    c,
                    bad,
                    rays.len()
                )));
            }
            let gens: Vec<Vec<BigInt>> = set.iter().map(|&i| rays[i].clone()).collect();
            let dim = rank_of(rank, &gens)?;
            // a cone of dimension at most two has exactly `dim` extremal rays
            if dim <= 2 && set.len() != dim {
                return Err(Error::InvalidInput(alloc::format!(
                    "cones[{}] has {} rays spanning a space of dimension {}",
                    c,
                    set.len(),
                    dim
                )));
            }
            for &i in &set {
                covered[i] = true;
            }
            canonical_cones.push(set.into_iter().collect());
        }
        if let Some(i) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidInput(alloc::format!(
                "rays[{}] belongs to no cone",
                i
            )));
        }
        let fan = Fan {
            rank,
            rays,
            cones: canonical_cones,
            complete,
        };
        if complete {
            completeness::verify(&fan)?;
        }
        Ok(fan)
    }

    /// Builds a fan from small integer rays.
    pub fn from_i64(
        rank: usize,
        rays: &[&[i64]],
        cones: &[&[usize]],
        complete: bool,
    ) -> Result<Self> {
        Fan::new(
            rank,
            rays.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cones.iter().map(|c| c.to_vec()).collect(),
            complete,
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub(crate) fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::NotComplete("the fan is not marked complete".into()))
        }
    }

    /// `rank x n` matrix with the rays as columns.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.rank, &self.rays).expect("rays have length rank")
    }

    /// Whether some lattice automorphism of `Z^rank` carries the rays of
    /// `self` onto those of `other` and the cones onto the cones.
    pub fn is_isomorphic(&self, other: &Fan) -> bool {
        if self.rank != other.rank
            || self.rays.len() != other.rays.len()
            || self.cones.len() != other.cones.len()
        {
            return false;
        }
        let Some(basis) = independent_subset(self.rank, &self.rays) else {
            return false;
        };
        let a = IntMatrix::from_columns(self.rank, &basis.iter().map(|&i| self.rays[i].clone()).collect::<Vec<_>>())
            .expect("rank-length rays");
        let target_cones: BTreeSet<Vec<usize>> = other.cones.iter().cloned().collect();
        let mut choice = Vec::with_capacity(basis.len());
        self.search_isomorphism(other, &basis, &a, &target_cones, &mut choice)
    }

    fn search_isomorphism(
        &self,
        other: &Fan,
        basis: &[usize],
        a: &IntMatrix,
        target_cones: &BTreeSet<Vec<usize>>,
        choice: &mut Vec<usize>,
    ) -> bool {
        if choice.len() == basis.len() {
            return self.try_map(other, a, choice, target_cones);
        }
        for j in 0..other.rays.len() {
            if choice.contains(&j) {
                continue;
            }
            choice.push(j);
            if self.search_isomorphism(other, basis, a, target_cones, choice) {
                return true;
            }
            choice.pop();
        }
        false
    }

    /// Tries the linear map sending the chosen basis rays of `self` to the rays
    /// `choice` of `other`.
    fn try_map(
        &self,
        other: &Fan,
        a: &IntMatrix,
        choice: &[usize],
        target_cones: &BTreeSet<Vec<usize>>,
    ) -> bool {
        let s = self.rank;
        let b = IntMatrix::from_columns(s, &choice.iter().map(|&j| other.rays[j].clone()).collect::<Vec<_>>())
            .expect("rank-length rays");
        // T·A = B  ⇔  Aᵀ·Tᵀ = Bᵀ, solved row by row of T
        let at = a.transpose();
        let mut t = IntMatrix::zeros(s, s);
        for k in 0..s {
            match solve(&at, b.row(k)) {
                Ok(Some(row)) => {
                    for (j, x) in row.into_iter().enumerate() {
                        t[(k, j)] = x;
                    }
                }
                _ => return false,
            }
        }
        if !t.determinant().map(|d| d.abs().is_one()).unwrap_or(false) {
            return false;
        }
        let mut perm = Vec::with_capacity(self.rays.len());
        for r in &self.rays {
            let image = t.mul_vec(r).expect("rank-length ray");
            match other.rays.iter().position(|x| *x == image) {
                Some(j) => perm.push(j),
                None => return false,
            }
        }
        self.cones.iter().all(|c| {
            let mut mapped: Vec<usize> = c.iter().map(|&i| perm[i]).collect();
            mapped.sort_unstable();
            target_cones.contains(&mapped)
        })
    }
}

fn rank_of(s: usize, vectors: &[Vec<BigInt>]) -> Result<usize> {
    Ok(rank(&IntMatrix::from_columns(s, vectors)?))
}

/// Greedy choice of `s` linearly independent vectors, if they exist.
fn independent_subset(s: usize, vectors: &[Vec<BigInt>]) -> Option<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        cols.push(v.clone());
        if rank_of(s, &cols).ok()? == cols.len() {
            chosen.push(i);
        } else {
            cols.pop();
        }
        if chosen.len() == s {
            return Some(chosen);
        }
    }
    (s == 0).then(Vec::new)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Fan;

    pub fn p1() -> Fan {
        Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]], true).unwrap()
    }

    pub fn p2() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 0]], true).unwrap()
    }

    pub fn p1xp1() -> Fan {
        Fan::from_i64(
            2,
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
            &[&[0, 2], &[2, 1], &[1, 3], &[3, 0]],
            true,
        )
        .unwrap()
    }

    pub fn hirzebruch(a: i64) -> Fan {
        Fan::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, a], &[0, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
            true,
        )
        .unwrap()
    }

    pub fn square() -> Fan {
        Fan::from_i64(
            2,
            &[&[1, 1], &[-1, 1], &[-1, -1], &[1, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
            true,
        )
        .unwrap()
    }

    pub fn p3() -> Fan {
        Fan::from_i64(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
            true,
        )
        .unwrap()
    }
}
