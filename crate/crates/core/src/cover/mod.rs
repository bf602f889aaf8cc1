//! Abelian covers with prescribed branching.
//!
//! Given divisors `D_1, …, D_n` on `Y` and orders `d_1, …, d_n`, the map
//! `φ: Cl(Y)^∨ → ⊕ Z_{d_i}` pairs each dual vector with the `[D_i]`. Its image
//! is `K_min` and the cokernel is `G_max`, the Galois group of the largest
//! totally ramified abelian cover branched on the `D_i` with those orders.
//! Such a cover exists when each `Z_{d_i} → G_max` is injective (and the
//! class group has no `d`-torsion, `d = lcm d_i`).
//!
//! On toric varieties the same covers come from sublattices: see
//! [`existence_toric`], [`max_toric_cover`] and [`cross_check_abelian_toric`].

mod building;
mod toric;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::abgrp::{dual_free, FgAbGroup, GroupElt, GroupHom, Order};
use crate::classgroup::ClassGroupData;
use crate::intlin::{lattice_basis, lcm_all, IntMatrix};
use crate::{Error, Result};

pub use building::{
    chi_bar, epsilon, reduced_relations_solvable, solve_building_data, verify_fundamental_relations, AbelianCoverData,
    BuildingData, Violation,
};
pub use toric::{
    cross_check_abelian_toric, enumerate_covers, existence_toric, max_toric_cover,
    CrossCheckReport,
};

/// Branching orders `d_i ≥ 1`, indexed like the divisors (or rays).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchData {
    orders: Vec<BigInt>,
    lcm: BigInt,
}

impl BranchData {
    pub fn new(orders: Vec<BigInt>) -> Result<Self> {
        if let Some(i) = orders.iter().position(|d| !d.is_positive()) {
            return Err(Error::InvalidInput(alloc::format!(
                "order at divisor {} is {}, expected at least 1",
                i,
                orders[i]
            )));
        }
        let lcm = lcm_all(&orders);
        Ok(BranchData { orders, lcm })
    }

    pub fn from_i64(orders: &[i64]) -> Result<Self> {
        BranchData::new(orders.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// `d = lcm(d_1, …, d_n)`.
    pub fn lcm(&self) -> &BigInt {
        &self.lcm
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// `⊕ Z_{d_i}`, one generator per divisor.
    pub fn cyclic_sum(&self) -> FgAbGroup {
        FgAbGroup::cyclic_sum(&self.orders).expect("orders are positive")
    }
}

fn check_lengths(cl: &ClassGroupData, branch: &BranchData) -> Result<()> {
    if cl.divisor_count() != branch.len() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "{} orders for {} divisors",
            branch.len(),
            cl.divisor_count()
        )));
    }
    Ok(())
}

/// `φ: Cl(Y)^∨ → ⊕ Z_{d_i}`. Row `i` holds the pairings of the dual basis
/// with `[D_i]`, reduced mod `d_i`.
pub fn phi(cl: &ClassGroupData, branch: &BranchData) -> Result<GroupHom> {
    check_lengths(cl, branch)?;
    let dual = dual_free(cl.cl());
    let r = dual.dual.gens();
    let n = branch.len();
    let mut m = IntMatrix::zeros(n, r);
    for (i, (class, d)) in cl.divisor_classes().iter().zip(branch.orders()).enumerate() {
        for (j, v) in dual.pair(class)?.into_iter().enumerate() {
            m[(i, j)] = v.mod_floor(d);
        }
    }
    GroupHom::new(dual.dual, branch.cyclic_sum(), m)
}

/// The verdict on existence of the maximal cover, with the groups involved.
#[derive(Clone, Debug)]
pub struct ExistenceReport {
    pub branch: BranchData,
    pub k_min: FgAbGroup,
    /// `K_min → ⊕ Z_{d_i}`.
    pub k_min_inclusion: GroupHom,
    pub g_max: FgAbGroup,
    /// `⊕ Z_{d_i} → G_max`.
    pub projection: GroupHom,
    /// Images `g_i` of `1 ∈ Z_{d_i}` in `G_max`.
    pub branch_elements: Vec<GroupElt>,
    pub per_divisor_injective: Vec<bool>,
    /// `Cl(Y)[d] = 0`.
    pub torsion_condition_ok: bool,
    pub exists: bool,
}

impl ExistenceReport {
    /// Divisors `i` where `Z_{d_i} → G_max` is not injective.
    pub fn failing_divisors(&self) -> Vec<usize> {
        self.per_divisor_injective
            .iter()
            .enumerate()
            .filter(|(_, ok)| !**ok)
            .map(|(i, _)| i)
            .collect()
    }

    /// `G_max` with its branch elements, when the cover exists.
    pub fn max_cover_data(&self) -> Result<AbelianCoverData> {
        if !self.exists {
            return Err(self.nonexistence());
        }
        AbelianCoverData::new(
            self.g_max.clone(),
            self.branch_elements.clone(),
            self.branch.clone(),
        )
    }

    pub(crate) fn nonexistence(&self) -> Error {
        let divisors = self.failing_divisors();
        if divisors.is_empty() && !self.torsion_condition_ok {
            Error::TorsionObstruction(alloc::format!("{}", self.branch.lcm()))
        } else {
            Error::CoverDoesNotExist { divisors }
        }
    }
}

/// `K_min`, `G_max` and the existence test for the maximal cover.
pub fn gmax(cl: &ClassGroupData, branch: &BranchData) -> Result<ExistenceReport> {
    let phi = phi(cl, branch)?;
    let k_min_inclusion = phi.image()?;
    let projection = k_min_inclusion.cokernel()?;
    let g_max = projection.target().clone();
    let mut branch_elements = Vec::with_capacity(branch.len());
    let mut per_divisor_injective = Vec::with_capacity(branch.len());
    for (i, d) in branch.orders().iter().enumerate() {
        let g = projection.apply(&projection.source().generator(i))?;
        let injective = match g_max.element_order(&g)? {
            Order::Finite(o) => &o == d,
            Order::Infinite => false,
        };
        per_divisor_injective.push(injective);
        branch_elements.push(g);
    }
    let torsion_condition_ok = cl.cl().has_no_torsion_of(branch.lcm());
    let exists = torsion_condition_ok && per_divisor_injective.iter().all(|&b| b);
    Ok(ExistenceReport {
        branch: branch.clone(),
        k_min: k_min_inclusion.source().clone(),
        k_min_inclusion,
        g_max,
        projection,
        branch_elements,
        per_divisor_injective,
        torsion_condition_ok,
        exists,
    })
}

/// Hermite basis of the preimage in `Z^gens` of the image of an inclusion;
/// two subgroups of the same group are equal iff these agree.
pub(crate) fn subgroup_lattice(inclusion: &GroupHom) -> Result<IntMatrix> {
    Ok(lattice_basis(
        &inclusion.matrix().hstack(inclusion.target().relations())?,
    ))
}
