//! Divisor class groups of complete toric varieties, and of arbitrary normal
//! varieties when the group and the divisor classes are supplied directly.
//!
//! For a fan with rays `r_1, …, r_n` in `N = Z^s`, the class group is the
//! cokernel of `M → Z^n`, `m ↦ (⟨m, r_i⟩)_i`. It is kept in that
//! presentation, so the class of `D_i` is the `i`-th standard generator.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abgrp::{torsion_subgroup, FgAbGroup, GroupElt, GroupHom};
use crate::fan::{refine, CoverSpec, Fan, Sublattice};
use crate::intlin::IntMatrix;
use crate::{Error, Result};

/// A class group together with the classes of the divisors `D_1, …, D_n`.
#[derive(Clone, Debug)]
pub struct ClassGroupData {
    fan: Option<Fan>,
    projection: GroupHom,
    divisor_classes: Vec<GroupElt>,
}

impl ClassGroupData {
    /// Class group supplied by hand: `Z_{f_1} ⊕ … ⊕ Z_{f_k} ⊕ Z^free_rank` on
    /// `k + free_rank` generators (factors equal to one give trivial
    /// generators), and one coordinate vector per divisor.
    pub fn abstract_mode(
        factors: &[BigInt],
        free_rank: usize,
        classes: &[Vec<BigInt>],
    ) -> Result<Self> {
        if let Some(i) = factors.iter().position(|f| f <= &BigInt::zero()) {
            return Err(Error::InvalidInput(alloc::format!(
                "cl.invariant_factors[{}] must be at least 1",
                i
            )));
        }
        let mut orders = factors.to_vec();
        orders.extend(core::iter::repeat_n(BigInt::zero(), free_rank));
        let cl = FgAbGroup::cyclic_sum(&orders)?;
        for (i, c) in classes.iter().enumerate() {
            if c.len() != cl.gens() {
                return Err(Error::DimensionMismatch(alloc::format!(
                    "divisor_classes[{}] has {} coordinates, expected {}",
                    i,
                    c.len(),
                    cl.gens()
                )));
            }
        }
        let n = classes.len();
        let matrix = IntMatrix::from_columns(cl.gens(), classes)?;
        let projection = GroupHom::new(FgAbGroup::free(n), cl, matrix)?;
        Ok(ClassGroupData {
            fan: None,
            divisor_classes: classes.iter().cloned().map(GroupElt::new).collect(),
            projection,
        })
    }

    /// The fan, in toric mode.
    pub fn fan(&self) -> Option<&Fan> {
        self.fan.as_ref()
    }

    /// `Cl(Y)`.
    pub fn cl(&self) -> &FgAbGroup {
        self.projection.target()
    }

    pub fn divisor_count(&self) -> usize {
        self.divisor_classes.len()
    }

    pub fn divisor_classes(&self) -> &[GroupElt] {
        &self.divisor_classes
    }

    /// `⊕ Z·D_i → Cl(Y)`.
    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    /// The class `Σ c_i·[D_i]`.
    pub fn combination(&self, coeffs: &[BigInt]) -> Result<GroupElt> {
        self.projection.apply(&GroupElt::new(coeffs.to_vec()))
    }
}

/// `M → Z^n`, `m ↦ (⟨m, r_i⟩)_i`; its matrix has the rays as rows.
pub fn ray_pairing(fan: &Fan) -> GroupHom {
    GroupHom::new(
        FgAbGroup::free(fan.rank()),
        FgAbGroup::free(fan.ray_count()),
        fan.ray_matrix().transpose(),
    )
    .expect("maps between free groups are well defined")
}

/// The class group of the toric variety of a complete fan.
pub fn class_group(fan: &Fan) -> Result<ClassGroupData> {
    fan.require_complete()?;
    let n = fan.ray_count();
    let cl = FgAbGroup::new(fan.ray_matrix().transpose());
    let projection = GroupHom::new(FgAbGroup::free(n), cl, IntMatrix::identity(n))?;
    Ok(ClassGroupData {
        fan: Some(fan.clone()),
        divisor_classes: (0..n).map(|i| projection.source().generator(i)).collect(),
        projection,
    })
}

/// Torsion of the class group computed two ways: directly, and as the
/// quotient `N/⟨r_i⟩` of the lattice by the sublattice the rays generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionReport {
    pub torsion_free: bool,
    /// Invariant factors of `Tors Cl(Y)`.
    pub class_group_torsion: Vec<BigInt>,
    /// Invariant factors of `N/⟨r_i⟩`.
    pub ray_quotient: Vec<BigInt>,
}

pub fn torsion_check(fan: &Fan) -> Result<TorsionReport> {
    let data = class_group(fan)?;
    let class_group_torsion = torsion_subgroup(data.cl()).source().invariant_factors();
    let quotient = FgAbGroup::new(fan.ray_matrix());
    if !quotient.is_finite() {
        return Err(Error::Internal("rays of a complete fan do not span".into()));
    }
    let ray_quotient = quotient.invariant_factors();
    if class_group_torsion != ray_quotient {
        return Err(Error::Internal(alloc::format!(
            "Tors Cl has invariant factors {:?} but N/<r_i> has {:?}",
            class_group_torsion,
            ray_quotient
        )));
    }
    Ok(TorsionReport {
        torsion_free: class_group_torsion.is_empty(),
        class_group_torsion,
        ray_quotient,
    })
}

/// The toric cover given by the sublattice `⟨r_i⟩`. Its group is the torsion
/// of the class group and the covering variety has torsion-free class group.
pub fn torsion_cover(fan: &Fan) -> Result<CoverSpec> {
    let report = torsion_check(fan)?;
    let sub = Sublattice::from_generators(&fan.ray_matrix())?;
    let spec = CoverSpec::new(fan, sub)?;
    if spec.galois_group().invariant_factors() != report.class_group_torsion {
        return Err(Error::Internal(
            "group of the torsion cover differs from Tors Cl".into(),
        ));
    }
    let covering = refine(fan, spec.sublattice())?;
    if !torsion_check(&covering)?.torsion_free {
        return Err(Error::Internal(
            "class group of the torsion cover still has torsion".into(),
        ));
    }
    Ok(spec)
}
