use alloc::vec::Vec;

use crate::intlin::{kernel_basis, lattice_basis, IntMatrix};
use crate::{Error, Result};

use super::{FgAbGroup, GroupElt};

/// A homomorphism between presented groups, given by its action on
/// generators: column `j` of `matrix` is the image of source generator `j`.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks shapes and that every source relation maps into the span of
    /// the target relations.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.gens() || matrix.cols() != source.gens() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{}x{} matrix for a map from {} to {} generators",
                matrix.rows(),
                matrix.cols(),
                source.gens(),
                target.gens()
            )));
        }
        let images = matrix.checked_mul(source.relations())?;
        for j in 0..images.cols() {
            if !target.is_zero(&GroupElt::new(images.column(j)))? {
                return Err(Error::IllDefinedHom(alloc::format!(
                    "source relation {} does not map to zero",
                    j
                )));
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(group: &FgAbGroup) -> Self {
        GroupHom {
            source: group.clone(),
            target: group.clone(),
            matrix: IntMatrix::identity(group.gens()),
        }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.gens(), source.gens()),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, a: &GroupElt) -> Result<GroupElt> {
        self.source.check(a)?;
        Ok(GroupElt::new(self.matrix.mul_vec(a.coords())?))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target.gens() != other.source.gens() {
            return Err(Error::DimensionMismatch(
                "composition of maps with different middle groups".into(),
            ));
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.checked_mul(&self.matrix)?,
        })
    }

    /// True when every generator maps to zero.
    pub fn is_zero(&self) -> Result<bool> {
        for j in 0..self.matrix.cols() {
            if !self.target.is_zero(&GroupElt::new(self.matrix.column(j)))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Basis (as columns) of `{x ∈ Z^k_source : M·x ∈ span(R_target)}`.
    fn preimage_of_zero(&self) -> Result<IntMatrix> {
        let stacked = self.matrix.hstack(self.target.relations())?;
        let k = kernel_basis(&stacked);
        Ok(lattice_basis(&k.top_rows(self.source.gens())))
    }

    /// The kernel, returned as its inclusion into the source.
    pub fn kernel(&self) -> Result<GroupHom> {
        let gens = self.preimage_of_zero()?;
        // relations among the kernel generators: c with gens·c ∈ span(R_source)
        let stacked = gens.hstack(self.source.relations())?;
        let rel = kernel_basis(&stacked).top_rows(gens.cols());
        Ok(GroupHom {
            source: FgAbGroup::new(rel),
            target: self.source.clone(),
            matrix: gens,
        })
    }

    /// The image, returned as its inclusion into the target. The image group
    /// is presented on the images of the source generators.
    pub fn image(&self) -> Result<GroupHom> {
        let stacked = self.matrix.hstack(self.target.relations())?;
        let rel = kernel_basis(&stacked).top_rows(self.source.gens());
        Ok(GroupHom {
            source: FgAbGroup::new(rel),
            target: self.target.clone(),
            matrix: self.matrix.clone(),
        })
    }

    /// The cokernel, returned as the quotient map from the target.
    pub fn cokernel(&self) -> Result<GroupHom> {
        let rel = self.target.relations().hstack(&self.matrix)?;
        Ok(GroupHom {
            source: self.target.clone(),
            target: FgAbGroup::new(rel),
            matrix: IntMatrix::identity(self.target.gens()),
        })
    }

    pub fn is_injective(&self) -> Result<bool> {
        if self.source.is_trivial() {
            return Ok(true);
        }
        Ok(self.kernel()?.source().is_trivial())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.cokernel()?.target().is_trivial())
    }
}

/// `Hom(A, Z) ≅ Z^r` together with its evaluation pairing against `A`.
#[derive(Clone, Debug)]
pub struct DualFree {
    /// The free group `Z^r`, `r` the free rank of `A`.
    pub dual: FgAbGroup,
    /// `r x gens(A)` matrix: row `j` evaluates the `j`-th dual basis vector
    /// on the presentation generators of `A`.
    pub pairing: IntMatrix,
}

impl DualFree {
    /// Values of every dual basis vector on `a`.
    pub fn pair(&self, a: &GroupElt) -> Result<Vec<num_bigint::BigInt>> {
        self.pairing.mul_vec(a.coords())
    }
}

/// The free dual of `A`; torsion pairs to zero.
pub fn dual_free(a: &FgAbGroup) -> DualFree {
    DualFree {
        dual: FgAbGroup::free(a.free_rank()),
        pairing: a.free_coordinate_rows(),
    }
}

/// The torsion subgroup as an inclusion into `A`, presented on the cyclic
/// factors of the invariant-factor decomposition.
pub fn torsion_subgroup(a: &FgAbGroup) -> GroupHom {
    let source = FgAbGroup::from_invariant_factors(&a.invariant_factors(), 0)
        .expect("invariant factors are at least two");
    GroupHom {
        source,
        target: a.clone(),
        matrix: a.torsion_generators(),
    }
}
