use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::abgrp::{FgAbGroup, GroupElt, GroupHom, Order};
use crate::intlin::{lattice_basis, IntMatrix};
use crate::{Error, Result};

use super::{primitive, Fan};

/// A finite-index sublattice `N' ⊆ Z^s`, stored by its Hermite basis
/// (lower triangular, positive diagonal), so equal lattices compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    basis: IntMatrix,
}

impl Sublattice {
    /// The lattice spanned by the columns of `gens`, which must have full rank.
    pub fn from_generators(gens: &IntMatrix) -> Result<Self> {
        let s = gens.rows();
        let basis = lattice_basis(gens);
        if basis.cols() != s {
            return Err(Error::InvalidInput(alloc::format!(
                "generators span a lattice of rank {} in Z^{}; finite index needs rank {}",
                basis.cols(),
                s,
                s
            )));
        }
        Ok(Sublattice { basis })
    }

    /// `N` itself.
    pub fn full(s: usize) -> Self {
        Sublattice {
            basis: IntMatrix::identity(s),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.basis.rows()
    }

    /// Hermite basis, one column per basis vector.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// `[N : N']`.
    pub fn index(&self) -> BigInt {
        self.basis.diagonal().iter().product()
    }

    /// Coordinates of `v` on the basis, if `v ∈ N'`.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let s = self.ambient_rank();
        if v.len() != s {
            return Err(Error::DimensionMismatch(alloc::format!(
                "vector of length {} in Z^{}",
                v.len(),
                s
            )));
        }
        let mut x: Vec<BigInt> = Vec::with_capacity(s);
        for i in 0..s {
            let mut rest = v[i].clone();
            for (j, xj) in x.iter().enumerate() {
                rest -= &self.basis[(i, j)] * xj;
            }
            let (q, r) = rest.div_rem(&self.basis[(i, i)]);
            if !r.is_zero() {
                return Ok(None);
            }
            x.push(q);
        }
        Ok(Some(x))
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// Whether `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Sublattice) -> Result<bool> {
        for c in self.basis.columns() {
            if !other.contains(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `N/N'` with the projection from `N = Z^s`.
pub fn quotient_group(sub: &Sublattice) -> GroupHom {
    let s = sub.ambient_rank();
    GroupHom::new(
        FgAbGroup::free(s),
        FgAbGroup::new(sub.basis.clone()),
        IntMatrix::identity(s),
    )
    .expect("projection from a free group is well defined")
}

/// For each ray `r_i`, the least `d_i ≥ 1` with `d_i·r_i ∈ N'`.
pub fn ramification_orders(fan: &Fan, sub: &Sublattice) -> Result<Vec<BigInt>> {
    check_rank(fan, sub)?;
    let q = quotient_group(sub);
    fan.rays()
        .iter()
        .map(|r| match q.target().element_order(&GroupElt::new(r.clone()))? {
            Order::Finite(d) => Ok(d),
            Order::Infinite => Err(Error::Internal(
                "finite-index quotient has an element of infinite order".into(),
            )),
        })
        .collect()
}

/// The sublattice generated by the vectors `d_i·r_i`.
pub fn sublattice_from_multiples(fan: &Fan, orders: &[BigInt]) -> Result<Sublattice> {
    if orders.len() != fan.ray_count() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "{} orders for {} rays",
            orders.len(),
            fan.ray_count()
        )));
    }
    if let Some(i) = orders.iter().position(|d| !d.is_positive()) {
        return Err(Error::InvalidInput(alloc::format!(
            "order at divisor {} is not positive",
            i
        )));
    }
    let cols: Vec<Vec<BigInt>> = fan
        .rays()
        .iter()
        .zip(orders)
        .map(|(r, d)| r.iter().map(|x| x * d).collect())
        .collect();
    Sublattice::from_generators(&IntMatrix::from_columns(fan.rank(), &cols)?).map_err(|_| {
        Error::InvalidInput("the scaled rays do not span a finite-index sublattice".into())
    })
}

/// The fan of the covering variety: the same cones, with each ray written in
/// coordinates of the basis of `N'` and made primitive there.
pub fn refine(fan: &Fan, sub: &Sublattice) -> Result<Fan> {
    let orders = ramification_orders(fan, sub)?;
    let mut rays = Vec::with_capacity(fan.ray_count());
    for (r, d) in fan.rays().iter().zip(&orders) {
        let scaled: Vec<BigInt> = r.iter().map(|x| x * d).collect();
        let x = sub
            .coordinates(&scaled)?
            .ok_or_else(|| Error::Internal("d_i·r_i is not in the sublattice".into()))?;
        rays.push(primitive(&x)?);
    }
    Fan::new(fan.rank(), rays, fan.cones().to_vec(), fan.is_complete())
}

fn check_rank(fan: &Fan, sub: &Sublattice) -> Result<()> {
    if fan.rank() != sub.ambient_rank() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "fan of rank {} with a sublattice of Z^{}",
            fan.rank(),
            sub.ambient_rank()
        )));
    }
    Ok(())
}

/// A toric cover: the fan `Σ` of `Y` together with `N' ⊆ N`.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    fan: Fan,
    sublattice: Sublattice,
    projection: GroupHom,
    ram_orders: Vec<BigInt>,
}

impl CoverSpec {
    pub fn new(fan: &Fan, sublattice: Sublattice) -> Result<Self> {
        let ram_orders = ramification_orders(fan, &sublattice)?;
        let projection = quotient_group(&sublattice);
        if projection.target().order() != Some(sublattice.index()) {
            return Err(Error::Internal("|N/N'| differs from the index".into()));
        }
        Ok(CoverSpec {
            fan: fan.clone(),
            sublattice,
            projection,
            ram_orders,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn sublattice(&self) -> &Sublattice {
        &self.sublattice
    }

    /// `G = N/N'`.
    pub fn galois_group(&self) -> &FgAbGroup {
        self.projection.target()
    }

    /// `N → N/N'`.
    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    pub fn ram_orders(&self) -> &[BigInt] {
        &self.ram_orders
    }

    /// Images of the rays in `N/N'`; their orders are the ramification orders.
    pub fn branch_elements(&self) -> Vec<GroupElt> {
        self.fan
            .rays()
            .iter()
            .map(|r| self.projection.apply(&GroupElt::new(r.clone())).expect("rank-length ray"))
            .collect()
    }

    /// Fan of the covering toric variety.
    pub fn covering_fan(&self) -> Result<Fan> {
        refine(&self.fan, &self.sublattice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::fixtures::*;
    use crate::intlin::big_vec;

    fn lattice(cols: &[&[i64]]) -> Sublattice {
        let s = cols[0].len();
        let c: Vec<Vec<BigInt>> = cols.iter().map(|c| big_vec(c)).collect();
        Sublattice::from_generators(&IntMatrix::from_columns(s, &c).unwrap()).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let g = quotient_group(&lattice(&[&[2, 0], &[0, 2]]));
        assert_eq!(g.target().invariant_factors(), big_vec(&[2, 2]));
        let g = quotient_group(&lattice(&[&[1, 1], &[1, -1]]));
        assert_eq!(g.target().invariant_factors(), big_vec(&[2]));
        assert!(quotient_group(&Sublattice::full(2)).target().is_trivial());
    }

    #[test]
    fn ramification_examples() {
        assert_eq!(
            ramification_orders(&p2(), &Sublattice::full(2)).unwrap(),
            big_vec(&[1, 1, 1])
        );
        assert_eq!(
            ramification_orders(&p1(), &lattice(&[&[2]])).unwrap(),
            big_vec(&[2, 2])
        );
        assert_eq!(
            ramification_orders(&p2(), &lattice(&[&[2, 0], &[0, 2]])).unwrap(),
            big_vec(&[2, 2, 2])
        );
    }

    #[test]
    fn multiples_examples() {
        assert_eq!(
            sublattice_from_multiples(&p2(), &big_vec(&[1, 1, 1])).unwrap(),
            Sublattice::full(2)
        );
        assert_eq!(
            sublattice_from_multiples(&p1(), &big_vec(&[2, 2])).unwrap(),
            lattice(&[&[2]])
        );
        let s = sublattice_from_multiples(&p2(), &big_vec(&[2, 3, 6])).unwrap();
        assert_eq!(s.index(), BigInt::from(6));
        assert!(sublattice_from_multiples(&p2(), &big_vec(&[1, 0, 1])).is_err());
        assert!(sublattice_from_multiples(&p2(), &big_vec(&[1, 1])).is_err());
    }

    #[test]
    fn refine_examples() {
        assert_eq!(refine(&p2(), &Sublattice::full(2)).unwrap(), p2());
        let r = refine(&p1(), &lattice(&[&[2]])).unwrap();
        assert_eq!(r, p1());
        let s = sublattice_from_multiples(&p2(), &big_vec(&[2, 3, 6])).unwrap();
        let r = refine(&p2(), &s).unwrap();
        let rays = r.rays();
        for k in 0..2 {
            let sum = BigInt::from(3) * &rays[0][k] + BigInt::from(2) * &rays[1][k] + &rays[2][k];
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn coordinates_and_containment() {
        let s = lattice(&[&[1, 1], &[0, 2]]);
        assert_eq!(s.basis(), &IntMatrix::from_rows(&[[1, 0], [1, 2]]));
        assert!(s.contains(&big_vec(&[1, -1])).unwrap());
        assert!(!s.contains(&big_vec(&[1, 0])).unwrap());
        assert!(s.is_contained_in(&Sublattice::full(2)).unwrap());
        assert!(!Sublattice::full(2).is_contained_in(&s).unwrap());
    }

    #[test]
    fn cover_spec_basics() {
        let s = sublattice_from_multiples(&p2(), &big_vec(&[2, 2, 2])).unwrap();
        let c = CoverSpec::new(&p2(), s).unwrap();
        assert_eq!(c.galois_group().order_u64(), Some(4));
        assert_eq!(c.ram_orders(), &big_vec(&[2, 2, 2])[..]);
        assert_eq!(c.branch_elements().len(), 3);
        assert!(c.covering_fan().unwrap().is_isomorphic(&p2()));
    }
}
