use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

use super::{enumerate_box, FgAbGroup, GroupElt};

/// A character of a finite group, written on the invariant-factor
/// decomposition `Z_{e_1} ⊕ … ⊕ Z_{e_r}`: coordinate `j` lies in `[0, e_j)`
/// and the character sends the `j`-th cyclic generator to `ζ^{c_j·d/e_j}`,
/// where `ζ` is a fixed primitive `d`-th root of unity and `d` the exponent.
///
/// Values are kept as exponents of `ζ` in `Z_d`; no field is involved.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    factors: Vec<BigInt>,
    coords: Vec<BigInt>,
}

impl Character {
    pub fn new(group: &FgAbGroup, coords: Vec<BigInt>) -> Result<Self> {
        if !group.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let factors = group.invariant_factors();
        if coords.len() != factors.len() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "character with {} coordinates on a group with {} cyclic factors",
                coords.len(),
                factors.len()
            )));
        }
        let coords = coords
            .iter()
            .zip(&factors)
            .map(|(c, e)| c.mod_floor(e))
            .collect();
        Ok(Character { factors, coords })
    }

    pub fn trivial(group: &FgAbGroup) -> Result<Self> {
        let r = group.invariant_factors().len();
        Character::new(group, alloc::vec![BigInt::zero(); r])
    }

    /// The character dual to the `j`-th cyclic factor.
    pub fn basis(group: &FgAbGroup, j: usize) -> Result<Self> {
        let r = group.invariant_factors().len();
        if j >= r {
            return Err(Error::InvalidInput(alloc::format!(
                "basis character {} of a group with {} cyclic factors",
                j,
                r
            )));
        }
        let mut c = alloc::vec![BigInt::zero(); r];
        c[j] = BigInt::one();
        Character::new(group, c)
    }

    /// Every character of a finite group, lexicographically.
    pub fn all(group: &FgAbGroup) -> Result<Vec<Self>> {
        if !group.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let factors = group.invariant_factors();
        Ok(enumerate_box(&factors)
            .into_iter()
            .map(|coords| Character {
                factors: factors.clone(),
                coords,
            })
            .collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn compatible(&self, other: &Character) -> Result<()> {
        if self.factors != other.factors {
            return Err(Error::InvalidInput(
                "characters of different groups".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        self.compatible(other)?;
        Ok(Character {
            factors: self.factors.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .zip(&self.factors)
                .map(|((a, b), e)| (a + b).mod_floor(e))
                .collect(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> Character {
        Character {
            factors: self.factors.clone(),
            coords: self
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(a, e)| (a * k).mod_floor(e))
                .collect(),
        }
    }

    /// Order of the character in `G*`.
    pub fn order(&self) -> BigInt {
        self.coords
            .iter()
            .zip(&self.factors)
            .fold(BigInt::one(), |acc, (c, e)| acc.lcm(&(e / e.gcd(c))))
    }
}

/// `χ(a)` as an exponent `t ∈ [0, d)` with `χ(a) = ζ^t`, `d` the exponent of `G`:
/// `t = Σ_j χ_j·a_j·(d/e_j) mod d` on canonical coordinates.
pub fn pair_character(group: &FgAbGroup, chi: &Character, a: &GroupElt) -> Result<BigInt> {
    let d = group.exponent().ok_or(Error::InfiniteGroup)?;
    if chi.factors != group.invariant_factors() {
        return Err(Error::InvalidInput(
            "character and element belong to different groups".into(),
        ));
    }
    let c = group.canonical(a)?;
    let t: BigInt = chi
        .coords
        .iter()
        .zip(&c)
        .zip(&chi.factors)
        .map(|((x, y), e)| x * y * (&d / e))
        .sum();
    Ok(t.mod_floor(&d))
}
