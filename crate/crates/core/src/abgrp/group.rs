use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::intlin::{snf, IntMatrix};
use crate::{Error, Result};

/// An element of a presented group, as coordinates on the presentation's
/// generators. Two coordinate vectors give the same element when their
/// difference lies in the span of the relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElt {
    coords: Vec<BigInt>,
}

impl GroupElt {
    pub fn new(coords: Vec<BigInt>) -> Self {
        GroupElt { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        GroupElt::new(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }
}

/// Order of a group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<BigInt> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

/// A finitely generated abelian group `coker(R: Z^m -> Z^k)`.
///
/// The Smith form `U·R·V = D` is computed once at construction. It gives each
/// element canonical coordinates `(t_1 mod e_1, …, t_r mod e_r, f_1, …, f_s)`
/// on the invariant-factor decomposition `Z_{e_1} ⊕ … ⊕ Z_{e_r} ⊕ Z^s`, which
/// is how elements are compared and how characters are written.
#[derive(Clone)]
pub struct FgAbGroup {
    relations: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    /// Smith diagonal padded with zeros to length `gens`.
    diag: Vec<BigInt>,
    torsion_pos: Vec<usize>,
    free_pos: Vec<usize>,
}

impl FgAbGroup {
    /// The group with `relations.rows()` generators and the columns of
    /// `relations` as relators.
    pub fn new(relations: IntMatrix) -> Self {
        let s = snf(&relations);
        let k = relations.rows();
        let mut diag = s.diagonal();
        diag.resize(k, BigInt::zero());
        let torsion_pos = (0..k)
            .filter(|&i| !diag[i].is_zero() && !diag[i].is_one())
            .collect();
        let free_pos = (0..k).filter(|&i| diag[i].is_zero()).collect();
        FgAbGroup {
            relations,
            u: s.u,
            u_inv: s.u_inv,
            diag,
            torsion_pos,
            free_pos,
        }
    }

    /// `Z^k`.
    pub fn free(k: usize) -> Self {
        FgAbGroup::new(IntMatrix::zeros(k, 0))
    }

    /// `Z_{n_1} ⊕ … ⊕ Z_{n_k}` on exactly `k` generators. Entries equal to one
    /// give trivial generators and entries equal to zero give copies of `Z`.
    pub fn cyclic_sum(orders: &[BigInt]) -> Result<Self> {
        if let Some(bad) = orders.iter().find(|x| x.is_negative()) {
            return Err(Error::InvalidInput(alloc::format!(
                "negative cyclic order {}",
                bad
            )));
        }
        let k = orders.len();
        Ok(FgAbGroup::new(IntMatrix::from_diagonal(k, k, orders)))
    }

    /// The group `Z_{f_1} ⊕ … ⊕ Z^free_rank` with factors equal to one dropped.
    pub fn from_invariant_factors(factors: &[BigInt], free_rank: usize) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|x| !x.is_positive()) {
            return Err(Error::InvalidInput(alloc::format!(
                "invariant factor {} is not positive",
                bad
            )));
        }
        let mut orders: Vec<BigInt> = factors.iter().filter(|x| !x.is_one()).cloned().collect();
        orders.extend(core::iter::repeat_n(BigInt::zero(), free_rank));
        FgAbGroup::cyclic_sum(&orders)
    }

    pub fn from_invariant_factors_i64(factors: &[i64], free_rank: usize) -> Result<Self> {
        let f: Vec<BigInt> = factors.iter().map(|&x| BigInt::from(x)).collect();
        Self::from_invariant_factors(&f, free_rank)
    }

    /// Number of generators of the presentation.
    pub fn gens(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Invariant factors `e_1 | e_2 | …`, all at least two.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.torsion_pos.iter().map(|&i| self.diag[i].clone()).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.free_pos.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_pos.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.is_finite() && self.torsion_pos.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors().iter().product()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// Exponent of a finite group (one for the trivial group).
    pub fn exponent(&self) -> Option<BigInt> {
        self.is_finite().then(|| {
            self.torsion_pos
                .last()
                .map_or_else(BigInt::one, |&i| self.diag[i].clone())
        })
    }

    /// True when the two groups have the same invariant factors and free rank.
    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.invariant_factors() == other.invariant_factors()
            && self.free_rank() == other.free_rank()
    }

    /// True when `A[d] = 0`, i.e. `gcd(e_j, d) = 1` for every invariant factor.
    pub fn has_no_torsion_of(&self, d: &BigInt) -> bool {
        self.invariant_factors().iter().all(|e| e.gcd(d).is_one())
    }

    pub fn zero(&self) -> GroupElt {
        GroupElt::new(vec![BigInt::zero(); self.gens()])
    }

    /// The `i`-th presentation generator.
    pub fn generator(&self, i: usize) -> GroupElt {
        let mut c = vec![BigInt::zero(); self.gens()];
        c[i] = BigInt::one();
        GroupElt::new(c)
    }

    pub(crate) fn check(&self, a: &GroupElt) -> Result<()> {
        if a.coords().len() != self.gens() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "element with {} coordinates in a group on {} generators",
                a.coords().len(),
                self.gens()
            )));
        }
        Ok(())
    }

    /// Coordinates on the invariant-factor decomposition: residues modulo
    /// each invariant factor, followed by the free coordinates.
    pub fn canonical(&self, a: &GroupElt) -> Result<Vec<BigInt>> {
        self.check(a)?;
        let y = self.u.mul_vec(a.coords())?;
        let mut out = Vec::with_capacity(self.torsion_pos.len() + self.free_pos.len());
        for &i in &self.torsion_pos {
            out.push(y[i].mod_floor(&self.diag[i]));
        }
        for &i in &self.free_pos {
            out.push(y[i].clone());
        }
        Ok(out)
    }

    /// Inverse of [`FgAbGroup::canonical`]: an element from its canonical coordinates.
    pub fn from_canonical(&self, c: &[BigInt]) -> Result<GroupElt> {
        let (t, f) = (self.torsion_pos.len(), self.free_pos.len());
        if c.len() != t + f {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{} canonical coordinates for a group with {} cyclic factors",
                c.len(),
                t + f
            )));
        }
        let mut y = vec![BigInt::zero(); self.gens()];
        for (j, &i) in self.torsion_pos.iter().chain(&self.free_pos).enumerate() {
            y[i] = c[j].clone();
        }
        Ok(GroupElt::new(self.u_inv.mul_vec(&y)?))
    }

    /// `gens x r` matrix whose columns are the generators of the cyclic
    /// factors `Z_{e_1}, …, Z_{e_r}`.
    pub(crate) fn torsion_generators(&self) -> IntMatrix {
        self.u_inv.select_columns(&self.torsion_pos)
    }

    /// Rows of `U` that read off the free coordinates.
    pub(crate) fn free_coordinate_rows(&self) -> IntMatrix {
        self.u.select_rows(&self.free_pos)
    }

    pub fn is_zero(&self, a: &GroupElt) -> Result<bool> {
        Ok(self.canonical(a)?.iter().all(Zero::is_zero))
    }

    pub fn elt_eq(&self, a: &GroupElt, b: &GroupElt) -> Result<bool> {
        Ok(self.canonical(a)? == self.canonical(b)?)
    }

    pub fn add(&self, a: &GroupElt, b: &GroupElt) -> Result<GroupElt> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElt::new(
            a.coords().iter().zip(b.coords()).map(|(x, y)| x + y).collect(),
        ))
    }

    pub fn sub(&self, a: &GroupElt, b: &GroupElt) -> Result<GroupElt> {
        self.add(a, &self.scale(b, &BigInt::from(-1))?)
    }

    pub fn scale(&self, a: &GroupElt, k: &BigInt) -> Result<GroupElt> {
        self.check(a)?;
        Ok(GroupElt::new(a.coords().iter().map(|x| x * k).collect()))
    }

    /// Reduced representative: the element rebuilt from its canonical coordinates.
    pub fn reduce(&self, a: &GroupElt) -> Result<GroupElt> {
        self.from_canonical(&self.canonical(a)?)
    }

    /// Least `m ≥ 1` with `m·a = 0`.
    pub fn element_order(&self, a: &GroupElt) -> Result<Order> {
        let c = self.canonical(a)?;
        let t = self.torsion_pos.len();
        if c[t..].iter().any(|x| !x.is_zero()) {
            return Ok(Order::Infinite);
        }
        let order = self
            .torsion_pos
            .iter()
            .zip(&c[..t])
            .fold(BigInt::one(), |acc, (&i, x)| {
                let e = &self.diag[i];
                acc.lcm(&(e / e.gcd(x)))
            });
        Ok(Order::Finite(order))
    }

    /// All elements of a finite group, in lexicographic order of canonical
    /// coordinates.
    pub fn elements(&self) -> Result<Vec<GroupElt>> {
        Ok(self
            .canonical_elements()?
            .iter()
            .map(|c| self.from_canonical(c).expect("canonical length"))
            .collect())
    }

    /// Canonical coordinates of every element of a finite group.
    pub fn canonical_elements(&self) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        Ok(enumerate_box(&self.invariant_factors()))
    }

    /// Human-readable structure such as `Z^2 ⊕ Z_2` or `0`.
    pub fn structure(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{}", r)),
        }
        for e in self.invariant_factors() {
            parts.push(alloc::format!("Z_{}", e));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }

    /// Order as a machine integer, if finite and small enough.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().and_then(|o| o.to_u64())
    }
}

/// All tuples `(x_1, …, x_r)` with `0 ≤ x_j < bounds[j]`, lexicographic.
pub(crate) fn enumerate_box(bounds: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for b in bounds {
        let b = b.to_u64().expect("enumerated factors are small");
        let mut next = Vec::with_capacity(out.len() * b as usize);
        for prefix in &out {
            for x in 0..b {
                let mut p = prefix.clone();
                p.push(BigInt::from(x));
                next.push(p);
            }
        }
        out = next;
    }
    out
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FgAbGroup({}; {} gens, relations {})",
            self.structure(),
            self.gens(),
            self.relations
        )
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.structure())
    }
}
