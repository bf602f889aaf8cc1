use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::abgrp::{pair_character, Character, FgAbGroup, GroupElt, GroupHom, Order};
use crate::classgroup::ClassGroupData;
use crate::fan::CoverSpec;
use crate::intlin::{solve, IntMatrix};
use crate::{Error, Result};

use super::{check_lengths, BranchData};

/// A finite group `G` with elements `g_i` of order `d_i`, one per branch divisor.
#[derive(Clone, Debug)]
pub struct AbelianCoverData {
    group: FgAbGroup,
    branch_elements: Vec<GroupElt>,
    branch: BranchData,
    totally_ramified: bool,
}

impl AbelianCoverData {
    pub fn new(group: FgAbGroup, branch_elements: Vec<GroupElt>, branch: BranchData) -> Result<Self> {
        if !group.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        if branch_elements.len() != branch.len() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{} branch elements for {} orders",
                branch_elements.len(),
                branch.len()
            )));
        }
        for (i, (g, d)) in branch_elements.iter().zip(branch.orders()).enumerate() {
            let o = group.element_order(g)?.finite().ok_or(Error::InfiniteGroup)?;
            if &o != d {
                return Err(Error::InvalidInput(alloc::format!(
                    "branch element {} has order {} but the order at that divisor is {}",
                    i,
                    o,
                    d
                )));
            }
        }
        let cols: Vec<Vec<BigInt>> = branch_elements.iter().map(|g| g.coords().to_vec()).collect();
        let generated = GroupHom::new(
            FgAbGroup::free(cols.len()),
            group.clone(),
            IntMatrix::from_columns(group.gens(), &cols)?,
        )?;
        let totally_ramified = generated.is_surjective()?;
        Ok(AbelianCoverData {
            group,
            branch_elements,
            branch,
            totally_ramified,
        })
    }

    /// The abelian side of a toric cover: `G = N/N'`, `g_i` the image of `r_i`.
    pub fn from_toric(spec: &CoverSpec) -> Result<Self> {
        AbelianCoverData::new(
            spec.galois_group().clone(),
            spec.branch_elements(),
            BranchData::new(spec.ram_orders().to_vec())?,
        )
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn branch_elements(&self) -> &[GroupElt] {
        &self.branch_elements
    }

    pub fn branch(&self) -> &BranchData {
        &self.branch
    }

    /// Whether the `g_i` generate `G`.
    pub fn is_totally_ramified(&self) -> bool {
        self.totally_ramified
    }
}

/// `χ̄(g)`: the least `a ≥ 0` with `χ(g) = ζ^{a·d/o(g)}`, where `d` is the
/// exponent of the group. Lies in `[0, o(g))`.
pub fn chi_bar(group: &FgAbGroup, chi: &Character, g: &GroupElt) -> Result<BigInt> {
    let d = group.exponent().ok_or(Error::InfiniteGroup)?;
    let o = match group.element_order(g)? {
        Order::Finite(o) => o,
        Order::Infinite => return Err(Error::InfiniteGroup),
    };
    let t = pair_character(group, chi, g)?;
    let (a, rem) = (t * &o).div_rem(&d);
    if !rem.is_zero() {
        return Err(Error::Internal(
            "character value is not a power of ζ^{d/o(g)}".into(),
        ));
    }
    Ok(a)
}

/// `⌊(χ̄(g) + χ̄'(g)) / o(g)⌋`, always 0 or 1.
pub fn epsilon(group: &FgAbGroup, chi: &Character, chi_prime: &Character, g: &GroupElt) -> Result<BigInt> {
    let o = group.element_order(g)?.finite().ok_or(Error::InfiniteGroup)?;
    Ok((chi_bar(group, chi, g)? + chi_bar(group, chi_prime, g)?).div_floor(&o))
}

/// The classes `L_j` attached to a basis `χ_1, …, χ_r` of `G*`.
///
/// The basis is the one dual to the invariant-factor decomposition of `G`;
/// the `L_j` depend on that choice while the full set of relations does not.
#[derive(Clone, Debug)]
pub struct BuildingData {
    cover: AbelianCoverData,
    cl: ClassGroupData,
    basis_chars: Vec<Character>,
    l_classes: Vec<GroupElt>,
}

impl BuildingData {
    pub fn cover(&self) -> &AbelianCoverData {
        &self.cover
    }

    pub fn class_group(&self) -> &ClassGroupData {
        &self.cl
    }

    pub fn basis_chars(&self) -> &[Character] {
        &self.basis_chars
    }

    /// Orders `m_j` of the basis characters.
    pub fn basis_orders(&self) -> Vec<BigInt> {
        self.basis_chars.iter().map(Character::order).collect()
    }

    /// `L_j = L_{χ_j}` as elements of `Cl(Y)`.
    pub fn l_classes(&self) -> &[GroupElt] {
        &self.l_classes
    }

    /// Copy with `L_j` replaced by `L_j + delta`.
    pub fn perturbed(&self, j: usize, delta: &GroupElt) -> Result<BuildingData> {
        if j >= self.l_classes.len() {
            return Err(Error::InvalidInput(alloc::format!(
                "no class L_{} among {}",
                j,
                self.l_classes.len()
            )));
        }
        let mut out = self.clone();
        out.l_classes[j] = self.cl.cl().add(&self.l_classes[j], delta)?;
        Ok(out)
    }

    /// `L_χ` for every character, keyed by coordinates, obtained from the
    /// `L_j` by repeatedly applying `L_{χ+χ_j} = L_χ + L_j − Σ_i ε^i_{χ,χ_j} D_i`.
    pub fn all_classes(&self) -> Result<BTreeMap<Vec<BigInt>, GroupElt>> {
        let table = ChiBarTable::new(&self.cover)?;
        let cl = self.cl.cl();
        let mut out: BTreeMap<Vec<BigInt>, GroupElt> = BTreeMap::new();
        for chi in &table.chars {
            let coords = chi.coords().to_vec();
            let Some(j) = coords.iter().rposition(|x| !x.is_zero()) else {
                out.insert(coords, cl.zero());
                continue;
            };
            let mut prev = coords.clone();
            prev[j] -= 1;
            let eps = table.epsilons(&prev, &self.basis_chars[j])?;
            let correction = self.cl.combination(&eps)?;
            let l = cl.sub(&cl.add(&out[&prev], &self.l_classes[j])?, &correction)?;
            out.insert(coords, cl.reduce(&l)?);
        }
        Ok(out)
    }
}

/// `χ̄(g_i)` for every character and every branch element.
struct ChiBarTable {
    chars: Vec<Character>,
    values: BTreeMap<Vec<BigInt>, Vec<BigInt>>,
    orders: Vec<BigInt>,
}

impl ChiBarTable {
    fn new(cover: &AbelianCoverData) -> Result<Self> {
        let chars = Character::all(&cover.group)?;
        let mut values = BTreeMap::new();
        for chi in &chars {
            let row = cover
                .branch_elements
                .iter()
                .map(|g| chi_bar(&cover.group, chi, g))
                .collect::<Result<Vec<_>>>()?;
            values.insert(chi.coords().to_vec(), row);
        }
        Ok(ChiBarTable {
            chars,
            values,
            orders: cover.branch.orders().to_vec(),
        })
    }

    fn get(&self, chi: &[BigInt]) -> &[BigInt] {
        &self.values[chi]
    }

    /// `ε^i_{χ,χ'}` for all `i`, from the table.
    fn epsilons(&self, chi: &[BigInt], chi_prime: &Character) -> Result<Vec<BigInt>> {
        let a = self.get(chi);
        let b = self.get(chi_prime.coords());
        Ok(a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), o)| (x + y).div_floor(o))
            .collect())
    }
}

/// Right-hand side of `m·L_χ ≡ Σ_i (m·χ̄(g_i)/d_i)·D_i`.
fn reduced_rhs(cl: &ClassGroupData, cover: &AbelianCoverData, chi: &Character, m: &BigInt) -> Result<GroupElt> {
    let mut coeffs = Vec::with_capacity(cover.branch.len());
    for (g, d) in cover.branch_elements.iter().zip(cover.branch.orders()) {
        let (c, rem) = (m * chi_bar(&cover.group, chi, g)?).div_rem(d);
        if !rem.is_zero() {
            return Err(Error::Internal(
                "m·χ̄(g_i) is not divisible by d_i".into(),
            ));
        }
        coeffs.push(c);
    }
    cl.combination(&coeffs)
}

/// Some `x ∈ Cl` with `m·x = rhs`, if any.
fn divide_in(cl: &FgAbGroup, m: &BigInt, rhs: &GroupElt) -> Result<Option<GroupElt>> {
    let k = cl.gens();
    let a = IntMatrix::identity(k).scale(m).hstack(cl.relations())?;
    Ok(solve(&a, rhs.coords())?.map(|x| GroupElt::new(x[..k].to_vec())))
}

fn check_inputs(cl: &ClassGroupData, cover: &AbelianCoverData) -> Result<()> {
    check_lengths(cl, &cover.branch)?;
    if !cover.totally_ramified {
        return Err(Error::Precondition(
            "the branch elements do not generate the group (cover is not totally ramified)".into(),
        ));
    }
    Ok(())
}

/// Solves `m_j·L_j ≡ Σ_i (m_j·χ̄_j(g_i)/d_i)·D_i` in `Cl(Y)` for each basis
/// character. Needs `Cl(Y)[d] = 0` with `d` the exponent of `G`, which makes
/// the solution unique.
pub fn solve_building_data(cl: &ClassGroupData, cover: &AbelianCoverData) -> Result<BuildingData> {
    check_inputs(cl, cover)?;
    let d = cover.group.exponent().ok_or(Error::InfiniteGroup)?;
    if !cl.cl().has_no_torsion_of(&d) {
        return Err(Error::TorsionObstruction(alloc::format!("{}", d)));
    }
    let r = cover.group.invariant_factors().len();
    let mut basis_chars = Vec::with_capacity(r);
    let mut l_classes = Vec::with_capacity(r);
    for j in 0..r {
        let chi = Character::basis(&cover.group, j)?;
        let m = chi.order();
        let rhs = reduced_rhs(cl, cover, &chi, &m)?;
        let l = divide_in(cl.cl(), &m, &rhs)?.ok_or_else(|| {
            Error::NoSolution(alloc::format!(
                "{}·L_{} = {:?} has no solution",
                m,
                j,
                rhs.coords()
            ))
        })?;
        let l = cl.cl().reduce(&l)?;
        if !cl.cl().elt_eq(&cl.cl().scale(&l, &m)?, &rhs)? {
            return Err(Error::Internal(alloc::format!(
                "L_{} does not satisfy its reduced relation",
                j
            )));
        }
        basis_chars.push(chi);
        l_classes.push(l);
    }
    Ok(BuildingData {
        cover: cover.clone(),
        cl: cl.clone(),
        basis_chars,
        l_classes,
    })
}

/// Whether every reduced relation has some solution, without the torsion
/// hypothesis that makes it unique. Used when `Cl(Y)[d] ≠ 0`.
pub fn reduced_relations_solvable(cl: &ClassGroupData, cover: &AbelianCoverData) -> Result<bool> {
    check_inputs(cl, cover)?;
    for j in 0..cover.group.invariant_factors().len() {
        let chi = Character::basis(&cover.group, j)?;
        let m = chi.order();
        if divide_in(cl.cl(), &m, &reduced_rhs(cl, cover, &chi, &m)?)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A pair of characters for which `L_χ + L_χ' ≡ L_{χ+χ'} + Σ_i ε^i D_i` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub chi: Vec<BigInt>,
    pub chi_prime: Vec<BigInt>,
    /// Canonical coordinates of both sides in `Cl(Y)`.
    pub lhs: Vec<BigInt>,
    pub rhs: Vec<BigInt>,
}

/// Checks `L_χ + L_χ' ≡ L_{χ+χ'} + Σ_i ε^i_{χ,χ'}·D_i` for every ordered pair
/// of characters; returns the first failure.
pub fn verify_fundamental_relations(bd: &BuildingData) -> Result<Option<Violation>> {
    let classes = bd.all_classes()?;
    let table = ChiBarTable::new(&bd.cover)?;
    let cl = bd.cl.cl();
    for chi in &table.chars {
        for chi_prime in &table.chars {
            let sum = chi.add(chi_prime)?;
            let lhs = cl.add(&classes[chi.coords()], &classes[chi_prime.coords()])?;
            let eps = table.epsilons(chi.coords(), chi_prime)?;
            let rhs = cl.add(&classes[sum.coords()], &bd.cl.combination(&eps)?)?;
            let (lhs, rhs) = (cl.canonical(&lhs)?, cl.canonical(&rhs)?);
            if lhs != rhs {
                return Ok(Some(Violation {
                    chi: chi.coords().to_vec(),
                    chi_prime: chi_prime.coords().to_vec(),
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}
