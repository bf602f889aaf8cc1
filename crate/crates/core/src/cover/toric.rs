use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::abgrp::{subgroups, GroupElt, GroupHom, Order};
use crate::classgroup::{class_group, torsion_check};
use crate::fan::{sublattice_from_multiples, CoverSpec, Fan, Sublattice};
use crate::intlin::{gcd_all, IntMatrix};
use crate::{Error, Result};

use super::{
    gmax, solve_building_data, subgroup_lattice, verify_fundamental_relations, BranchData,
};

fn check_rays(fan: &Fan, branch: &BranchData) -> Result<()> {
    if fan.ray_count() != branch.len() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "{} orders for {} rays",
            branch.len(),
            fan.ray_count()
        )));
    }
    fan.require_complete()
}

/// For each ray, whether `d_i·r_i` is primitive in `N'_min = ⟨d_j·r_j⟩`.
///
/// When the class group is torsion-free the answer must agree with the
/// injectivity of `Z_{d_i} → G_max`; a disagreement is reported as an
/// internal error.
pub fn existence_toric(fan: &Fan, branch: &BranchData) -> Result<Vec<bool>> {
    check_rays(fan, branch)?;
    let n_min = sublattice_from_multiples(fan, branch.orders())?;
    let mut out = Vec::with_capacity(branch.len());
    for (r, d) in fan.rays().iter().zip(branch.orders()) {
        let v: Vec<BigInt> = r.iter().map(|x| x * d).collect();
        let x = n_min
            .coordinates(&v)?
            .ok_or_else(|| Error::Internal("d_i·r_i is not in N'_min".into()))?;
        out.push(gcd_all(&x).is_one());
    }
    if torsion_check(fan)?.torsion_free {
        let report = gmax(&class_group(fan)?, branch)?;
        if report.per_divisor_injective != out {
            return Err(Error::Internal(alloc::format!(
                "primitivity {:?} disagrees with injectivity {:?}",
                out,
                report.per_divisor_injective
            )));
        }
    }
    Ok(out)
}

/// The maximal toric cover with the given branching, over `N'_min`.
pub fn max_toric_cover(fan: &Fan, branch: &BranchData) -> Result<CoverSpec> {
    let ok = existence_toric(fan, branch)?;
    let failing: Vec<usize> = (0..ok.len()).filter(|&i| !ok[i]).collect();
    if !failing.is_empty() {
        return Err(Error::CoverDoesNotExist { divisors: failing });
    }
    let spec = CoverSpec::new(fan, sublattice_from_multiples(fan, branch.orders())?)?;
    if spec.ram_orders() != branch.orders() {
        return Err(Error::Internal(
            "ramification of the maximal toric cover differs from the requested orders".into(),
        ));
    }
    if torsion_check(fan)?.torsion_free {
        let report = gmax(&class_group(fan)?, branch)?;
        if !report.g_max.is_isomorphic(spec.galois_group()) {
            return Err(Error::Internal(alloc::format!(
                "N/N'_min is {} but G_max is {}",
                spec.galois_group().structure(),
                report.g_max.structure()
            )));
        }
    }
    Ok(spec)
}

fn check_bound(spec: &CoverSpec, bound: u64) -> Result<()> {
    let order = spec.sublattice().index();
    if order > BigInt::from(bound) {
        return Err(Error::Capacity {
            size: order.to_string(),
            bound,
        });
    }
    Ok(())
}

/// Preimage in `N` of a subgroup `H` of `N/N'_min`.
fn preimage(max: &CoverSpec, h: &GroupHom) -> Result<Sublattice> {
    Sublattice::from_generators(&max.sublattice().basis().hstack(h.matrix())?)
}

/// Every toric cover with the given branching: one per subgroup `H` of
/// `N/N'_min`, with lattice the preimage of `H`. Sorted by Hermite basis.
pub fn enumerate_covers(fan: &Fan, branch: &BranchData, bound: u64) -> Result<Vec<CoverSpec>> {
    let max = max_toric_cover(fan, branch)?;
    check_bound(&max, bound)?;
    let mut lattices = BTreeSet::new();
    for h in subgroups(max.galois_group(), bound)? {
        lattices.insert(preimage(&max, &h)?);
    }
    lattices
        .into_iter()
        .map(|sub| CoverSpec::new(fan, sub))
        .collect()
}

/// Agreement between the abelian and the toric descriptions of the covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckReport {
    /// Invariant factors of `G_max` from `φ`.
    pub g_max: Vec<BigInt>,
    /// Invariant factors of `N/N'_min`.
    pub toric_group: Vec<BigInt>,
    /// Subgroups of `G_max`.
    pub subgroup_count: usize,
    /// Covers returned by [`enumerate_covers`].
    pub cover_count: usize,
    /// Lattices between `N'_min` and `N` found by exhaustive search.
    pub brute_force_count: usize,
    /// Ordered character pairs checked against the fundamental relations.
    pub relation_pairs_checked: usize,
}

/// Compares, on a fan with torsion-free class group:
/// `G_max` with `N/N'_min` (and `K_min` with the kernel of `⊕ Z_{d_i} → N/N'_min`),
/// the subgroups of `G_max` with the lattices between `N'_min` and `N`, and
/// checks that the building data of the maximal cover exist and satisfy the
/// fundamental relations.
pub fn cross_check_abelian_toric(fan: &Fan, branch: &BranchData, bound: u64) -> Result<CrossCheckReport> {
    check_rays(fan, branch)?;
    if !torsion_check(fan)?.torsion_free {
        return Err(Error::Precondition(
            "the class group has torsion; pass to the torsion cover first".into(),
        ));
    }
    let cl = class_group(fan)?;
    let report = gmax(&cl, branch)?;
    existence_toric(fan, branch)?;
    if !report.exists {
        return Err(report.nonexistence());
    }
    let max = max_toric_cover(fan, branch)?;
    check_bound(&max, bound)?;
    let toric = max.galois_group();

    if !report.g_max.is_isomorphic(toric) {
        return Err(Error::Falsified(alloc::format!(
            "G_max = {} but N/N'_min = {}",
            report.g_max.structure(),
            toric.structure()
        )));
    }
    let ray_images: Vec<Vec<BigInt>> = max
        .branch_elements()
        .into_iter()
        .map(GroupElt::into_coords)
        .collect();
    let psi = GroupHom::new(
        branch.cyclic_sum(),
        toric.clone(),
        IntMatrix::from_columns(fan.rank(), &ray_images)?,
    )?;
    if !psi.is_surjective()? {
        return Err(Error::Falsified("the rays do not generate N/N'_min".into()));
    }
    if subgroup_lattice(&psi.kernel()?)? != subgroup_lattice(&report.k_min_inclusion)? {
        return Err(Error::Falsified(
            "K_min differs from the kernel of the ray map".into(),
        ));
    }

    let abelian_subgroups = subgroups(&report.g_max, bound)?;
    let toric_subgroups = subgroups(toric, bound)?;
    let covers = enumerate_covers(fan, branch, bound)?;
    let enumerated: BTreeSet<Sublattice> =
        covers.iter().map(|c| c.sublattice().clone()).collect();
    let brute = lattices_between(max.sublattice())?;
    if abelian_subgroups.len() != toric_subgroups.len()
        || abelian_subgroups.len() != covers.len()
        || enumerated.len() != covers.len()
        || enumerated != brute
    {
        return Err(Error::Falsified(alloc::format!(
            "{} subgroups of G_max, {} covers, {} lattices by exhaustive search",
            abelian_subgroups.len(),
            covers.len(),
            brute.len()
        )));
    }
    for h in &toric_subgroups {
        let quotient = h.cokernel()?;
        let spec = CoverSpec::new(fan, preimage(&max, h)?)?;
        for (i, g) in max.branch_elements().iter().enumerate() {
            let o = quotient.apply(g)?;
            match quotient.target().element_order(&o)? {
                Order::Finite(o) if o == spec.ram_orders()[i] => {}
                _ => {
                    return Err(Error::Falsified(alloc::format!(
                        "ramification at divisor {} differs between G_max/H and the lattice",
                        i
                    )))
                }
            }
        }
        if !quotient.is_surjective()? || !super::AbelianCoverData::from_toric(&spec)?.is_totally_ramified() {
            return Err(Error::Falsified("an intermediate cover is not totally ramified".into()));
        }
    }

    let bd = solve_building_data(&cl, &report.max_cover_data()?)?;
    if let Some(v) = verify_fundamental_relations(&bd)? {
        return Err(Error::Falsified(alloc::format!(
            "fundamental relation fails for characters {:?}, {:?}",
            v.chi,
            v.chi_prime
        )));
    }
    let g_order = report.g_max.order().and_then(|o| o.to_usize()).unwrap_or(0);

    Ok(CrossCheckReport {
        g_max: report.g_max.invariant_factors(),
        toric_group: toric.invariant_factors(),
        subgroup_count: abelian_subgroups.len(),
        cover_count: covers.len(),
        brute_force_count: brute.len(),
        relation_pairs_checked: g_order * g_order,
    })
}

/// All lattices `L` with `inner ⊆ L ⊆ Z^s`, by running through every Hermite
/// basis whose determinant divides the index of `inner`.
fn lattices_between(inner: &Sublattice) -> Result<BTreeSet<Sublattice>> {
    let s = inner.ambient_rank();
    let index = inner.index();
    let mut out = BTreeSet::new();
    let mut diag = Vec::with_capacity(s);
    diagonals(s, &index, &mut diag, &mut |diag| {
        let mut h = IntMatrix::from_diagonal(s, s, diag);
        fill_below(&mut h, 0, 0, &mut |h| {
            let candidate = Sublattice::from_generators(h)?;
            if candidate.basis() != h {
                return Err(Error::Internal("enumerated matrix is not in Hermite form".into()));
            }
            if inner.is_contained_in(&candidate)? {
                out.insert(candidate);
            }
            Ok(())
        })
    })?;
    Ok(out)
}

fn diagonals(
    s: usize,
    budget: &BigInt,
    cur: &mut Vec<BigInt>,
    f: &mut dyn FnMut(&[BigInt]) -> Result<()>,
) -> Result<()> {
    if cur.len() == s {
        return f(cur);
    }
    let b = budget.to_u64().ok_or(Error::Capacity {
        size: budget.to_string(),
        bound: u64::MAX,
    })?;
    for h in 1..=b {
        let h = BigInt::from(h);
        if budget.is_multiple_of(&h) {
            cur.push(h.clone());
            diagonals(s, &(budget / &h), cur, f)?;
            cur.pop();
        }
    }
    Ok(())
}

/// Runs through the entries left of the diagonal, row `i` in `[0, h_ii)`.
fn fill_below(
    h: &mut IntMatrix,
    i: usize,
    j: usize,
    f: &mut dyn FnMut(&IntMatrix) -> Result<()>,
) -> Result<()> {
    let s = h.rows();
    if i == s {
        return f(h);
    }
    if j == i {
        return fill_below(h, i + 1, 0, f);
    }
    let p = h[(i, i)].to_u64().expect("diagonal divides the index");
    for x in 0..p {
        h[(i, j)] = BigInt::from(x);
        fill_below(h, i, j + 1, f)?;
    }
    h[(i, j)] = BigInt::from(0);
    Ok(())
}
