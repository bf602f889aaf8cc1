use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::intlin::{lattice_basis, solve, IntMatrix};
use crate::{Error, Result};

use super::{FgAbGroup, GroupHom};

/// Default capacity for subgroup enumeration.
pub const DEFAULT_SUBGROUP_BOUND: u64 = 10_000;

/// Every subgroup of a finite group, each exactly once, as inclusions.
///
/// Subgroups of `Z_{e_1} ⊕ … ⊕ Z_{e_r}` are the lattices between
/// `diag(e)·Z^r` and `Z^r`, identified by their Hermite basis. Starting from
/// the trivial subgroup, every subgroup is joined with every cyclic subgroup
/// until no new lattice appears. Output is sorted by order, then by basis.
pub fn subgroups(a: &FgAbGroup, bound: u64) -> Result<Vec<GroupHom>> {
    let order = a.order().ok_or(Error::InfiniteGroup)?;
    if order > BigInt::from(bound) {
        return Err(Error::Capacity {
            size: order.to_string(),
            bound,
        });
    }
    let factors = a.invariant_factors();
    let r = factors.len();
    let relation_lattice = IntMatrix::from_diagonal(r, r, &factors);
    let key = |gens: &IntMatrix| -> Result<IntMatrix> {
        Ok(lattice_basis(&gens.hstack(&relation_lattice)?))
    };

    let mut cyclic = BTreeSet::new();
    for c in a.canonical_elements()? {
        cyclic.insert(key(&IntMatrix::from_columns(r, &[c])?)?);
    }

    let trivial = key(&IntMatrix::zeros(r, 0))?;
    let mut seen = BTreeSet::new();
    seen.insert(trivial.clone());
    let mut queue = VecDeque::from([trivial]);
    while let Some(s) = queue.pop_front() {
        for c in &cyclic {
            let joined = key(&s.hstack(c)?)?;
            if !seen.contains(&joined) {
                seen.insert(joined.clone());
                queue.push_back(joined);
            }
        }
    }

    let embed = a.torsion_generators();
    let mut out = Vec::with_capacity(seen.len());
    for basis in seen {
        let rel_cols = (0..r)
            .map(|j| {
                solve(&basis, &relation_lattice.column(j))?
                    .ok_or_else(|| Error::Internal("subgroup lattice misses a relation".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let sub = FgAbGroup::new(IntMatrix::from_columns(r, &rel_cols)?);
        let inc = GroupHom::new(sub, a.clone(), embed.checked_mul(&basis)?)?;
        out.push((inc.source().torsion_order(), basis, inc));
    }
    out.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
    Ok(out.into_iter().map(|(_, _, inc)| inc).collect())
}
