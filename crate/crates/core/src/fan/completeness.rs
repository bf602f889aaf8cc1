use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::intlin::{rank, IntMatrix};
use crate::{Error, Result};

use super::Fan;

const SAMPLE_SEED: u64 = 0x5eed_fa11;
const SAMPLES: usize = 256;
const SAMPLE_RADIUS: i64 = 97;

pub(super) fn verify(fan: &Fan) -> Result<()> {
    match fan.rank() {
        0 => Ok(()),
        1 => verify_line(fan),
        2 => verify_plane(fan),
        _ => verify_sampled(fan),
    }
}

fn verify_line(fan: &Fan) -> Result<()> {
    let has = |x: i64| fan.rays().iter().any(|r| r[0] == BigInt::from(x));
    if has(1) && has(-1) {
        Ok(())
    } else {
        Err(Error::NotComplete(
            "a complete fan in rank one has the rays 1 and -1".into(),
        ))
    }
}

fn cross(a: &[BigInt], b: &[BigInt]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn half(v: &[BigInt]) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: &[BigInt], b: &[BigInt]) -> Ordering {
    half(a)
        .cmp(&half(b))
        .then_with(|| BigInt::zero().cmp(&cross(a, b)))
}

/// Exact check in the plane: sorted by angle, consecutive rays must be less
/// than a half-turn apart and span a cone of the fan, and those are the only
/// two-dimensional cones.
fn verify_plane(fan: &Fan) -> Result<()> {
    let rays = fan.rays();
    let n = rays.len();
    if n < 3 {
        return Err(Error::NotComplete(alloc::format!(
            "{} rays cannot cover the plane",
            n
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| angle_cmp(&rays[i], &rays[j]));
    let cones: BTreeSet<Vec<usize>> = fan
        .cones()
        .iter()
        .filter(|c| c.len() == 2)
        .cloned()
        .collect();
    let mut consecutive = BTreeSet::new();
    for k in 0..n {
        let (a, b) = (order[k], order[(k + 1) % n]);
        if !cross(&rays[a], &rays[b]).is_positive() {
            return Err(Error::NotComplete(alloc::format!(
                "rays {} and {} are at least a half-turn apart",
                a,
                b
            )));
        }
        let pair = alloc::vec![a.min(b), a.max(b)];
        if !cones.contains(&pair) {
            return Err(Error::NotComplete(alloc::format!(
                "no cone spanned by the adjacent rays {} and {}",
                a,
                b
            )));
        }
        consecutive.insert(pair);
    }
    if let Some(c) = cones.iter().find(|c| !consecutive.contains(*c)) {
        return Err(Error::InvalidInput(alloc::format!(
            "cone {:?} overlaps other cones",
            c
        )));
    }
    Ok(())
}

/// Rays must span; then seeded random lattice points must each lie in a cone.
fn verify_sampled(fan: &Fan) -> Result<()> {
    let s = fan.rank();
    if rank(&fan.ray_matrix()) < s {
        return Err(Error::NotComplete("rays do not span the space".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for _ in 0..SAMPLES {
        let p: Vec<BigInt> = loop {
            let p: Vec<BigInt> = (0..s)
                .map(|_| BigInt::from(rng.gen_range(-SAMPLE_RADIUS..=SAMPLE_RADIUS)))
                .collect();
            if p.iter().any(|x| !x.is_zero()) {
                break p;
            }
        };
        if !fan.cones().iter().any(|c| cone_contains(fan, c, &p)) {
            return Err(Error::NotComplete(alloc::format!(
                "the point {:?} lies in no cone",
                p.iter().map(|x| alloc::format!("{}", x)).collect::<Vec<_>>()
            )));
        }
    }
    Ok(())
}

/// A point lies in a cone iff it lies in the cone over some linearly
/// independent `s`-subset of its rays; membership there is Cramer's rule.
fn cone_contains(fan: &Fan, cone: &[usize], p: &[BigInt]) -> bool {
    let s = fan.rank();
    if cone.len() < s {
        return false;
    }
    let mut found = false;
    for_each_subset(cone.len(), s, &mut |subset| {
        if found {
            return;
        }
        let cols: Vec<Vec<BigInt>> = subset.iter().map(|&k| fan.rays()[cone[k]].clone()).collect();
        let b = IntMatrix::from_columns(s, &cols).expect("rank-length rays");
        let det = b.determinant().expect("square");
        if det.is_zero() {
            return;
        }
        let inside = (0..s).all(|j| {
            let mut cj = cols.clone();
            cj[j] = p.to_vec();
            let dj = IntMatrix::from_columns(s, &cj)
                .expect("rank-length")
                .determinant()
                .expect("square");
            !(dj * &det).is_negative()
        });
        found = inside;
    });
    found
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(k);
    rec(0, n, k, &mut cur, f);
}
