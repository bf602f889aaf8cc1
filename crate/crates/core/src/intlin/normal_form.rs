use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::{Error, Result};

/// Smith normal form `U·A·V = D` together with the inverses of both
/// transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SnfResult {
    /// Diagonal of `D`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }

    /// Nonzero diagonal entries different from one: the invariant factors of
    /// the torsion part of `coker(A)`.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_zero() && !x.is_one())
            .collect()
    }
}

/// Working state of the elimination: the matrix and the four transforms,
/// kept in sync by every elementary operation.
struct Elimination {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Elimination {
    fn row_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn row_neg(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn col_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }
}

/// Position of the entry of least nonzero absolute value in `a[t.., t..]`.
fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form by gcd-driven row and column elimination.
///
/// The pivot is always the entry of least absolute value; once a pivot has
/// cleared its row and column it must also divide the remaining block,
/// otherwise an offending row is folded into the pivot row and elimination
/// resumes. The diagonal of `D` is nonnegative and forms a divisibility chain.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut e = Elimination {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_pivot(&e.a, t) else {
            break;
        };
        e.row_swap(t, pi);
        e.col_swap(t, pj);
        loop {
            for i in t + 1..m {
                if !e.a[(i, t)].is_zero() {
                    let q = &e.a[(i, t)] / &e.a[(t, t)];
                    e.row_add(i, t, &-q);
                }
            }
            if let Some(i) = smallest_nonzero((t + 1..m).map(|i| (i, &e.a[(i, t)]))) {
                e.row_swap(t, i);
                continue;
            }
            for j in t + 1..n {
                if !e.a[(t, j)].is_zero() {
                    let q = &e.a[(t, j)] / &e.a[(t, t)];
                    e.col_add(j, t, &-q);
                }
            }
            if let Some(j) = smallest_nonzero((t + 1..n).map(|j| (j, &e.a[(t, j)]))) {
                e.col_swap(t, j);
                continue;
            }
            let pivot = e.a[(t, t)].clone();
            let offending = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !e.a[(i, j)].is_multiple_of(&pivot))
            });
            match offending {
                Some(i) => e.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if e.a[(t, t)].is_negative() {
            e.row_neg(t);
        }
        t += 1;
    }
    SnfResult {
        u: e.u,
        d: e.a,
        v: e.v,
        u_inv: e.u_inv,
        v_inv: e.v_inv,
        rank: t,
    }
}

fn smallest_nonzero<'a>(entries: impl Iterator<Item = (usize, &'a BigInt)>) -> Option<usize> {
    entries
        .filter(|(_, x)| !x.is_zero())
        .min_by(|(_, x), (_, y)| x.abs().cmp(&y.abs()))
        .map(|(i, _)| i)
}

/// Column-style Hermite normal form `H = A·W` with `W` unimodular.
///
/// Row by row, the pivot of each column is positive, columns after the
/// pivot vanish in the pivot row, and the entries of the pivot row in earlier
/// columns lie in `[0, pivot)`. Zero columns are moved to the right.
pub fn hnf(a: &IntMatrix) -> IntMatrix {
    hnf_with_transform(a).0
}

/// [`hnf`] together with the unimodular transform `W`.
pub fn hnf_with_transform(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut w = IntMatrix::identity(n);
    let mut p = 0;
    for i in 0..m {
        if p >= n {
            break;
        }
        loop {
            let Some(j) = smallest_nonzero((p..n).map(|j| (j, &h[(i, j)]))) else {
                break;
            };
            h.swap_cols(p, j);
            w.swap_cols(p, j);
            let mut clean = true;
            for j in p + 1..n {
                if !h[(i, j)].is_zero() {
                    let q = -(&h[(i, j)] / &h[(i, p)]);
                    h.add_col_multiple(j, p, &q);
                    w.add_col_multiple(j, p, &q);
                    clean &= h[(i, j)].is_zero();
                }
            }
            if clean {
                break;
            }
        }
        if h[(i, p)].is_zero() {
            continue;
        }
        if h[(i, p)].is_negative() {
            h.negate_col(p);
            w.negate_col(p);
        }
        let pivot = h[(i, p)].clone();
        for j in 0..p {
            let q = -h[(i, j)].div_floor(&pivot);
            h.add_col_multiple(j, p, &q);
            w.add_col_multiple(j, p, &q);
        }
        p += 1;
    }
    (h, w)
}

/// Nonzero columns of the Hermite normal form: a canonical basis of the
/// lattice spanned by the columns of `a`.
pub fn lattice_basis(a: &IntMatrix) -> IntMatrix {
    let h = hnf(a);
    let keep: Vec<usize> = (0..h.cols())
        .filter(|&j| (0..h.rows()).any(|i| !h[(i, j)].is_zero()))
        .collect();
    h.select_columns(&keep)
}

pub fn rank(a: &IntMatrix) -> usize {
    lattice_basis(a).cols()
}

/// An integral solution of `A·x = b`, or `None` if there is none.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "right-hand side of length {} for a matrix with {} rows",
            b.len(),
            a.rows()
        )));
    }
    Ok(solve_with(&snf(a), b))
}

/// Solves `A·x = b` given the Smith form of `A`.
pub fn solve_with(s: &SnfResult, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = s.u.mul_vec(b).expect("U is square of size rows(A)");
    let mut y = vec![BigInt::zero(); s.v.rows()];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank {
            let (q, r) = ci.div_rem(&s.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y).expect("V is square of size cols(A)"))
}

/// A basis of `{x : A·x = 0}`, one column per basis vector.
///
/// The basis is saturated: the columns extend to a basis of `Z^cols`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = snf(a);
    let idx: Vec<usize> = (s.rank..a.cols()).collect();
    s.v.select_columns(&idx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_snf(a: &IntMatrix) -> SnfResult {
        let s = snf(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.rows()));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.cols()));
        s
    }

    #[test]
    fn snf_identity() {
        let s = check_snf(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
    }

    #[test]
    fn snf_two_by_two() {
        let s = check_snf(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(s.diagonal(), big(&[2, 4]));
    }

    #[test]
    fn snf_square_torsion_fan() {
        let a = IntMatrix::from_rows(&[[1, 1], [-1, 1], [-1, -1], [1, -1]]);
        let s = check_snf(&a);
        assert_eq!(s.diagonal(), big(&[1, 2]));
        assert_eq!(s.torsion_factors(), big(&[2]));
    }

    #[test]
    fn snf_empty() {
        let s = check_snf(&IntMatrix::zeros(0, 3));
        assert_eq!(s.rank, 0);
        let s = check_snf(&IntMatrix::zeros(2, 0));
        assert_eq!(s.u, IntMatrix::identity(2));
    }

    #[test]
    fn snf_needs_divisibility_fix() {
        let s = check_snf(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.diagonal(), big(&[1, 6]));
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf(&IntMatrix::identity(2)), IntMatrix::identity(2));
        let col = IntMatrix::from_rows(&[[2], [4]]);
        assert_eq!(hnf(&col), col);
        let neg = IntMatrix::from_rows(&[[-2], [-4]]);
        assert_eq!(hnf(&neg), col);
        let a = IntMatrix::from_rows(&[[2, 1], [0, 1]]);
        assert_eq!(hnf(&a), IntMatrix::from_rows(&[[1, 0], [1, 2]]));
    }

    #[test]
    fn hnf_transform_is_unimodular() {
        let a = IntMatrix::from_rows(&[[3, 5, 7], [2, -4, 6]]);
        let (h, w) = hnf_with_transform(&a);
        assert_eq!(&a * &w, h);
        assert_eq!(w.determinant().unwrap().abs(), BigInt::one());
        assert!(h.column(2).iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_examples() {
        let a = IntMatrix::from_rows(&[[2]]);
        assert_eq!(solve(&a, &big(&[2])).unwrap(), Some(big(&[1])));
        assert_eq!(solve(&a, &big(&[1])).unwrap(), None);
        let a = IntMatrix::from_rows(&[[1, 1], [0, 2]]);
        assert_eq!(solve(&a, &big(&[3, 4])).unwrap(), Some(big(&[1, 2])));
        assert!(matches!(
            solve(&a, &big(&[1])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&IntMatrix::identity(2)).cols(), 0);
        let a = IntMatrix::from_rows(&[[1, 1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        // saturated: the Smith form of the basis has unit diagonal
        assert!(snf(&k).diagonal().iter().all(One::is_one));
        let z = kernel_basis(&IntMatrix::zeros(1, 3));
        assert_eq!(z.cols(), 3);
        assert_eq!(z.determinant().unwrap().abs(), BigInt::one());
    }
}
