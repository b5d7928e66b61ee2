//! Exact rational elimination: reduced row echelon form and its consequences.

use super::{Mat, Rat, RatMat};
use num_traits::{One, Zero};

/// In-place reduced row echelon form; returns the pivot columns.
/// Pivoting is first-nonzero in column order, so the result is deterministic.
pub fn rref_in_place(m: &mut RatMat) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
        m.swap_rows(r, p);
        let inv = m[(r, c)].recip();
        for j in c..cols {
            let val = &m[(r, j)] * &inv;
            m[(r, j)] = val;
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let factor = m[(i, c)].clone();
            for j in c..cols {
                let delta = &factor * &m[(r, j)];
                m[(i, j)] = &m[(i, j)] - &delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rref(m: &RatMat) -> (RatMat, Vec<usize>) {
    let mut c = m.clone();
    let p = rref_in_place(&mut c);
    (c, p)
}

pub fn rank(m: &RatMat) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn kernel_basis(m: &RatMat) -> Vec<Vec<Rat>> {
    let cols = m.cols();
    let (r, pivots) = rref(m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..cols).filter(|j| !pivot_set.contains(j)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[(i, f)].clone();
        }
        basis.push(v);
    }
    basis
}

/// A particular solution of `m x = b`, if consistent.
pub fn solve(m: &RatMat, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(m.rows(), b.len(), "solve: shape mismatch");
    let aug = m.hstack(&Mat::from_columns(m.rows(), &[b.to_vec()]));
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![Rat::zero(); m.cols()];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[(i, m.cols())].clone();
    }
    Some(x)
}

/// True iff `v` lies in the column span of `basis`.
pub fn subspace_contains(basis: &RatMat, v: &[Rat]) -> bool {
    solve(basis, v).is_some()
}

/// Inverse of a square invertible matrix; `None` when singular.
pub fn inverse(m: &RatMat) -> Option<RatMat> {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let aug = m.hstack(&RatMat::identity(n));
    let (r, pivots) = rref(&aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    let mut inv = RatMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = r[(i, n + j)].clone();
        }
    }
    Some(inv)
}

/// Left inverse of a matrix with full column rank: `phi * m = identity`.
pub fn left_inverse(m: &RatMat) -> Option<RatMat> {
    let (rows, cols) = (m.rows(), m.cols());
    let aug = m.hstack(&RatMat::identity(rows));
    let (r, pivots) = rref(&aug);
    let col_pivots: Vec<usize> = pivots.iter().copied().filter(|&p| p < cols).collect();
    if col_pivots.len() != cols {
        return None;
    }
    // Full column rank puts the reduced block [I; 0] in the first `cols`
    // columns, so the matching transform rows form a left inverse.
    let mut phi = RatMat::zeros(cols, rows);
    for i in 0..cols {
        for j in 0..rows {
            phi[(i, j)] = r[(i, cols + j)].clone();
        }
    }
    debug_assert!(phi.mul(m) == RatMat::identity(cols));
    Some(phi)
}

/// For a subspace given by the columns of `basis` inside the ambient space of
/// dimension `n`, produce `(p, s)` with `p` surjective, `ker p = span(basis)`
/// and `p * s = identity`. The section `s` consists of greedily chosen
/// standard basis vectors, so the construction is deterministic.
pub fn complement_projection(basis: &RatMat, n: usize) -> (RatMat, RatMat) {
    assert_eq!(basis.rows(), n);
    // Reduce the basis columns to an independent set first.
    let indep = independent_columns(basis);
    let mut chosen_cols: Vec<Vec<Rat>> = indep.iter().map(|&j| basis.column(j)).collect();
    let r = chosen_cols.len();
    let mut std_cols: Vec<usize> = Vec::new();
    for j in 0..n {
        if chosen_cols.len() == n {
            break;
        }
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        let cand = Mat::from_columns(n, &chosen_cols);
        if !subspace_contains(&cand, &e) {
            chosen_cols.push(e);
            std_cols.push(j);
        }
    }
    assert_eq!(chosen_cols.len(), n, "basis completion failed");
    let f = Mat::from_columns(n, &chosen_cols);
    let finv = inverse(&f).expect("completed basis is invertible");
    let mut p = RatMat::zeros(n - r, n);
    for i in 0..n - r {
        for j in 0..n {
            p[(i, j)] = finv[(r + i, j)].clone();
        }
    }
    let mut s = RatMat::zeros(n, n - r);
    for (k, &j) in std_cols.iter().enumerate() {
        s[(j, k)] = Rat::one();
    }
    debug_assert!(p.mul(&s) == RatMat::identity(n - r));
    (p, s)
}

/// Indices of a maximal independent subset of the columns, chosen greedily
/// left to right.
pub fn independent_columns(m: &RatMat) -> Vec<usize> {
    let (_, pivots) = rref(m);
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    fn rm(rows: Vec<Vec<i64>>) -> RatMat {
        Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect())
    }

    #[test]
    fn kernel_of_sum() {
        let m = rm(vec![vec![1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![rat(-1), rat(1)]);
    }

    #[test]
    fn solve_and_inconsistency() {
        let m = rm(vec![vec![2, 0], vec![0, 4]]);
        let x = solve(&m, &[rat(1), rat(2)]).unwrap();
        assert_eq!(x, vec![ratio(1, 2), ratio(1, 2)]);
        let singular = rm(vec![vec![1, 1], vec![1, 1]]);
        assert!(solve(&singular, &[rat(0), rat(1)]).is_none());
    }

    #[test]
    fn complement_projection_splits() {
        let basis = Mat::from_columns(3, &[vec![rat(1), rat(1), rat(0)]]);
        let (p, s) = complement_projection(&basis, 3);
        assert_eq!(p.rows(), 2);
        assert!(p.mul_vec(&[rat(1), rat(1), rat(0)]).iter().all(|x| x.is_zero()));
        assert_eq!(p.mul(&s), RatMat::identity(2));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = rm(vec![vec![1, 2], vec![3, 5]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), RatMat::identity(2));
    }
}
