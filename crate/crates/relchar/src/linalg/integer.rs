//! Integer normal forms: Hermite, Smith, determinants, kernels and solves.

use super::{abs_int, Int, IntMat, LinalgError, Mat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal, the diagonal
/// entries nonnegative and each dividing the next.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).take_while(|&i| !self.d[(i, i)].is_zero()).count()
    }

    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.rank()).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// `u * a = h` with `u` unimodular and `h` in row Hermite normal form:
/// echelon shape, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`.
#[derive(Debug, Clone)]
pub struct HermiteForm {
    pub u: IntMat,
    pub h: IntMat,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        (0..self.h.rows()).take_while(|&i| !(0..self.h.cols()).all(|j| self.h[(i, j)].is_zero())).count()
    }
}

fn find_min_nonzero(a: &IntMat, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in from..a.rows() {
        for j in from..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some(b) => {
                    if abs_int(&a[(i, j)]) < abs_int(&a[(b.0, b.1)]) {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

fn row_sub(a: &mut IntMat, tracking: &mut IntMat, target: usize, source: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for j in 0..a.cols() {
        let delta = q * &a[(source, j)];
        a[(target, j)] = &a[(target, j)] - &delta;
    }
    for j in 0..tracking.cols() {
        let delta = q * &tracking[(source, j)];
        tracking[(target, j)] = &tracking[(target, j)] - &delta;
    }
}

fn col_sub(a: &mut IntMat, tracking: &mut IntMat, target: usize, source: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for i in 0..a.rows() {
        let delta = q * &a[(i, source)];
        a[(i, target)] = &a[(i, target)] - &delta;
    }
    for i in 0..tracking.rows() {
        let delta = q * &tracking[(i, source)];
        tracking[(i, target)] = &tracking[(i, target)] - &delta;
    }
}

fn negate_row(a: &mut IntMat, tracking: &mut IntMat, i: usize) {
    for j in 0..a.cols() {
        a[(i, j)] = -a[(i, j)].clone();
    }
    for j in 0..tracking.cols() {
        tracking[(i, j)] = -tracking[(i, j)].clone();
    }
}

/// Smith normal form with smallest-entry pivoting; deterministic on equal
/// inputs. Total on integer matrices, including empty shapes.
pub fn smith_normal_form(a: &IntMat) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMat::identity(m);
    let mut v = IntMat::identity(n);

    for t in 0..m.min(n) {
        'pivot: loop {
            let Some((pi, pj)) = find_min_nonzero(&d, t) else { break 'pivot };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // Clear column t below the pivot, then row t right of the pivot.
            // Imperfect divisions leave smaller remainders and we loop.
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                row_sub(&mut d, &mut u, i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                col_sub(&mut d, &mut v, j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Enforce that the pivot divides every remaining entry, so the
            // diagonal comes out as a divisibility chain.
            for i in t + 1..m {
                for j in t + 1..n {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        row_sub(&mut d, &mut u, t, i, &Int::from(-1));
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, &mut u, t);
        }
    }

    debug_assert!(u.mul(a).mul(&v) == d);
    SmithForm { u, d, v }
}

/// Row-style Hermite normal form via extended gcd row operations.
pub fn hermite_normal_form(a: &IntMat) -> HermiteForm {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMat::identity(m);
    let mut pivot_row = 0usize;

    for col in 0..n {
        if pivot_row == m {
            break;
        }
        // gcd-reduce the column entries at and below pivot_row
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..m {
                if h[(i, col)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if abs_int(&h[(i, col)]) < abs_int(&h[(b, col)]) {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut all_clear = true;
            for i in pivot_row + 1..m {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
                row_sub(&mut h, &mut u, i, pivot_row, &q);
                if !h[(i, col)].is_zero() {
                    all_clear = false;
                }
            }
            if all_clear {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            negate_row(&mut h, &mut u, pivot_row);
        }
        // Reduce the entries above the pivot into [0, pivot).
        for i in 0..pivot_row {
            let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
            row_sub(&mut h, &mut u, i, pivot_row, &q);
        }
        pivot_row += 1;
    }

    debug_assert!(u.mul(a) == h);
    HermiteForm { u, h }
}

/// Fraction-free determinant (Bareiss). Panics on non-square input.
pub fn det(a: &IntMat) -> Int {
    assert_eq!(a.rows(), a.cols(), "determinant of non-square matrix");
    let n = a.rows();
    if n == 0 {
        return Int::one();
    }
    let mut m = a.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Int::zero();
            };
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let prod1 = &m[(i, j)] * &m[(k, k)];
                let prod2 = &m[(i, k)] * &m[(k, j)];
                let num = prod1 - prod2;
                debug_assert!((&num % &prev).is_zero());
                m[(i, j)] = num / &prev;
            }
            m[(i, k)] = Int::zero();
        }
        prev = m[(k, k)].clone();
    }
    sign * m[(n - 1, n - 1)].clone()
}

/// Basis of the integer kernel `{x : a x = 0}`; the returned vectors span the
/// kernel lattice saturatedly (they are a basis, not just generators).
pub fn integer_kernel(a: &IntMat) -> Vec<Vec<Int>> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    (r..a.cols()).map(|j| snf.v.column(j)).collect()
}

/// An integral solution of `a x = b`, when one exists.
pub fn integer_solve(a: &IntMat, b: &[Int]) -> Result<Option<Vec<Int>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "integer_solve: {} rows vs rhs length {}",
            a.rows(),
            b.len()
        )));
    }
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let mut z = vec![Int::zero(); a.cols()];
    for (i, target) in ub.iter().enumerate() {
        let di = if i < a.cols() { snf.d[(i, i)].clone() } else { Int::zero() };
        if di.is_zero() {
            if !target.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = target.div_rem(&di);
            if !r.is_zero() {
                return Ok(None);
            }
            z[i] = q;
        }
    }
    Ok(Some(snf.v.mul_vec(&z)))
}

/// Row basis of the lattice spanned by the rows of `a`, together with the
/// unimodular rows expressing each basis vector as an integer combination of
/// the input rows.
pub fn lattice_row_basis(a: &IntMat) -> (IntMat, IntMat) {
    let hf = hermite_normal_form(a);
    let r = hf.rank();
    let basis = Mat::from_rows((0..r).map(|i| hf.h.row(i)).collect());
    let expr = Mat::from_rows((0..r).map(|i| hf.u.row(i)).collect());
    let mut basis = basis;
    let mut expr = expr;
    if r == 0 {
        basis = IntMat::zeros(0, a.cols());
        expr = IntMat::zeros(0, a.rows());
    }
    (basis, expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn im(rows: Vec<Vec<i64>>) -> IntMat {
        Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(Int::from).collect()).collect())
    }

    #[test]
    fn snf_identity() {
        for n in 0..4 {
            let a = IntMat::identity(n);
            let s = smith_normal_form(&a);
            assert_eq!(s.d, a);
        }
    }

    #[test]
    fn snf_zero() {
        let a = IntMat::zeros(3, 2);
        let s = smith_normal_form(&a);
        assert!(s.d.is_zero());
        assert_eq!(abs_int(&det(&s.u)), int(1));
        assert_eq!(abs_int(&det(&s.v)), int(1));
    }

    #[test]
    fn snf_two_by_two() {
        let a = im(vec![vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.invariant_factors(), vec![int(2), int(4)]);
        assert_eq!(abs_int(&det(&s.u)), int(1));
        assert_eq!(abs_int(&det(&s.v)), int(1));
    }

    #[test]
    fn hnf_identity() {
        let a = IntMat::identity(3);
        let hf = hermite_normal_form(&a);
        assert_eq!(hf.h, a);
    }

    #[test]
    fn hnf_single_column_gcd() {
        let a = im(vec![vec![0], vec![3]]);
        let hf = hermite_normal_form(&a);
        assert_eq!(hf.h, im(vec![vec![3], vec![0]]));
        assert_eq!(hf.u.mul(&a), hf.h);
    }

    #[test]
    fn hnf_pivot_product_is_det() {
        let a = im(vec![vec![2, 1], vec![4, 5]]);
        let hf = hermite_normal_form(&a);
        assert_eq!(hf.u.mul(&a), hf.h);
        let prod = &hf.h[(0, 0)] * &hf.h[(1, 1)];
        assert_eq!(prod, abs_int(&det(&a)));
        assert_eq!(int(6), abs_int(&det(&a)));
        // entry above the second pivot is reduced
        assert!(hf.h[(0, 1)] >= int(0) && hf.h[(0, 1)] < hf.h[(1, 1)]);
    }

    #[test]
    fn integer_kernel_of_sum_map() {
        let a = im(vec![vec![1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(v == &vec![int(1), int(-1)] || v == &vec![int(-1), int(1)]);
    }

    #[test]
    fn integer_solve_roundtrip() {
        let a = im(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(
            integer_solve(&a, &[int(4), int(9)]).unwrap(),
            Some(vec![int(2), int(3)])
        );
        assert_eq!(integer_solve(&a, &[int(1), int(0)]).unwrap(), None);
    }
}
