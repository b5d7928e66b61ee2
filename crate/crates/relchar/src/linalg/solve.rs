//! The mixed integer/rational solver: the membership oracle behind every
//! lattice-plus-subspace computation.

use super::{integer_kernel, kernel_basis, solve, Int, LinalgError, Mat, Rat, RatMat};
use num_traits::Zero;

/// Coefficients of a mixed solve: integer multipliers on the lattice
/// generators and rational multipliers on the subspace generators.
pub type MixedSolution = Option<(Vec<Int>, Vec<Rat>)>;

/// Decide `v = L x + W y` with `x` integral and `y` rational, where the
/// columns of consideration are given as generator lists. Returns the
/// coefficients on success, `None` when no solution exists; both answers are
/// exact.
pub fn solve_mixed(
    lattice: &[Vec<Rat>],
    subspace: &[Vec<Rat>],
    v: &[Rat],
) -> Result<MixedSolution, LinalgError> {
    let n = v.len();
    for g in lattice.iter().chain(subspace.iter()) {
        if g.len() != n {
            return Err(LinalgError::DimensionMismatch(format!(
                "solve_mixed: generator length {} vs ambient {}",
                g.len(),
                n
            )));
        }
    }
    PreparedSolver::new(n, lattice, subspace).solve(v)
}

/// A prefactored membership solver for one lattice-plus-subspace group. The
/// projection killing the subspace, the Smith form of the projected lattice,
/// and the elimination of the subspace matrix are all computed once, so each
/// query is a handful of matrix-vector products.
#[derive(Debug, Clone)]
pub struct PreparedSolver {
    ambient: usize,
    l_mat: RatMat,
    w_mat: RatMat,
    /// kernel of `p` is exactly the subspace span
    p: RatMat,
    /// integer form of `p * l_mat` and the denominator cleared from it
    pl_int: crate::linalg::IntMat,
    pl_denom: Int,
    snf: super::SmithForm,
    w_elim: SubspaceSolver,
}

impl PreparedSolver {
    pub fn new(ambient: usize, lattice: &[Vec<Rat>], subspace: &[Vec<Rat>]) -> Self {
        let l_mat = Mat::from_columns(ambient, lattice);
        let w_mat = Mat::from_columns(ambient, subspace);
        let (p, _s) = super::complement_projection(&w_mat, ambient);
        let pl = p.mul(&l_mat);
        let (pl_int, pl_denom) = pl.clear_denominators();
        let snf = super::smith_normal_form(&pl_int);
        let w_elim = SubspaceSolver::new(&w_mat);
        PreparedSolver { ambient, l_mat, w_mat, p, pl_int, pl_denom, snf, w_elim }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Whether `v` lies in the subspace span alone.
    pub fn in_subspace(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient);
        super::vec_is_zero(&self.p.mul_vec(v))
    }

    pub fn solve(&self, v: &[Rat]) -> Result<MixedSolution, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "solver ambient {} vs vector length {}",
                self.ambient,
                v.len()
            )));
        }
        // Project to the lattice problem (p l) x = p v, scaled integral. The
        // left side is an integer vector for integral x, so a non-integral
        // right side already means no solution.
        let pv = self.p.mul_vec(v);
        let mut b = Vec::with_capacity(pv.len());
        let d = Rat::from_integer(self.pl_denom.clone());
        for t in &pv {
            let s = t * &d;
            if !s.is_integer() {
                return Ok(None);
            }
            b.push(s.to_integer());
        }
        let Some(x) = self.solve_integer(&b) else { return Ok(None) };
        let lx = self.l_mat.mul_vec(&super::int_vec_to_rat(&x));
        let residual = super::vec_sub(v, &lx);
        let y = if self.w_mat.cols() == 0 {
            if !super::vec_is_zero(&residual) {
                return Ok(None);
            }
            Vec::new()
        } else {
            match self.w_elim.solve(&residual) {
                Some(y) => y,
                None => return Ok(None),
            }
        };
        let wy = self.w_mat.mul_vec(&y);
        if super::vec_sub(&residual, &wy).iter().any(|t| !t.is_zero()) {
            return Err(LinalgError::Internal("solve_mixed reconstruction failed".into()));
        }
        Ok(Some((x, y)))
    }

    fn solve_integer(&self, b: &[Int]) -> Option<Vec<Int>> {
        use num_integer::Integer;
        let ub = self.snf.u.mul_vec(b);
        let cols = self.pl_int.cols();
        let mut z = vec![Int::zero(); cols];
        for (i, target) in ub.iter().enumerate() {
            let di =
                if i < cols { self.snf.d[(i, i)].clone() } else { Int::zero() };
            if di.is_zero() {
                if !target.is_zero() {
                    return None;
                }
            } else {
                let (q, r) = target.div_rem(&di);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            }
        }
        Some(self.snf.v.mul_vec(&z))
    }
}

/// Prefactored rational solve against a fixed matrix: row-reduce once, then
/// each right-hand side costs one matrix-vector product.
#[derive(Debug, Clone)]
struct SubspaceSolver {
    transform: RatMat,
    pivots: Vec<usize>,
    cols: usize,
}

impl SubspaceSolver {
    fn new(w: &RatMat) -> Self {
        let aug = w.hstack(&RatMat::identity(w.rows()));
        let (r, all_pivots) = super::rref(&aug);
        let pivots: Vec<usize> = all_pivots.into_iter().filter(|&p| p < w.cols()).collect();
        let mut transform = RatMat::zeros(w.rows(), w.rows());
        for i in 0..w.rows() {
            for j in 0..w.rows() {
                transform[(i, j)] = r[(i, w.cols() + j)].clone();
            }
        }
        SubspaceSolver { transform, pivots, cols: w.cols() }
    }

    fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        let reduced = self.transform.mul_vec(rhs);
        // consistency: rows beyond the pivot rows must vanish
        for row in reduced.iter().skip(self.pivots.len()) {
            if !row.is_zero() {
                return None;
            }
        }
        let mut y = vec![Rat::zero(); self.cols];
        for (i, &p) in self.pivots.iter().enumerate() {
            y[p] = reduced[i].clone();
        }
        Some(y)
    }
}

/// The solution set of `a x + b y = 0` over `x` integral, `y` rational,
/// presented as a lattice plus a subspace inside the coefficient space
/// `Q^(a_cols + b_cols)`.
#[derive(Debug, Clone)]
pub struct MixedKernel {
    pub lattice: Vec<Vec<Rat>>,
    pub subspace: Vec<Vec<Rat>>,
}

pub fn mixed_kernel(a: &RatMat, b: &RatMat) -> Result<MixedKernel, LinalgError> {
    assert_eq!(a.rows(), b.rows(), "mixed_kernel: row mismatch");
    let p = a.cols();
    let q = b.cols();

    // Rational kernel of [a | b], then the span of its x-projections.
    let full = a.hstack(b);
    let ker = kernel_basis(&full);
    let x_parts: Vec<Vec<Rat>> = ker.iter().map(|v| v[..p].to_vec()).collect();
    let x_span = Mat::from_columns(p, &x_parts);

    // The integral points of that span: annihilate it, then take the integer
    // kernel of the (integral) annihilator.
    let ann = kernel_basis(&x_span.transpose());
    let ann_mat = Mat::from_rows(ann.clone());
    let ann_mat = if ann.is_empty() { RatMat::zeros(0, p) } else { ann_mat };
    let (ann_int, _) = ann_mat.clear_denominators();
    let lattice_coeffs = integer_kernel(&ann_int);

    let mut lattice = Vec::with_capacity(lattice_coeffs.len());
    for x in &lattice_coeffs {
        let xr = super::int_vec_to_rat(x);
        let rhs: Vec<Rat> = a.mul_vec(&xr).iter().map(|t| -t).collect();
        let y = if q == 0 {
            if rhs.iter().any(|t| !t.is_zero()) {
                return Err(LinalgError::Internal("mixed_kernel: rhs outside image".into()));
            }
            Vec::new()
        } else {
            solve(b, &rhs)
                .ok_or_else(|| LinalgError::Internal("mixed_kernel: particular solve failed".into()))?
        };
        let mut gen = xr;
        gen.extend(y);
        lattice.push(gen);
    }

    let mut subspace = Vec::new();
    for y in kernel_basis(b) {
        let mut gen = vec![Rat::zero(); p];
        gen.extend(y);
        subspace.push(gen);
    }
    Ok(MixedKernel { lattice, subspace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat, ratio};

    #[test]
    fn splits_lattice_and_subspace_coordinates() {
        let l = vec![vec![rat(1), rat(0)]];
        let w = vec![vec![rat(0), rat(1)]];
        let v = vec![rat(3), ratio(-5, 2)];
        let (x, y) = solve_mixed(&l, &w, &v).unwrap().unwrap();
        assert_eq!(x, vec![int(3)]);
        assert_eq!(y, vec![ratio(-5, 2)]);
    }

    #[test]
    fn rejects_half_integer() {
        let l = vec![vec![rat(1), rat(0)]];
        let v = vec![ratio(1, 2), rat(0)];
        assert_eq!(solve_mixed(&l, &[], &v).unwrap(), None);
    }

    #[test]
    fn reconstructs_combination() {
        let l = vec![vec![rat(2), rat(2)]];
        let w = vec![vec![rat(1), rat(-1)]];
        let v = vec![rat(3), rat(1)];
        let (x, y) = solve_mixed(&l, &w, &v).unwrap().unwrap();
        assert_eq!(x, vec![int(1)]);
        assert_eq!(y, vec![rat(1)]);
    }

    #[test]
    fn mixed_kernel_of_difference() {
        // t*(1,0) - n*(1,1) = 0 forces n = t = 0
        let a = Mat::from_columns(2, &[vec![rat(1), rat(1)]]);
        let b = Mat::from_columns(2, &[vec![rat(-1), rat(0)]]);
        let k = mixed_kernel(&a, &b).unwrap();
        assert!(k.lattice.is_empty());
        assert!(k.subspace.is_empty());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let l = vec![vec![rat(1)]];
        let v = vec![rat(1), rat(2)];
        assert!(solve_mixed(&l, &[], &v).is_err());
    }
}
