//! Property tests for the algebra layer: normal-form invariants, the mixed
//! solver against a brute-force oracle, and decomposition invariance.

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use relchar::linalg::{
    det, hermite_normal_form, int, rat, ratio, smith_normal_form, solve_mixed, Int, IntMat, Mat,
    Rat,
};
use relchar::mixed::{decompose, MixedSubgroup, Subquotient};

fn small_matrix() -> impl Strategy<Value = IntMat> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-20i64..=20, r * c).prop_map(move |data| {
            let rows: Vec<Vec<Int>> =
                data.chunks(c).map(|ch| ch.iter().map(|&x| int(x)).collect()).collect();
            Mat::from_rows(rows)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_invariants(a in small_matrix()) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert_eq!(det(&s.u).abs(), Int::one());
        prop_assert_eq!(det(&s.v).abs(), Int::one());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn hermite_form_invariants(a in small_matrix()) {
        let hf = hermite_normal_form(&a);
        prop_assert_eq!(hf.u.mul(&a), hf.h.clone());
        prop_assert_eq!(det(&hf.u).abs(), Int::one());
        let mut last: isize = -1;
        for i in 0..hf.h.rows() {
            if let Some(j) = (0..hf.h.cols()).find(|&j| !hf.h[(i, j)].is_zero()) {
                prop_assert!((j as isize) > last);
                last = j as isize;
                prop_assert!(hf.h[(i, j)].is_positive());
            }
        }
    }
}

/// Brute-force oracle on tiny instances: enumerate small integer
/// coefficients, solving the subspace part exactly for each candidate.
fn brute_force_solvable(
    lattice: &[Vec<Rat>],
    subspace: &[Vec<Rat>],
    v: &[Rat],
    bound: i64,
) -> bool {
    let n = v.len();
    let w = Mat::from_columns(n, subspace);
    let mut coeffs = vec![0i64; lattice.len()];
    loop {
        let mut residual = v.to_vec();
        for (c, g) in coeffs.iter().zip(lattice) {
            for (r, x) in residual.iter_mut().zip(g) {
                *r -= rat(*c) * x;
            }
        }
        let hit = if subspace.is_empty() {
            residual.iter().all(Zero::is_zero)
        } else {
            relchar::linalg::solve(&w, &residual).is_some()
        };
        if hit {
            return true;
        }
        // odometer over [-bound, bound]^k
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return false;
            }
            coeffs[i] += 1;
            if coeffs[i] > bound {
                coeffs[i] = -bound;
                i += 1;
            } else {
                break;
            }
        }
    }
}

fn tiny_vec() -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec((-3i64..=3, 1i64..=2), 2)
        .prop_map(|v| v.into_iter().map(|(n, d)| ratio(n, d)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solve_mixed_matches_brute_force(
        l1 in tiny_vec(),
        w1 in tiny_vec(),
        target in tiny_vec(),
    ) {
        let lattice = vec![l1];
        let subspace = vec![w1];
        let solved = solve_mixed(&lattice, &subspace, &target).unwrap();
        if let Some((x, y)) = &solved {
            // exact reconstruction
            let mut v = vec![Rat::zero(); 2];
            for (c, g) in x.iter().zip(&lattice) {
                for (t, e) in v.iter_mut().zip(g) {
                    *t += Rat::from_integer(c.clone()) * e;
                }
            }
            for (c, g) in y.iter().zip(&subspace) {
                for (t, e) in v.iter_mut().zip(g) {
                    *t += c * e;
                }
            }
            prop_assert_eq!(v, target.clone());
        }
        // the brute-force window is large enough for these tiny instances:
        // any solution seen by the oracle must be seen by the solver
        if brute_force_solvable(&lattice, &subspace, &target, 24) {
            prop_assert!(solved.is_some());
        }
    }

    #[test]
    fn decompose_invariant_under_generator_shuffle(
        perm_seed in 0u64..1000,
    ) {
        // fixed subquotient, shuffled generator order
        let num = MixedSubgroup::new(
            3,
            vec![
                vec![rat(1), rat(0), rat(0)],
                vec![rat(0), rat(2), rat(0)],
                vec![rat(1), rat(1), rat(0)],
            ],
            vec![vec![rat(0), rat(0), rat(1)]],
        )
        .unwrap();
        let den = MixedSubgroup::new(3, vec![vec![rat(2), rat(0), rat(0)]], vec![]).unwrap();
        let sq = Subquotient::new(num.clone(), den.clone()).unwrap();
        let base = decompose(&sq).unwrap().shape();

        let mut gens: Vec<Vec<Rat>> = num.lattice_gens().to_vec();
        gens.rotate_left((perm_seed % 3) as usize);
        let shuffled = MixedSubgroup::new(3, gens, num.subspace_gens().to_vec()).unwrap();
        let sq2 = Subquotient::new(shuffled, den).unwrap();
        prop_assert_eq!(decompose(&sq2).unwrap().shape(), base);
    }
}

#[test]
fn solve_mixed_no_solution_cross_checked() {
    // half-integer target outside Z(1,0): the oracle and the solver agree
    let lattice = vec![vec![rat(1), rat(0)]];
    let v = vec![ratio(1, 2), rat(0)];
    assert!(solve_mixed(&lattice, &[], &v).unwrap().is_none());
    assert!(!brute_force_solvable(&lattice, &[], &v, 24));
}
