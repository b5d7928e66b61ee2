//! Canonical decomposition of a subquotient of mixed subgroups into
//! `Q^a + (Q/Z)^b + Z^c + Z/d_1 + ... + Z/d_k`, with explicit two-sided
//! witness homomorphisms.
//!
//! The splitting exists because the divisible part `Q^a + (Q/Z)^b` of the
//! quotient is an injective Z-module; the algorithm realizes a concrete
//! splitting and the witnesses certify it, so any deterministic choice of
//! complements is acceptable.

use super::{MixedError, Subquotient};
use crate::linalg::{
    self, complement_projection, independent_columns, inverse, lattice_row_basis, left_inverse,
    smith_normal_form, subspace_contains, Int, Mat, Rat, RatMat,
};
use num_traits::{One, Zero};

/// The canonical form of a subquotient together with witness data: `to_*`
/// matrices act on the ambient space and present the class of an element in
/// the model group, while the `from_*` generator lists realize the model
/// group's generators inside the numerator.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub q_rank: usize,
    pub torus_rank: usize,
    pub free_rank: usize,
    /// Invariant factors `d_i >= 2` with `d_i | d_{i+1}`.
    pub torsion: Vec<Int>,
    pub to_q: RatMat,
    pub to_torus: RatMat,
    pub to_free: RatMat,
    pub to_torsion: RatMat,
    pub from_q: Vec<Vec<Rat>>,
    pub from_torus: Vec<Vec<Rat>>,
    pub from_free: Vec<Vec<Rat>>,
    pub from_torsion: Vec<Vec<Rat>>,
}

impl Decomposition {
    pub fn shape(&self) -> (usize, usize, usize, Vec<Int>) {
        (self.q_rank, self.torus_rank, self.free_rank, self.torsion.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.q_rank == 0 && self.torus_rank == 0 && self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Rendering used by reports: `Q^a + (Q/Z)^b + Z^c + Z/d1 + ...`, or `0`.
    pub fn display_string(&self) -> String {
        let mut parts = Vec::new();
        if self.q_rank > 0 {
            parts.push(format!("Q^{}", self.q_rank));
        }
        if self.torus_rank > 0 {
            parts.push(format!("(Q/Z)^{}", self.torus_rank));
        }
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{}", d));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Full two-sided witness verification against the subquotient the
    /// decomposition was computed from. Every check is exact.
    pub fn verify(&self, sq: &Subquotient) -> Result<(), MixedError> {
        let n = sq.ambient_dim();
        let num = sq.numerator();
        let den = sq.denominator();
        let fail = |msg: &str| Err(MixedError::DecomposeFailure(msg.to_string()));

        for (mat, rows) in [
            (&self.to_q, self.q_rank),
            (&self.to_torus, self.torus_rank),
            (&self.to_free, self.free_rank),
            (&self.to_torsion, self.torsion.len()),
        ] {
            if mat.rows() != rows || mat.cols() != n {
                return fail("witness matrix shape mismatch");
            }
        }
        for (i, d) in self.torsion.iter().enumerate() {
            if d < &Int::from(2) {
                return fail("torsion factor below 2");
            }
            if i + 1 < self.torsion.len() && !(&self.torsion[i + 1] % d).is_zero() {
                return fail("torsion divisibility chain broken");
            }
        }

        // The maps must kill the denominator.
        for g in den.lattice_gens() {
            if !linalg::vec_is_zero(&self.to_q.mul_vec(g)) {
                return fail("to_q does not kill a denominator lattice generator");
            }
            if !linalg::vec_is_zero(&self.to_free.mul_vec(g)) {
                return fail("to_free does not kill a denominator lattice generator");
            }
            if !linalg::vec_is_integral(&self.to_torus.mul_vec(g)) {
                return fail("to_torus is not integral on the denominator");
            }
            let tv = self.to_torsion.mul_vec(g);
            for (i, d) in self.torsion.iter().enumerate() {
                if !(&tv[i] / Rat::from_integer(d.clone())).is_integer() {
                    return fail("to_torsion is not divisible on the denominator");
                }
            }
        }
        for w in den.subspace_gens() {
            for mat in [&self.to_q, &self.to_torus, &self.to_free, &self.to_torsion] {
                if !linalg::vec_is_zero(&mat.mul_vec(w)) {
                    return fail("witness map does not kill the denominator subspace");
                }
            }
        }

        // The maps must send the numerator into the model group.
        for g in num.lattice_gens() {
            if !linalg::vec_is_integral(&self.to_free.mul_vec(g))
                || !linalg::vec_is_integral(&self.to_torsion.mul_vec(g))
            {
                return fail("discrete components are not integral on the numerator");
            }
        }
        for w in num.subspace_gens() {
            if !linalg::vec_is_zero(&self.to_free.mul_vec(w))
                || !linalg::vec_is_zero(&self.to_torsion.mul_vec(w))
            {
                return fail("discrete components do not kill the numerator subspace");
            }
        }

        // from-generators must live where they claim to.
        for u in &self.from_q {
            if !num.contains_line(u)? {
                return fail("Q^a generator is not a subspace direction of the numerator");
            }
        }
        for g in &self.from_torus {
            if !num.contains_line(g)? || !den.contains(g)? {
                return fail("torus generator is not a denominator element on a numerator line");
            }
        }
        for v in &self.from_free {
            if !num.contains(v)? {
                return fail("free generator is outside the numerator");
            }
        }
        for (i, v) in self.from_torsion.iter().enumerate() {
            if !num.contains(v)? {
                return fail("torsion generator is outside the numerator");
            }
            let dv = linalg::vec_scale(&Rat::from_integer(self.torsion[i].clone()), v);
            if !den.contains(&dv)? {
                return fail("torsion generator times its order is not in the denominator");
            }
        }

        // to . from = identity on the model generators.
        let groups: [(&Vec<Vec<Rat>>, usize); 4] = [
            (&self.from_q, 0),
            (&self.from_torus, 1),
            (&self.from_free, 2),
            (&self.from_torsion, 3),
        ];
        for (gens, slot) in groups {
            for (j, v) in gens.iter().enumerate() {
                let q = self.to_q.mul_vec(v);
                let t = self.to_torus.mul_vec(v);
                let f = self.to_free.mul_vec(v);
                let r = self.to_torsion.mul_vec(v);
                let ok = match slot {
                    0 => {
                        q == unit(self.q_rank, j)
                            && linalg::vec_is_zero(&t)
                            && linalg::vec_is_zero(&f)
                            && linalg::vec_is_zero(&r)
                    }
                    1 => {
                        linalg::vec_is_zero(&q)
                            && t == unit(self.torus_rank, j)
                            && linalg::vec_is_zero(&f)
                            && linalg::vec_is_zero(&r)
                    }
                    2 => {
                        linalg::vec_is_zero(&q)
                            && linalg::vec_is_integral(&t)
                            && f == unit(self.free_rank, j)
                            && self.torsion_residues_vanish(&r, None)
                    }
                    3 => {
                        linalg::vec_is_zero(&q)
                            && linalg::vec_is_integral(&t)
                            && linalg::vec_is_zero(&f)
                            && self.torsion_residues_vanish(&r, Some(j))
                    }
                    _ => unreachable!(),
                };
                if !ok {
                    return fail("to . from is not the identity on a model generator");
                }
            }
        }

        // from . to = identity on the numerator generators, modulo the
        // denominator (subspace generators: modulo the denominator subspace).
        for g in num.lattice_gens() {
            let r = linalg::vec_sub(g, &self.pull_back(g));
            if !den.contains(&r)? {
                return fail("from . to differs from the identity on a lattice generator");
            }
        }
        for w in num.subspace_gens() {
            let r = linalg::vec_sub(w, &self.pull_back(w));
            if !den.contains_line(&r)? {
                return fail("from . to differs from the identity on a subspace generator");
            }
        }
        Ok(())
    }

    fn torsion_residues_vanish(&self, r: &[Rat], except: Option<usize>) -> bool {
        for (i, d) in self.torsion.iter().enumerate() {
            let mut val = r[i].clone();
            if except == Some(i) {
                val -= Rat::one();
            }
            if !(val / Rat::from_integer(d.clone())).is_integer() {
                return false;
            }
        }
        true
    }

    /// `from(to(v))` as an ambient vector.
    fn pull_back(&self, v: &[Rat]) -> Vec<Rat> {
        let n = self.to_q.cols();
        let mut acc = vec![Rat::zero(); n];
        let mut add = |coeffs: Vec<Rat>, gens: &Vec<Vec<Rat>>| {
            for (c, g) in coeffs.iter().zip(gens) {
                if !c.is_zero() {
                    acc = linalg::vec_add(&acc, &linalg::vec_scale(c, g));
                }
            }
        };
        add(self.to_q.mul_vec(v), &self.from_q);
        add(self.to_torus.mul_vec(v), &self.from_torus);
        add(self.to_free.mul_vec(v), &self.from_free);
        add(self.to_torsion.mul_vec(v), &self.from_torsion);
        acc
    }
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// Reduce a generating set of a lattice of rational vectors to a basis,
/// via Hermite reduction of the scaled integer rows.
fn lattice_basis(gens: &[Vec<Rat>], ambient: usize) -> Vec<Vec<Rat>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let rows = Mat::from_rows(gens.to_vec());
    let (rows_int, den) = rows.clear_denominators();
    let (basis, _) = lattice_row_basis(&rows_int);
    let d = Rat::from_integer(den);
    (0..basis.rows())
        .map(|i| basis.row(i).iter().map(|x| Rat::from_integer(x.clone()) / &d).collect())
        .filter(|v: &Vec<Rat>| v.len() == ambient)
        .collect()
}

/// Canonical decomposition with witnesses. Deterministic; fails loudly (with
/// `DecomposeFailure`) if an internal splitting step cannot complete, which
/// for a valid subquotient indicates a bug rather than a representable case.
pub fn decompose(sq: &Subquotient) -> Result<Decomposition, MixedError> {
    let n = sq.ambient_dim();
    let num = sq.numerator();
    let den = sq.denominator();
    let internal = |msg: &str| MixedError::DecomposeFailure(msg.to_string());

    // Stage A: project away the denominator subspace.
    let vd = Mat::from_columns(n, den.subspace_gens());
    let (p0, s0) = complement_projection(&vd, n);
    let n1 = p0.rows();

    let num_lat: Vec<Vec<Rat>> = num.lattice_gens().iter().map(|g| p0.mul_vec(g)).collect();
    let num_sub: Vec<Vec<Rat>> = num.subspace_gens().iter().map(|g| p0.mul_vec(g)).collect();
    let den_lat: Vec<Vec<Rat>> = den.lattice_gens().iter().map(|g| p0.mul_vec(g)).collect();

    // Stage B1: the denominator lattice meeting the numerator subspace gives
    // the torus directions.
    let v1_mat = Mat::from_columns(n1, &num_sub);
    let v1_cols = independent_columns(&v1_mat);
    let v1_basis: Vec<Vec<Rat>> = v1_cols.iter().map(|&j| v1_mat.column(j)).collect();

    let dl_mat = Mat::from_columns(n1, &den_lat);
    let neg_v1 = Mat::from_columns(n1, &v1_basis).map(|t| -t.clone());
    let meet = linalg::mixed_kernel(&dl_mat, &neg_v1)?;
    let torus_gens_raw: Vec<Vec<Rat>> = meet
        .lattice
        .iter()
        .map(|coeffs| dl_mat.mul_vec(&coeffs[..den_lat.len()]))
        .collect();
    let g_basis = lattice_basis(&torus_gens_raw, n1);
    let t_rank = g_basis.len();

    // Stage B2: complete the torus directions to a basis of the numerator
    // subspace; the complement carries the Q^a part.
    let mut bv_cols: Vec<Vec<Rat>> = g_basis.clone();
    let mut u_basis: Vec<Vec<Rat>> = Vec::new();
    for cand in &v1_basis {
        let span = Mat::from_columns(n1, &bv_cols);
        if bv_cols.is_empty() || !subspace_contains(&span, cand) {
            bv_cols.push(cand.clone());
            u_basis.push(cand.clone());
        }
    }
    let a_rank = u_basis.len();
    let m_dim = t_rank + a_rank;

    // Stage B3: quotient by the numerator subspace; the image lattice is
    // finitely generated free and receives the denominator integrally.
    let bv = Mat::from_columns(n1, &bv_cols);
    let (p1, _s1) = complement_projection(&bv, n1);
    let n2 = p1.rows();

    let lam_bar: Vec<Vec<Rat>> = num_lat.iter().map(|g| p1.mul_vec(g)).collect();
    let (f_basis, f_expr): (Vec<Vec<Rat>>, RatMat) = if lam_bar.is_empty() {
        (Vec::new(), RatMat::zeros(0, 0))
    } else {
        let rows = Mat::from_rows(lam_bar.clone());
        let (rows_int, dlcm) = rows.clear_denominators();
        let (basis, expr) = lattice_row_basis(&rows_int);
        let d = Rat::from_integer(dlcm);
        let fb: Vec<Vec<Rat>> = (0..basis.rows())
            .map(|i| basis.row(i).iter().map(|x| Rat::from_integer(x.clone()) / &d).collect())
            .collect();
        (fb, expr.to_rational())
    };
    let s_rank = f_basis.len();

    // Lifts of the free basis back into the numerator.
    let lam1_mat = Mat::from_columns(n1, &num_lat);
    let lifts_f: Vec<Vec<Rat>> = (0..s_rank).map(|k| lam1_mat.mul_vec(&f_expr.row(k))).collect();

    // Coordinates of the denominator lattice in the free basis; integrality
    // here is exactly containment of the denominator.
    let f_mat = Mat::from_columns(n2, &f_basis);
    let phi_f = if s_rank == 0 {
        RatMat::zeros(0, n2)
    } else {
        left_inverse(&f_mat).ok_or_else(|| internal("free basis lost column rank"))?
    };
    let mut m_coords = RatMat::zeros(s_rank, den_lat.len());
    for (j, d) in den_lat.iter().enumerate() {
        let pd = p1.mul_vec(d);
        let coords = phi_f.mul_vec(&pd);
        let back = f_mat.mul_vec(&coords);
        if back != pd {
            return Err(internal("denominator does not lie in the numerator lattice"));
        }
        for (i, c) in coords.iter().enumerate() {
            if !c.is_integer() {
                return Err(internal("denominator has non-integral lattice coordinates"));
            }
            m_coords[(i, j)] = c.clone();
        }
    }
    let m_int = m_coords.to_integer()?;
    let snf = smith_normal_form(&m_int);
    let r_rank = snf.rank();
    let u_inv_rat =
        inverse(&snf.u.to_rational()).ok_or_else(|| internal("unimodular inverse failed"))?;
    let u_inv = u_inv_rat.to_integer()?;

    // New basis f' with the denominator diagonal on it, plus lifts.
    let mut lift_vectors: Vec<Vec<Rat>> = Vec::with_capacity(s_rank);
    let mut divisors: Vec<Int> = Vec::with_capacity(s_rank);
    for i in 0..s_rank {
        // lift of f'_i = sum_k uinv[k][i] * lift(f_k)
        let mut lift = vec![Rat::zero(); n1];
        for k in 0..s_rank {
            let c = Rat::from_integer(u_inv[(k, i)].clone());
            if !c.is_zero() {
                lift = linalg::vec_add(&lift, &linalg::vec_scale(&c, &lifts_f[k]));
            }
        }
        if i < r_rank {
            let d_i = snf.d[(i, i)].clone();
            // denominator element mapping onto d_i * f'_i
            let mut delta = vec![Rat::zero(); n1];
            for (j, dgen) in den_lat.iter().enumerate() {
                let c = Rat::from_integer(snf.v[(j, i)].clone());
                if !c.is_zero() {
                    delta = linalg::vec_add(&delta, &linalg::vec_scale(&c, dgen));
                }
            }
            let d_rat = Rat::from_integer(d_i.clone());
            let vi = linalg::vec_sub(&linalg::vec_scale(&d_rat, &lift), &delta);
            if !linalg::vec_is_zero(&p1.mul_vec(&vi)) {
                return Err(internal("torsion correction left the subspace"));
            }
            let corrected = linalg::vec_sub(&lift, &linalg::vec_scale(&(Rat::one() / &d_rat), &vi));
            lift_vectors.push(corrected);
            divisors.push(d_i);
        } else {
            lift_vectors.push(lift);
            divisors.push(Int::zero());
        }
    }

    // Coordinates in the f' basis: coords' = U * (coords in the f basis).
    let gamma = if s_rank == 0 {
        RatMat::zeros(0, n1)
    } else {
        snf.u.to_rational().mul(&phi_f).mul(&p1)
    };

    // w(v) = v - Lifts * gamma(v) lands in the numerator subspace for v in N.
    let lifts_mat = Mat::from_columns(n1, &lift_vectors);
    let w_map = RatMat::identity(n1).sub(&lifts_mat.mul(&gamma));

    let psi = if m_dim == 0 {
        RatMat::zeros(0, n1)
    } else {
        left_inverse(&bv).ok_or_else(|| internal("subspace basis lost column rank"))?
    };
    let psi_w = psi.mul(&w_map);

    // Assemble the final maps on the original ambient space.
    let rows_of = |mat: &RatMat, range: std::ops::Range<usize>| -> RatMat {
        let mut out = RatMat::zeros(range.len(), mat.cols());
        for (k, i) in range.enumerate() {
            for j in 0..mat.cols() {
                out[(k, j)] = mat[(i, j)].clone();
            }
        }
        out
    };
    let to_torus = rows_of(&psi_w, 0..t_rank).mul(&p0);
    let to_q = rows_of(&psi_w, t_rank..m_dim).mul(&p0);

    let mut free_rows = Vec::new();
    let mut torsion_rows = Vec::new();
    let mut torsion = Vec::new();
    let mut from_free = Vec::new();
    let mut from_torsion = Vec::new();
    for i in 0..s_rank {
        let lifted = s0.mul_vec(&lift_vectors[i]);
        if divisors[i].is_zero() {
            free_rows.push(i);
            from_free.push(lifted);
        } else if divisors[i] > Int::one() {
            torsion_rows.push(i);
            torsion.push(divisors[i].clone());
            from_torsion.push(lifted);
        }
        // divisor 1: the class is trivial; it still participates in gamma.
    }
    let gamma0 = gamma.mul(&p0);
    let mut to_free = RatMat::zeros(free_rows.len(), n);
    for (k, &i) in free_rows.iter().enumerate() {
        for j in 0..n {
            to_free[(k, j)] = gamma0[(i, j)].clone();
        }
    }
    let mut to_torsion = RatMat::zeros(torsion_rows.len(), n);
    for (k, &i) in torsion_rows.iter().enumerate() {
        for j in 0..n {
            to_torsion[(k, j)] = gamma0[(i, j)].clone();
        }
    }

    let from_q: Vec<Vec<Rat>> = u_basis.iter().map(|u| s0.mul_vec(u)).collect();
    let from_torus: Vec<Vec<Rat>> = g_basis.iter().map(|g| s0.mul_vec(g)).collect();

    let dec = Decomposition {
        q_rank: a_rank,
        torus_rank: t_rank,
        free_rank: free_rows.len(),
        torsion,
        to_q,
        to_torus,
        to_free,
        to_torsion,
        from_q,
        from_torus,
        from_free,
        from_torsion,
    };
    dec.verify(sq)?;
    Ok(dec)
}
