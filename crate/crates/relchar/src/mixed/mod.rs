//! Subgroups of Q^N of the shape (finitely generated lattice) + (Q-subspace),
//! their subquotients, and maps between them.
//!
//! Every group handled by the library is represented this way, by explicit
//! generator lists. Membership, and with it every predicate below, reduces to
//! [`solve_mixed`]. A rational line `Q v` lies in such a group exactly when
//! `v` lies in the subspace part: the image of a divisible group in a
//! finitely generated one is trivial. That observation is what makes the
//! generator checks below complete, not just sound.

mod decompose;

pub use decompose::{decompose, Decomposition};

use crate::linalg::{
    self, mixed_kernel, vec_is_zero, LinalgError, Mat, PreparedSolver, Rat, RatMat,
};
use num_traits::{One, Zero};
use std::sync::{Arc, OnceLock};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MixedError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("denominator is not contained in the numerator")]
    ContainmentViolation,
    #[error("map does not respect the subquotient structure: {0}")]
    NotInduced(String),
    #[error("decompose failed: {0}")]
    DecomposeFailure(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `Z-span(lattice) + Q-span(subspace)` inside `Q^ambient`.
///
/// The group lazily caches a prefactored membership solver; clones share it.
#[derive(Debug, Clone)]
pub struct MixedSubgroup {
    ambient: usize,
    lattice: Vec<Vec<Rat>>,
    subspace: Vec<Vec<Rat>>,
    solver: Arc<OnceLock<PreparedSolver>>,
}

impl PartialEq for MixedSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.lattice == other.lattice
            && self.subspace == other.subspace
    }
}

impl Eq for MixedSubgroup {}

impl MixedSubgroup {
    pub fn new(
        ambient: usize,
        lattice: Vec<Vec<Rat>>,
        subspace: Vec<Vec<Rat>>,
    ) -> Result<Self, MixedError> {
        for g in lattice.iter().chain(subspace.iter()) {
            if g.len() != ambient {
                return Err(MixedError::DimensionMismatch(format!(
                    "generator length {} in ambient {}",
                    g.len(),
                    ambient
                )));
            }
        }
        Ok(MixedSubgroup { ambient, lattice, subspace, solver: Arc::new(OnceLock::new()) })
    }

    fn from_parts(ambient: usize, lattice: Vec<Vec<Rat>>, subspace: Vec<Vec<Rat>>) -> Self {
        MixedSubgroup { ambient, lattice, subspace, solver: Arc::new(OnceLock::new()) }
    }

    fn solver(&self) -> &PreparedSolver {
        self.solver.get_or_init(|| PreparedSolver::new(self.ambient, &self.lattice, &self.subspace))
    }

    pub fn zero(ambient: usize) -> Self {
        Self::from_parts(ambient, Vec::new(), Vec::new())
    }

    /// The standard lattice `Z^n`.
    pub fn full_lattice(ambient: usize) -> Self {
        let lattice = (0..ambient).map(|i| std_vec(ambient, i)).collect();
        Self::from_parts(ambient, lattice, Vec::new())
    }

    /// The whole space `Q^n`.
    pub fn full_space(ambient: usize) -> Self {
        let subspace = (0..ambient).map(|i| std_vec(ambient, i)).collect();
        Self::from_parts(ambient, Vec::new(), subspace)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn lattice_gens(&self) -> &[Vec<Rat>] {
        &self.lattice
    }

    pub fn subspace_gens(&self) -> &[Vec<Rat>] {
        &self.subspace
    }

    pub fn is_zero_group(&self) -> Result<bool, MixedError> {
        Ok(self.lattice.iter().chain(self.subspace.iter()).all(|g| vec_is_zero(g)))
    }

    pub fn lattice_matrix(&self) -> RatMat {
        Mat::from_columns(self.ambient, &self.lattice)
    }

    pub fn subspace_matrix(&self) -> RatMat {
        Mat::from_columns(self.ambient, &self.subspace)
    }

    fn check_ambient(&self, other: &MixedSubgroup) -> Result<(), MixedError> {
        if self.ambient != other.ambient {
            return Err(MixedError::DimensionMismatch(format!(
                "ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    fn check_vec(&self, v: &[Rat]) -> Result<(), MixedError> {
        if v.len() != self.ambient {
            return Err(MixedError::DimensionMismatch(format!(
                "vector length {} in ambient {}",
                v.len(),
                self.ambient
            )));
        }
        Ok(())
    }

    /// Membership of a single element.
    pub fn contains(&self, v: &[Rat]) -> Result<bool, MixedError> {
        self.check_vec(v)?;
        Ok(self.solver().solve(v)?.is_some())
    }

    /// Membership with an explicit witness `(x, y)`, `v = L x + W y`.
    pub fn express(&self, v: &[Rat]) -> Result<linalg::MixedSolution, MixedError> {
        self.check_vec(v)?;
        Ok(self.solver().solve(v)?)
    }

    /// Whether the whole line `Q v` lies in the group, equivalently whether
    /// `v` lies in the subspace part.
    pub fn contains_line(&self, v: &[Rat]) -> Result<bool, MixedError> {
        self.check_vec(v)?;
        if vec_is_zero(v) {
            return Ok(true);
        }
        if self.subspace.is_empty() {
            return Ok(false);
        }
        Ok(self.solver().in_subspace(v))
    }

    /// Generator-wise subgroup containment `other <= self`. Lattice
    /// generators are tested as elements, subspace generators as lines.
    pub fn contains_subgroup(&self, other: &MixedSubgroup) -> Result<bool, MixedError> {
        self.check_ambient(other)?;
        for g in &other.lattice {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        for w in &other.subspace {
            if !self.contains_line(w)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn subgroups_equal(&self, other: &MixedSubgroup) -> Result<bool, MixedError> {
        Ok(self.contains_subgroup(other)? && other.contains_subgroup(self)?)
    }

    /// Sum of subgroups: concatenated generators.
    pub fn sum(&self, other: &MixedSubgroup) -> Result<MixedSubgroup, MixedError> {
        self.check_ambient(other)?;
        let mut lattice = self.lattice.clone();
        lattice.extend(other.lattice.iter().cloned());
        let mut subspace = self.subspace.clone();
        subspace.extend(other.subspace.iter().cloned());
        Ok(Self::from_parts(self.ambient, lattice, subspace))
    }

    /// Image under a linear map given by `a` (columns = ambient of `self`).
    pub fn image_of(&self, a: &RatMat) -> Result<MixedSubgroup, MixedError> {
        if a.cols() != self.ambient {
            return Err(MixedError::DimensionMismatch(format!(
                "map with {} columns applied in ambient {}",
                a.cols(),
                self.ambient
            )));
        }
        Ok(Self::from_parts(
            a.rows(),
            self.lattice.iter().map(|g| a.mul_vec(g)).collect(),
            self.subspace.iter().map(|g| a.mul_vec(g)).collect(),
        ))
    }

    /// `{v in G : a v = 0}`, presented again as lattice + subspace.
    pub fn kernel_within(&self, a: &RatMat) -> Result<MixedSubgroup, MixedError> {
        if a.cols() != self.ambient {
            return Err(MixedError::DimensionMismatch(format!(
                "map with {} columns applied in ambient {}",
                a.cols(),
                self.ambient
            )));
        }
        let al = a.mul(&self.lattice_matrix());
        let aw = a.mul(&self.subspace_matrix());
        let k = mixed_kernel(&al, &aw)?;
        let nl = self.lattice.len();
        let to_ambient = |coeffs: &Vec<Rat>| -> Vec<Rat> {
            let lm = self.lattice_matrix();
            let wm = self.subspace_matrix();
            let lx = lm.mul_vec(&coeffs[..nl]);
            let wy = wm.mul_vec(&coeffs[nl..]);
            linalg::vec_add(&lx, &wy)
        };
        Ok(Self::from_parts(
            self.ambient,
            k.lattice.iter().map(to_ambient).collect(),
            k.subspace.iter().map(to_ambient).collect(),
        ))
    }

    /// `{v : a v in self}` inside `Q^(a.cols())`.
    pub fn preimage_of(&self, a: &RatMat) -> Result<MixedSubgroup, MixedError> {
        if a.rows() != self.ambient {
            return Err(MixedError::DimensionMismatch(format!(
                "map with {} rows into ambient {}",
                a.rows(),
                self.ambient
            )));
        }
        let source_dim = a.cols();
        // Solve a v = L x + W y: integer variables x, rational variables (v, y).
        let int_side = self.lattice_matrix().map(|t| -t.clone());
        let rat_side = a.hstack(&self.subspace_matrix().map(|t| -t.clone()));
        let k = mixed_kernel(&int_side, &rat_side)?;
        let nl = self.lattice.len();
        let project = |coeffs: &Vec<Rat>| coeffs[nl..nl + source_dim].to_vec();
        Ok(Self::from_parts(
            source_dim,
            k.lattice.iter().map(project).collect(),
            k.subspace.iter().map(project).collect(),
        ))
    }

    /// Intersection: kernel of the difference map on the product coefficient
    /// space, pushed back through the presentation of `self`.
    pub fn intersect(&self, other: &MixedSubgroup) -> Result<MixedSubgroup, MixedError> {
        self.check_ambient(other)?;
        let int_side = self.lattice_matrix().hstack(&other.lattice_matrix().map(|t| -t.clone()));
        let rat_side = self.subspace_matrix().hstack(&other.subspace_matrix().map(|t| -t.clone()));
        let k = mixed_kernel(&int_side, &rat_side)?;
        let nl_self = self.lattice.len();
        let nl_other = other.lattice.len();
        let ns_self = self.subspace.len();
        let to_ambient = |coeffs: &Vec<Rat>| -> Vec<Rat> {
            let x_self = &coeffs[..nl_self];
            let y_self = &coeffs[nl_self + nl_other..nl_self + nl_other + ns_self];
            let lx = self.lattice_matrix().mul_vec(x_self);
            let wy = self.subspace_matrix().mul_vec(y_self);
            linalg::vec_add(&lx, &wy)
        };
        Ok(Self::from_parts(
            self.ambient,
            k.lattice.iter().map(to_ambient).collect(),
            k.subspace.iter().map(to_ambient).collect(),
        ))
    }

    /// Push the group through a coordinate embedding: places the ambient of
    /// `self` into a larger space at `offset`.
    pub fn embed(&self, total: usize, offset: usize) -> MixedSubgroup {
        assert!(offset + self.ambient <= total);
        let pad = |g: &Vec<Rat>| -> Vec<Rat> {
            let mut v = vec![Rat::zero(); total];
            v[offset..offset + self.ambient].clone_from_slice(g);
            v
        };
        Self::from_parts(
            total,
            self.lattice.iter().map(pad).collect(),
            self.subspace.iter().map(pad).collect(),
        )
    }
}

pub fn std_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// A numerator/denominator pair of mixed subgroups; the value is the quotient
/// group numerator/denominator.
#[derive(Debug, Clone)]
pub struct Subquotient {
    numerator: MixedSubgroup,
    denominator: MixedSubgroup,
}

impl Subquotient {
    pub fn new(numerator: MixedSubgroup, denominator: MixedSubgroup) -> Result<Self, MixedError> {
        numerator.check_ambient(&denominator)?;
        if !numerator.contains_subgroup(&denominator)? {
            return Err(MixedError::ContainmentViolation);
        }
        Ok(Subquotient { numerator, denominator })
    }

    /// A group viewed as a subquotient with zero denominator.
    pub fn from_group(g: MixedSubgroup) -> Self {
        let z = MixedSubgroup::zero(g.ambient_dim());
        Subquotient { numerator: g, denominator: z }
    }

    pub fn zero(ambient: usize) -> Self {
        Subquotient {
            numerator: MixedSubgroup::zero(ambient),
            denominator: MixedSubgroup::zero(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.numerator.ambient_dim()
    }

    pub fn numerator(&self) -> &MixedSubgroup {
        &self.numerator
    }

    pub fn denominator(&self) -> &MixedSubgroup {
        &self.denominator
    }

    /// Whether the class of `v` is zero, i.e. `v` lies in the denominator.
    pub fn class_is_zero(&self, v: &[Rat]) -> Result<bool, MixedError> {
        self.denominator.contains(v)
    }

    /// Group-level equality of both numerator and denominator.
    pub fn equal_as_subquotients(&self, other: &Subquotient) -> Result<bool, MixedError> {
        Ok(self.numerator.subgroups_equal(&other.numerator)?
            && self.denominator.subgroups_equal(&other.denominator)?)
    }

    /// The quotient is zero exactly when the numerator sits inside the
    /// denominator.
    pub fn is_zero_quotient(&self) -> Result<bool, MixedError> {
        self.denominator.contains_subgroup(&self.numerator)
    }
}

/// A homomorphism of subquotients given by a matrix on the ambient spaces.
/// Construction verifies, generator by generator, that the numerator maps
/// into the numerator and the denominator into the denominator.
#[derive(Debug, Clone)]
pub struct InducedMap {
    source: Subquotient,
    target: Subquotient,
    matrix: RatMat,
}

impl InducedMap {
    pub fn new(
        source: Subquotient,
        target: Subquotient,
        matrix: RatMat,
    ) -> Result<Self, MixedError> {
        if matrix.cols() != source.ambient_dim() || matrix.rows() != target.ambient_dim() {
            return Err(MixedError::DimensionMismatch(format!(
                "matrix {}x{} between ambients {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.ambient_dim(),
                target.ambient_dim()
            )));
        }
        for g in source.numerator.lattice_gens() {
            if !target.numerator.contains(&matrix.mul_vec(g))? {
                return Err(MixedError::NotInduced("lattice generator leaves the numerator".into()));
            }
        }
        for w in source.numerator.subspace_gens() {
            if !target.numerator.contains_line(&matrix.mul_vec(w))? {
                return Err(MixedError::NotInduced(
                    "subspace generator leaves the numerator".into(),
                ));
            }
        }
        for g in source.denominator.lattice_gens() {
            if !target.denominator.contains(&matrix.mul_vec(g))? {
                return Err(MixedError::NotInduced(
                    "lattice generator leaves the denominator".into(),
                ));
            }
        }
        for w in source.denominator.subspace_gens() {
            if !target.denominator.contains_line(&matrix.mul_vec(w))? {
                return Err(MixedError::NotInduced(
                    "subspace generator leaves the denominator".into(),
                ));
            }
        }
        Ok(InducedMap { source, target, matrix })
    }

    pub fn source(&self) -> &Subquotient {
        &self.source
    }

    pub fn target(&self) -> &Subquotient {
        &self.target
    }

    pub fn matrix(&self) -> &RatMat {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.matrix.mul_vec(v)
    }

    /// The subgroup of the source numerator inducing zero in the target,
    /// i.e. the kernel of the induced map on quotients.
    pub fn kernel_group(&self) -> Result<MixedSubgroup, MixedError> {
        let pre = self.target.denominator.preimage_of(&self.matrix)?;
        self.source.numerator.intersect(&pre)
    }

    /// Image of the source numerator as a subgroup of the target ambient.
    pub fn image_group(&self) -> Result<MixedSubgroup, MixedError> {
        self.source.numerator.image_of(&self.matrix)
    }

    /// Zero as a map of subquotients.
    pub fn is_zero_induced(&self) -> Result<bool, MixedError> {
        for g in self.source.numerator.lattice_gens() {
            if !self.target.denominator.contains(&self.matrix.mul_vec(g))? {
                return Ok(false);
            }
        }
        for w in self.source.numerator.subspace_gens() {
            if !self.target.denominator.contains_line(&self.matrix.mul_vec(w))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Injectivity of the induced map: kernel contained in the source
    /// denominator.
    pub fn is_injective_induced(&self) -> Result<bool, MixedError> {
        self.source.denominator.contains_subgroup(&self.kernel_group()?)
    }

    /// Surjectivity of the induced map: target numerator inside
    /// image + target denominator.
    pub fn is_surjective_induced(&self) -> Result<bool, MixedError> {
        let img = self.image_group()?.sum(&self.target.denominator)?;
        img.contains_subgroup(&self.target.numerator)
    }

    pub fn is_isomorphism_induced(&self) -> Result<bool, MixedError> {
        Ok(self.is_injective_induced()? && self.is_surjective_induced()?)
    }

    pub fn compose_after(&self, first: &InducedMap) -> Result<InducedMap, MixedError> {
        InducedMap::new(
            first.source.clone(),
            self.target.clone(),
            self.matrix.mul(&first.matrix),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    fn g_mixed() -> MixedSubgroup {
        // Z(1,0) + Q(0,1)
        MixedSubgroup::new(
            2,
            vec![vec![rat(1), rat(0)]],
            vec![vec![rat(0), rat(1)]],
        )
        .unwrap()
    }

    #[test]
    fn contains_examples() {
        let g = g_mixed();
        assert!(g.contains(&[rat(3), ratio(-5, 2)]).unwrap());
        assert!(!g.contains(&[ratio(1, 2), ratio(7, 3)]).unwrap());
        assert!(g.contains(&[rat(0), rat(0)]).unwrap());
    }

    #[test]
    fn dimension_mismatch_detected() {
        let g = g_mixed();
        assert!(matches!(g.contains(&[rat(1)]), Err(MixedError::DimensionMismatch(_))));
    }

    #[test]
    fn intersect_line_with_diagonal_lattice() {
        let line = MixedSubgroup::new(2, vec![], vec![vec![rat(1), rat(0)]]).unwrap();
        let diag = MixedSubgroup::new(2, vec![vec![rat(1), rat(1)]], vec![]).unwrap();
        let i = line.intersect(&diag).unwrap();
        assert!(i.is_zero_group().unwrap());
    }

    #[test]
    fn sum_with_zero_and_self_intersection() {
        let g = g_mixed();
        let s = g.sum(&MixedSubgroup::zero(2)).unwrap();
        assert!(s.subgroups_equal(&g).unwrap());
        let i = g.intersect(&g).unwrap();
        assert!(i.subgroups_equal(&g).unwrap());
    }

    #[test]
    fn kernel_and_image_edge_cases() {
        let g = g_mixed();
        let zero_map = RatMat::zeros(1, 2);
        assert!(g.kernel_within(&zero_map).unwrap().subgroups_equal(&g).unwrap());
        let a = Mat::from_rows(vec![vec![rat(1), rat(1)]]);
        assert!(MixedSubgroup::zero(2).image_of(&a).unwrap().is_zero_group().unwrap());
    }

    #[test]
    fn integer_kernel_of_sum_map_within_lattice() {
        let z2 = MixedSubgroup::full_lattice(2);
        let a = Mat::from_rows(vec![vec![rat(1), rat(1)]]);
        let k = z2.kernel_within(&a).unwrap();
        let expected =
            MixedSubgroup::new(2, vec![vec![rat(1), rat(-1)]], vec![]).unwrap();
        assert!(k.subgroups_equal(&expected).unwrap());
    }

    #[test]
    fn subgroups_equal_examples() {
        let g1 = MixedSubgroup::new(
            2,
            vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
            vec![],
        )
        .unwrap();
        let permuted = MixedSubgroup::new(
            2,
            vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]],
            vec![],
        )
        .unwrap();
        assert!(g1.subgroups_equal(&permuted).unwrap());

        let double = MixedSubgroup::new(2, vec![vec![rat(2), rat(0)]], vec![]).unwrap();
        let single = MixedSubgroup::new(2, vec![vec![rat(1), rat(0)]], vec![]).unwrap();
        assert!(!double.subgroups_equal(&single).unwrap());

        let sheared = MixedSubgroup::new(
            2,
            vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]],
            vec![],
        )
        .unwrap();
        assert!(g1.subgroups_equal(&sheared).unwrap());
    }

    #[test]
    fn preimage_of_lattice_under_halving() {
        // {v : v/2 in Z} = 2Z
        let a = Mat::from_rows(vec![vec![ratio(1, 2)]]);
        let pre = MixedSubgroup::full_lattice(1).preimage_of(&a).unwrap();
        let two_z = MixedSubgroup::new(1, vec![vec![rat(2)]], vec![]).unwrap();
        assert!(pre.subgroups_equal(&two_z).unwrap());
    }

    #[test]
    fn closure_under_operations_returns_valid_groups() {
        let g = g_mixed();
        let h = MixedSubgroup::new(2, vec![vec![rat(1), rat(1)]], vec![]).unwrap();
        for result in [g.sum(&h).unwrap(), g.intersect(&h).unwrap()] {
            for gen in result.lattice_gens() {
                assert_eq!(gen.len(), 2);
            }
        }
    }

    #[test]
    fn subquotient_requires_containment() {
        let num = MixedSubgroup::new(1, vec![vec![rat(2)]], vec![]).unwrap();
        let den = MixedSubgroup::new(1, vec![vec![rat(1)]], vec![]).unwrap();
        assert!(matches!(
            Subquotient::new(num, den),
            Err(MixedError::ContainmentViolation)
        ));
    }

    #[test]
    fn induced_map_validation() {
        // multiplication by 2: Z -> Z is fine; 2Z into denominator Z works
        let z = Subquotient::from_group(MixedSubgroup::full_lattice(1));
        let m = Mat::from_rows(vec![vec![rat(2)]]);
        assert!(InducedMap::new(z.clone(), z.clone(), m).is_ok());
        // x -> x/2 does not map Z into Z
        let half = Mat::from_rows(vec![vec![ratio(1, 2)]]);
        assert!(InducedMap::new(z.clone(), z, half).is_err());
    }
}
