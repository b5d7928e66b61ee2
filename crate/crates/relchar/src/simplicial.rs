//! Finite simplicial complexes, simplicial maps, their chain and cochain
//! complexes over Z and Q, and the mapping cone of a simplicial map.
//!
//! Orientation is fixed by increasing vertex order and a degenerate
//! simplicial image maps to the zero chain. Within each dimension the
//! simplices are kept in lexicographic order, which makes every matrix in
//! the library deterministic.

use crate::linalg::{integer_kernel, Int, IntMat, Rat, RatMat};
use crate::mixed::{decompose, Decomposition, MixedError, MixedSubgroup, Subquotient};
use num_traits::{One, Zero};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplicialError {
    #[error("invalid simplex {0:?}: vertices must be strictly increasing and within bounds")]
    InvalidSimplex(Vec<usize>),
    #[error("degree {degree} out of range for a complex of dimension {dim}")]
    DegreeOutOfRange { degree: isize, dim: isize },
    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),
    #[error("chain has wrong length: expected {expected}, got {got}")]
    ChainLength { expected: usize, got: usize },
    #[error(transparent)]
    Mixed(#[from] MixedError),
}

/// A finite simplicial complex on vertices `0..vertex_count`, closed under
/// faces. Vertices not appearing in any simplex are allowed as labels but do
/// not contribute cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// simplices[k] = lexicographically sorted k-simplices
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Build from any set of simplices; faces are added automatically.
    pub fn new(vertex_count: usize, simplices: &[Vec<usize>]) -> Result<Self, SimplicialError> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in simplices {
            if s.is_empty()
                || s.windows(2).any(|w| w[0] >= w[1])
                || *s.last().unwrap() >= vertex_count
            {
                return Err(SimplicialError::InvalidSimplex(s.clone()));
            }
            // every nonempty subset is a face; enumerate by bitmask
            let n = s.len();
            for mask in 1u32..(1 << n) {
                let face: Vec<usize> =
                    (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                all.insert(face);
            }
        }
        let dim = all.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim];
        for s in all {
            by_dim[s.len() - 1].push(s);
        }
        for level in &mut by_dim {
            level.sort();
        }
        Ok(SimplicialComplex { vertex_count, simplices: by_dim })
    }

    pub fn empty() -> Self {
        SimplicialComplex { vertex_count: 0, simplices: Vec::new() }
    }

    pub fn point() -> Self {
        SimplicialComplex::new(1, &[vec![0]]).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Dimension; -1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    pub fn simplices(&self, k: isize) -> &[Vec<usize>] {
        if k < 0 || k as usize >= self.simplices.len() {
            return &[];
        }
        &self.simplices[k as usize]
    }

    pub fn num_simplices(&self, k: isize) -> usize {
        self.simplices(k).len()
    }

    pub fn simplex_index(&self, simplex: &[usize]) -> Option<usize> {
        let k = simplex.len() as isize - 1;
        self.simplices(k).binary_search_by(|s| s.as_slice().cmp(simplex)).ok()
    }

    /// Boundary matrix from k-chains to (k-1)-chains, alternating signs on
    /// the faces of each increasing simplex. For k = 0 this is the map to the
    /// zero group.
    pub fn boundary_matrix(&self, k: isize) -> Result<IntMat, SimplicialError> {
        if k < 0 || k > self.dim() + 1 {
            return Err(SimplicialError::DegreeOutOfRange { degree: k, dim: self.dim() });
        }
        let rows = self.num_simplices(k - 1);
        let cols = self.num_simplices(k);
        let mut m = IntMat::zeros(rows, cols);
        if k == 0 {
            return Ok(m);
        }
        for (j, s) in self.simplices(k).iter().enumerate() {
            for drop in 0..s.len() {
                let mut face = s.clone();
                face.remove(drop);
                let i = self.simplex_index(&face).expect("complex closed under faces");
                let sign = if drop % 2 == 0 { Int::one() } else { -Int::one() };
                m[(i, j)] = sign;
            }
        }
        Ok(m)
    }

    /// Coboundary from k-cochains to (k+1)-cochains: the transpose of the
    /// boundary one degree up.
    pub fn coboundary_matrix(&self, k: isize) -> RatMat {
        let b = self
            .boundary_matrix(k + 1)
            .unwrap_or_else(|_| IntMat::zeros(self.num_simplices(k), 0));
        b.transpose().to_rational()
    }

    /// Basis of the integer cycle lattice in degree k, as columns.
    pub fn cycle_lattice(&self, k: isize) -> Vec<Vec<Int>> {
        match self.boundary_matrix(k) {
            Ok(b) => integer_kernel(&b),
            Err(_) => Vec::new(),
        }
    }

    /// Integral homology via Smith reduction of the boundary pair.
    pub fn integral_homology(&self, k: isize) -> Result<Decomposition, SimplicialError> {
        let n = self.num_simplices(k);
        let cycles: Vec<Vec<Rat>> = self
            .cycle_lattice(k)
            .iter()
            .map(|v| v.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        let boundaries: Vec<Vec<Rat>> = match self.boundary_matrix(k + 1) {
            Ok(b) => b.to_rational().columns(),
            Err(_) => Vec::new(),
        };
        let num = MixedSubgroup::new(n, cycles, Vec::new())?;
        let den = MixedSubgroup::new(n, boundaries, Vec::new())?;
        Ok(decompose(&Subquotient::new(num, den)?)?)
    }
}

/// A simplicial map, stored with owned copies of its source and target.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: Vec<usize>,
    ) -> Result<Self, SimplicialError> {
        if vertex_map.len() != source.vertex_count() {
            return Err(SimplicialError::NotSimplicial(format!(
                "vertex_map length {} vs {} source vertices",
                vertex_map.len(),
                source.vertex_count()
            )));
        }
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= target.vertex_count()) {
            return Err(SimplicialError::NotSimplicial(format!(
                "vertex image {} outside target",
                v
            )));
        }
        for k in 0..=source.dim().max(0) {
            for s in source.simplices(k) {
                let mut image: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
                image.sort_unstable();
                image.dedup();
                if target.simplex_index(&image).is_none() {
                    return Err(SimplicialError::NotSimplicial(format!(
                        "image of {:?} does not span a simplex",
                        s
                    )));
                }
            }
        }
        Ok(SimplicialMap { source, target, vertex_map })
    }

    /// The identity map of a complex.
    pub fn identity(k: &SimplicialComplex) -> Self {
        SimplicialMap {
            source: k.clone(),
            target: k.clone(),
            vertex_map: (0..k.vertex_count()).collect(),
        }
    }

    /// The unique map from the empty complex.
    pub fn from_empty(target: SimplicialComplex) -> Self {
        SimplicialMap { source: SimplicialComplex::empty(), target, vertex_map: Vec::new() }
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// Chain map rho_*: C_k(A) -> C_k(M). Degenerate images contribute zero;
    /// otherwise the sign is that of the permutation sorting the images.
    pub fn chain_map(&self, k: isize) -> IntMat {
        let rows = self.target.num_simplices(k);
        let cols = self.source.num_simplices(k);
        let mut m = IntMat::zeros(rows, cols);
        for (j, s) in self.source.simplices(k).iter().enumerate() {
            let image: Vec<usize> = s.iter().map(|&v| self.vertex_map[v]).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let sign = permutation_sign(&image);
            let i = self.target.simplex_index(&sorted).expect("simplicial image");
            m[(i, j)] = sign;
        }
        m
    }

    /// Cochain pullback rho^*: C^k(M) -> C^k(A), the transpose of the chain map.
    pub fn pullback(&self, k: isize) -> RatMat {
        self.chain_map(k).transpose().to_rational()
    }
}

fn permutation_sign(seq: &[usize]) -> Int {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        Int::one()
    } else {
        -Int::one()
    }
}

/// A k-chain of the mapping cone: a pair (sigma, tau) with sigma a k-chain of
/// the target and tau a (k-1)-chain of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPair {
    pub degree: isize,
    pub sigma: Vec<Int>,
    pub tau: Vec<Int>,
}

impl ChainPair {
    pub fn zero(rho: &SimplicialMap, degree: isize) -> Self {
        ChainPair {
            degree,
            sigma: vec![Int::zero(); rho.target().num_simplices(degree)],
            tau: vec![Int::zero(); rho.source().num_simplices(degree - 1)],
        }
    }

    pub fn to_vector(&self) -> Vec<Int> {
        let mut v = self.sigma.clone();
        v.extend(self.tau.iter().cloned());
        v
    }

    pub fn to_rational(&self) -> Vec<Rat> {
        self.to_vector().iter().map(|x| Rat::from_integer(x.clone())).collect()
    }
}

/// The mapping cone chain complex C_k(rho) = C_k(M) x C_{k-1}(A) with
/// boundary (sigma, tau) -> (d sigma + rho_* tau, -d tau).
#[derive(Debug, Clone)]
pub struct ConeComplex {
    rho: SimplicialMap,
}

impl ConeComplex {
    pub fn new(rho: &SimplicialMap) -> Self {
        ConeComplex { rho: rho.clone() }
    }

    pub fn rho(&self) -> &SimplicialMap {
        &self.rho
    }

    /// Largest degree in which the cone can have cells.
    pub fn max_degree(&self) -> isize {
        self.rho.target().dim().max(self.rho.source().dim() + 1)
    }

    pub fn chain_dim(&self, k: isize) -> usize {
        if k < 0 {
            return 0;
        }
        self.rho.target().num_simplices(k) + self.rho.source().num_simplices(k - 1)
    }

    /// Block boundary matrix of the cone in degree k.
    pub fn boundary_matrix(&self, k: isize) -> IntMat {
        let m_rows = self.rho.target().num_simplices(k - 1);
        let a_rows = self.rho.source().num_simplices(k - 2);
        let m_cols = self.rho.target().num_simplices(k);
        let a_cols = self.rho.source().num_simplices(k - 1);
        let mut out = IntMat::zeros(m_rows + a_rows, m_cols + a_cols);
        if k >= 0 {
            if let Ok(b) = self.rho.target().boundary_matrix(k) {
                out.set_block(0, 0, &b);
            }
            out.set_block(0, m_cols, &self.rho.chain_map(k - 1));
            if let Ok(b) = self.rho.source().boundary_matrix(k - 1) {
                out.set_block(m_rows, m_cols, &b.map(|x| -x.clone()));
            }
        }
        out
    }

    /// Cochain differential in degree k with any coefficients in Q: the
    /// transpose of the boundary one degree up. In block form this is
    /// (h, e) -> (delta h, rho^* h - delta e).
    pub fn cochain_differential(&self, k: isize) -> RatMat {
        self.boundary_matrix(k + 1).transpose().to_rational()
    }

    /// Basis of the relative cycle lattice Z_k(rho), as integer columns.
    pub fn cycle_lattice(&self, k: isize) -> Vec<Vec<Int>> {
        if self.chain_dim(k) == 0 {
            return Vec::new();
        }
        integer_kernel(&self.boundary_matrix(k))
    }

    /// Is (sigma, tau) a relative cycle: d sigma + rho_* tau = 0 and d tau = 0?
    pub fn is_relative_cycle(&self, chain: &ChainPair) -> Result<bool, SimplicialError> {
        let k = chain.degree;
        let expect_sigma = self.rho.target().num_simplices(k);
        let expect_tau = self.rho.source().num_simplices(k - 1);
        if chain.sigma.len() != expect_sigma {
            return Err(SimplicialError::ChainLength {
                expected: expect_sigma,
                got: chain.sigma.len(),
            });
        }
        if chain.tau.len() != expect_tau {
            return Err(SimplicialError::ChainLength { expected: expect_tau, got: chain.tau.len() });
        }
        let b = self.boundary_matrix(k);
        Ok(b.mul_vec(&chain.to_vector()).iter().all(Zero::is_zero))
    }

    /// Integral homology of the cone in degree k.
    pub fn homology(&self, k: isize) -> Result<(Subquotient, Decomposition), SimplicialError> {
        let n = self.chain_dim(k);
        let cycles: Vec<Vec<Rat>> = self
            .cycle_lattice(k)
            .iter()
            .map(|v| v.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        let boundaries = if self.chain_dim(k + 1) == 0 {
            Vec::new()
        } else {
            self.boundary_matrix(k + 1).to_rational().columns()
        };
        let num = MixedSubgroup::new(n, cycles, Vec::new())?;
        let den = MixedSubgroup::new(n, boundaries, Vec::new())?;
        let sq = Subquotient::new(num, den)?;
        let dec = decompose(&sq)?;
        Ok((sq, dec))
    }

    /// Cohomology of the dual cone complex with the requested coefficients,
    /// as a subquotient in the ambient space of rational k-cochains.
    pub fn cohomology(&self, k: isize, coeffs: Coefficients) -> Result<Subquotient, SimplicialError> {
        let n = self.chain_dim(k);
        let delta_k = self.cochain_differential(k);
        let delta_km1 = self.cochain_differential(k - 1);
        let (num, den) = match coeffs {
            Coefficients::Integer => {
                let cocycles = if n == 0 {
                    Vec::new()
                } else {
                    integer_kernel(&delta_k.to_integer().expect("integral differential"))
                        .iter()
                        .map(|v| v.iter().map(|x| Rat::from_integer(x.clone())).collect())
                        .collect()
                };
                let cobounds: Vec<Vec<Rat>> = delta_km1.to_rational_columns_nonzero();
                (
                    MixedSubgroup::new(n, cocycles, Vec::new())?,
                    MixedSubgroup::new(n, cobounds, Vec::new())?,
                )
            }
            Coefficients::Rational => {
                let cocycles = crate::linalg::kernel_basis(&delta_k);
                let cobounds = delta_km1.to_rational_columns_nonzero();
                (
                    MixedSubgroup::new(n, Vec::new(), cocycles)?,
                    MixedSubgroup::new(n, Vec::new(), cobounds)?,
                )
            }
            Coefficients::RationalModInteger => {
                // cochains are Q^n / Z^n; a cocycle is h with delta h integral
                let num = MixedSubgroup::full_lattice(self.chain_dim(k + 1))
                    .preimage_of(&delta_k)?;
                let den = MixedSubgroup::full_lattice(n).sum(&MixedSubgroup::new(
                    n,
                    Vec::new(),
                    delta_km1.to_rational_columns_nonzero(),
                )?)?;
                (num, den)
            }
        };
        Ok(Subquotient::new(num, den)?)
    }
}

/// Coefficient groups supported by the cone cohomology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Integer,
    Rational,
    RationalModInteger,
}

trait ColumnsNonzero {
    fn to_rational_columns_nonzero(&self) -> Vec<Vec<Rat>>;
}

impl ColumnsNonzero for RatMat {
    fn to_rational_columns_nonzero(&self) -> Vec<Vec<Rat>> {
        self.columns().into_iter().filter(|c| !c.iter().all(Zero::is_zero)).collect()
    }
}

/// Standard small complexes used across tests and demos.
pub mod shapes {
    use super::*;

    /// Circle with `n >= 3` vertices: edges [i, i+1] and [0, n-1].
    pub fn circle(n: usize) -> SimplicialComplex {
        assert!(n >= 3);
        let mut edges: Vec<Vec<usize>> = (0..n - 1).map(|i| vec![i, i + 1]).collect();
        edges.push(vec![0, n - 1]);
        SimplicialComplex::new(n, &edges).unwrap()
    }

    /// Two points, no edges.
    pub fn two_points() -> SimplicialComplex {
        SimplicialComplex::new(2, &[vec![0], vec![1]]).unwrap()
    }

    /// A single edge [0, 1].
    pub fn interval() -> SimplicialComplex {
        SimplicialComplex::new(2, &[vec![0, 1]]).unwrap()
    }

    /// Filled triangle.
    pub fn triangle_disk() -> SimplicialComplex {
        SimplicialComplex::new(3, &[vec![0, 1, 2]]).unwrap()
    }

    /// Boundary of the tetrahedron: a 2-sphere.
    pub fn sphere2() -> SimplicialComplex {
        SimplicialComplex::new(
            4,
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap()
    }

    /// Hexagonal disk: center 0, ring 1..=6.
    pub fn hex_disk() -> SimplicialComplex {
        SimplicialComplex::new(
            7,
            &[
                vec![0, 1, 2],
                vec![0, 2, 3],
                vec![0, 3, 4],
                vec![0, 4, 5],
                vec![0, 5, 6],
                vec![0, 1, 6],
            ],
        )
        .unwrap()
    }

    /// Triangulated annulus: inner circle 0,1,2 and outer circle 3,4,5.
    pub fn annulus() -> SimplicialComplex {
        SimplicialComplex::new(
            6,
            &[
                vec![0, 1, 4],
                vec![0, 3, 4],
                vec![1, 2, 5],
                vec![1, 4, 5],
                vec![0, 2, 3],
                vec![2, 3, 5],
            ],
        )
        .unwrap()
    }
}
