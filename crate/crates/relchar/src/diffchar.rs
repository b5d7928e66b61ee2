//! The character complexes and the operations on their cocycles.
//!
//! Four cochain complexes of mixed subgroups are built here, all sharing one
//! block layout per degree:
//!
//! * the absolute complex `C^k(K;Z) x C^{k-1}(K;Q) x Omega^k_Z(K)`,
//! * the relative character complex with the relative period forms,
//! * the Hopkins-Singer complex in both presentations (product of the
//!   absolute complexes of target and source, and the mixed form whose last
//!   differential entry is `(0, rho^* omega)`),
//! * the subcomplex whose homology consists of the characters vanishing on
//!   source cycles.
//!
//! Homology is taken with [`crate::mixed`] machinery and decomposed into the
//! canonical form. Cocycles evaluate on relative cycles as characters with
//! values in `Q/Z`.

use crate::forms::{
    evaluate_pair, lambda_period_forms, relative_lambda_period_forms, riza_forms,
    DiscreteForm, FormPair, FormsError,
};
use crate::linalg::{self, Int, Rat, RatMat};
use crate::mixed::{decompose, Decomposition, MixedError, MixedSubgroup, Subquotient};
use crate::simplicial::{
    ChainPair, Coefficients, ConeComplex, SimplicialComplex, SimplicialError, SimplicialMap,
};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharError {
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("not a relative cycle")]
    NotACycle,
    #[error("form is not closed with integer periods")]
    FormLacksPeriods,
    #[error("operation expects flavor {expected:?}, got {got:?}")]
    WrongFlavor { expected: Flavor, got: Flavor },
    #[error("degree {0} out of range")]
    DegreeOutOfRange(isize),
    #[error(transparent)]
    Mixed(#[from] MixedError),
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Forms(#[from] FormsError),
}

/// Which complex a cocycle belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Absolute,
    RelativeCs,
    HsProduct,
    HsMixed,
    Cs0,
}

/// Coordinate blocks of a degree-k chain group. Dimensions at degree k:
/// `MInt`, `MForm`: k-cochains of the target; `AInt`, `AForm`: (k-1)-cochains
/// of the source; `MRat`: (k-1)-cochains of the target; `ARat`: (k-2)-cochains
/// of the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    MInt,
    AInt,
    MRat,
    ARat,
    MForm,
    AForm,
}

const BLOCK_ORDER: [Block; 6] =
    [Block::MInt, Block::AInt, Block::MRat, Block::ARat, Block::MForm, Block::AForm];

fn block_index(b: Block) -> usize {
    BLOCK_ORDER.iter().position(|&x| x == b).unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    dims: [usize; 6],
}

impl Layout {
    fn at(rho: &SimplicialMap, k: isize) -> Layout {
        let m = rho.target();
        let a = rho.source();
        Layout {
            dims: [
                m.num_simplices(k),
                a.num_simplices(k - 1),
                m.num_simplices(k - 1),
                a.num_simplices(k - 2),
                m.num_simplices(k),
                a.num_simplices(k - 1),
            ],
        }
    }

    pub fn dim(&self, b: Block) -> usize {
        self.dims[block_index(b)]
    }

    pub fn offset(&self, b: Block) -> usize {
        self.dims[..block_index(b)].iter().sum()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn range(&self, b: Block) -> std::ops::Range<usize> {
        let o = self.offset(b);
        o..o + self.dim(b)
    }

    pub fn extract(&self, v: &[Rat], b: Block) -> Vec<Rat> {
        v[self.range(b)].to_vec()
    }

    /// Write `part` into the block `b` of an ambient vector.
    pub fn place(&self, v: &mut [Rat], b: Block, part: &[Rat]) {
        assert_eq!(part.len(), self.dim(b));
        v[self.range(b)].clone_from_slice(part);
    }
}

#[derive(Debug, Clone)]
struct DegreeData {
    layout: Layout,
    group: MixedSubgroup,
    diff: RatMat,
}

/// One of the character cochain complexes, fully materialized over the
/// degrees where it can be nonzero.
#[derive(Debug, Clone)]
pub struct CharComplex {
    flavor: Flavor,
    rho: SimplicialMap,
    degrees: Vec<DegreeData>,
}

impl CharComplex {
    /// The absolute complex of a single complex `K`, assembled directly from
    /// `K`'s coboundaries (not via a degenerate relative construction).
    pub fn build_absolute(k: &SimplicialComplex) -> Result<Self, CharError> {
        let rho = SimplicialMap::from_empty(k.clone());
        let max_degree = (k.dim() + 3).max(2);
        let mut degrees = Vec::new();
        for deg in 0..=max_degree {
            let layout = Layout::at(&rho, deg);
            let next = Layout::at(&rho, deg + 1);
            let n = layout.total();

            let mut lattice: Vec<Vec<Rat>> = Vec::new();
            let mut subspace: Vec<Vec<Rat>> = Vec::new();
            for i in layout.range(Block::MInt) {
                lattice.push(crate::mixed::std_vec(n, i));
            }
            for i in layout.range(Block::MRat) {
                subspace.push(crate::mixed::std_vec(n, i));
            }
            let omega = lambda_period_forms(k, deg)?;
            let off = layout.offset(Block::MForm);
            let omega_emb = omega.embed(n, off);
            for g in omega_emb.lattice_gens() {
                lattice.push(g.clone());
            }
            for w in omega_emb.subspace_gens() {
                subspace.push(w.clone());
            }
            let group = MixedSubgroup::new(n, lattice, subspace)?;

            let mut diff = RatMat::zeros(next.total(), n);
            let delta_k = k.coboundary_matrix(deg);
            let delta_km1 = k.coboundary_matrix(deg - 1);
            place_block(&mut diff, &next, Block::MInt, &layout, Block::MInt, &delta_k, false);
            place_identity(&mut diff, &next, Block::MRat, &layout, Block::MForm, false);
            place_identity(&mut diff, &next, Block::MRat, &layout, Block::MInt, true);
            place_block(&mut diff, &next, Block::MRat, &layout, Block::MRat, &delta_km1, true);
            degrees.push(DegreeData { layout, group, diff });
        }
        Ok(CharComplex { flavor: Flavor::Absolute, rho, degrees })
    }

    /// One of the four relative complexes over a simplicial map.
    pub fn build(flavor: Flavor, rho: &SimplicialMap) -> Result<Self, CharError> {
        if flavor == Flavor::Absolute {
            return Self::build_absolute(rho.target());
        }
        let cone = ConeComplex::new(rho);
        let m = rho.target();
        let a = rho.source();
        let max_degree = (m.dim().max(a.dim() + 1) + 3).max(2);
        let mut degrees = Vec::new();
        for deg in 0..=max_degree {
            let layout = Layout::at(rho, deg);
            let next = Layout::at(rho, deg + 1);
            let n = layout.total();

            // lattice: integer cochain pair standard basis; subspace:
            // rational cochain pair standard basis; plus the flavor's forms.
            let mut lattice: Vec<Vec<Rat>> = Vec::new();
            let mut subspace: Vec<Vec<Rat>> = Vec::new();
            for i in layout.range(Block::MInt).chain(layout.range(Block::AInt)) {
                lattice.push(crate::mixed::std_vec(n, i));
            }
            for i in layout.range(Block::MRat).chain(layout.range(Block::ARat)) {
                subspace.push(crate::mixed::std_vec(n, i));
            }
            let mut push_group = |g: MixedSubgroup, offset: usize| {
                let emb = g.embed(n, offset);
                for v in emb.lattice_gens() {
                    lattice.push(v.clone());
                }
                for w in emb.subspace_gens() {
                    subspace.push(w.clone());
                }
            };
            match flavor {
                Flavor::RelativeCs => {
                    // the relative period group spans both form blocks
                    push_group(
                        relative_lambda_period_forms(rho, deg)?,
                        layout.offset(Block::MForm),
                    );
                }
                Flavor::Cs0 => {
                    push_group(riza_forms(rho, deg)?, layout.offset(Block::MForm));
                    push_group(lambda_period_forms(a, deg - 1)?, layout.offset(Block::AForm));
                }
                Flavor::HsProduct | Flavor::HsMixed => {
                    push_group(lambda_period_forms(m, deg)?, layout.offset(Block::MForm));
                    push_group(lambda_period_forms(a, deg - 1)?, layout.offset(Block::AForm));
                }
                Flavor::Absolute => unreachable!(),
            }
            let group = MixedSubgroup::new(n, lattice, subspace)?;

            let mut diff = RatMat::zeros(next.total(), n);
            match flavor {
                Flavor::RelativeCs | Flavor::Cs0 | Flavor::HsMixed => {
                    // integer part: the cone cochain differential
                    let delta_cone = cone.cochain_differential(deg);
                    place_cone(&mut diff, &next, &layout, &delta_cone);
                    // rational part: (omega, theta) - (c, b) - delta (h, e)
                    place_identity(&mut diff, &next, Block::MRat, &layout, Block::MForm, false);
                    place_identity(&mut diff, &next, Block::ARat, &layout, Block::AForm, false);
                    place_identity(&mut diff, &next, Block::MRat, &layout, Block::MInt, true);
                    place_identity(&mut diff, &next, Block::ARat, &layout, Block::AInt, true);
                    let delta_cone_km1 = cone.cochain_differential(deg - 1);
                    place_cone_shifted(&mut diff, &next, &layout, &delta_cone_km1, true);
                    if flavor == Flavor::HsMixed {
                        // forms output (0, rho^* omega)
                        place_block(
                            &mut diff,
                            &next,
                            Block::AForm,
                            &layout,
                            Block::MForm,
                            &rho.pullback(deg),
                            false,
                        );
                    }
                }
                Flavor::HsProduct => {
                    let dm_k = m.coboundary_matrix(deg);
                    let dm_km1 = m.coboundary_matrix(deg - 1);
                    let da_km1 = a.coboundary_matrix(deg - 1);
                    let da_km2 = a.coboundary_matrix(deg - 2);
                    // M triple: the absolute differential on the target
                    place_block(&mut diff, &next, Block::MInt, &layout, Block::MInt, &dm_k, false);
                    place_identity(&mut diff, &next, Block::MRat, &layout, Block::MForm, false);
                    place_identity(&mut diff, &next, Block::MRat, &layout, Block::MInt, true);
                    place_block(&mut diff, &next, Block::MRat, &layout, Block::MRat, &dm_km1, true);
                    // A triple: pullback of the M triple minus the absolute
                    // differential on the source
                    place_block(
                        &mut diff,
                        &next,
                        Block::AInt,
                        &layout,
                        Block::MInt,
                        &rho.pullback(deg),
                        false,
                    );
                    place_block(&mut diff, &next, Block::AInt, &layout, Block::AInt, &da_km1, true);
                    place_block(
                        &mut diff,
                        &next,
                        Block::ARat,
                        &layout,
                        Block::MRat,
                        &rho.pullback(deg - 1),
                        false,
                    );
                    place_identity(&mut diff, &next, Block::ARat, &layout, Block::AForm, true);
                    place_identity(&mut diff, &next, Block::ARat, &layout, Block::AInt, false);
                    place_block(&mut diff, &next, Block::ARat, &layout, Block::ARat, &da_km2, false);
                    place_block(
                        &mut diff,
                        &next,
                        Block::AForm,
                        &layout,
                        Block::MForm,
                        &rho.pullback(deg),
                        false,
                    );
                }
                Flavor::Absolute => unreachable!(),
            }
            degrees.push(DegreeData { layout, group, diff });
        }
        Ok(CharComplex { flavor, rho: rho.clone(), degrees })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn rho(&self) -> &SimplicialMap {
        &self.rho
    }

    pub fn max_degree(&self) -> isize {
        self.degrees.len() as isize - 1
    }

    pub fn layout(&self, k: isize) -> Option<&Layout> {
        usize::try_from(k).ok().and_then(|k| self.degrees.get(k)).map(|d| &d.layout)
    }

    pub fn group(&self, k: isize) -> Option<&MixedSubgroup> {
        usize::try_from(k).ok().and_then(|k| self.degrees.get(k)).map(|d| &d.group)
    }

    pub fn differential(&self, k: isize) -> Option<&RatMat> {
        usize::try_from(k).ok().and_then(|k| self.degrees.get(k)).map(|d| &d.diff)
    }

    pub fn ambient_dim(&self, k: isize) -> usize {
        self.layout(k).map_or(0, Layout::total)
    }

    /// The differential sends each generator of the degree-k group into the
    /// degree-(k+1) group and is annihilated by the next differential.
    pub fn differential_is_consistent(&self, k: isize) -> Result<bool, CharError> {
        let Some(dk) = self.differential(k) else { return Ok(true) };
        let Some(gk) = self.group(k) else { return Ok(true) };
        let image = gk.image_of(dk)?;
        let Some(gk1) = self.group(k + 1) else { return Ok(image.is_zero_group()?) };
        if !gk1.contains_subgroup(&image)? {
            return Ok(false);
        }
        if let Some(dk1) = self.differential(k + 1) {
            let composite = image.image_of(dk1)?;
            if !composite.is_zero_group()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Cocycles of degree k as a subgroup.
    pub fn cocycle_group(&self, k: isize) -> Result<MixedSubgroup, CharError> {
        let n = self.ambient_dim(k);
        let (Some(g), Some(d)) = (self.group(k), self.differential(k)) else {
            return Ok(MixedSubgroup::zero(n));
        };
        Ok(g.kernel_within(d)?)
    }

    /// Coboundaries of degree k as a subgroup.
    pub fn coboundary_group(&self, k: isize) -> Result<MixedSubgroup, CharError> {
        let n = self.ambient_dim(k);
        if k == 0 {
            return Ok(MixedSubgroup::zero(n));
        }
        let (Some(g), Some(d)) = (self.group(k - 1), self.differential(k - 1)) else {
            return Ok(MixedSubgroup::zero(n));
        };
        Ok(g.image_of(d)?)
    }

    pub fn homology_subquotient(&self, k: isize) -> Result<Subquotient, CharError> {
        if k < 0 || k > self.max_degree() {
            return Ok(Subquotient::zero(0));
        }
        Ok(Subquotient::new(self.cocycle_group(k)?, self.coboundary_group(k)?)?)
    }

    pub fn homology(&self, k: isize) -> Result<(Subquotient, Decomposition), CharError> {
        let sq = self.homology_subquotient(k)?;
        let dec = decompose(&sq)?;
        Ok((sq, dec))
    }

    /// Membership plus the matrix cocycle condition.
    pub fn check_cocycle(&self, z: &CharCocycle) -> Result<(), CharError> {
        if z.flavor != self.flavor {
            return Err(CharError::WrongFlavor { expected: self.flavor, got: z.flavor });
        }
        let k = z.degree;
        if z.vector.len() != self.ambient_dim(k) {
            return Err(CharError::NotACocycle("wrong ambient dimension".into()));
        }
        let Some(d) = self.differential(k) else {
            return Err(CharError::DegreeOutOfRange(k));
        };
        if !linalg::vec_is_zero(&d.mul_vec(&z.vector)) {
            return Err(CharError::NotACocycle("differential does not vanish".into()));
        }
        let g = self.group(k).expect("degree in range");
        if !g.contains(&z.vector)? {
            return Err(CharError::NotACocycle("vector is outside the chain group".into()));
        }
        Ok(())
    }

    /// Solve `z = Delta w` with `w` in the degree-(k-1) chain group and
    /// return the witness.
    pub fn coboundary_witness(&self, z: &CharCocycle) -> Result<Option<Vec<Rat>>, CharError> {
        self.check_cocycle(z)?;
        let k = z.degree;
        if k == 0 {
            return Ok(if linalg::vec_is_zero(&z.vector) { Some(Vec::new()) } else { None });
        }
        let g = self.group(k - 1).expect("degree in range");
        let d = self.differential(k - 1).expect("degree in range");
        let dl: Vec<Vec<Rat>> = g.lattice_gens().iter().map(|v| d.mul_vec(v)).collect();
        let dw: Vec<Vec<Rat>> = g.subspace_gens().iter().map(|v| d.mul_vec(v)).collect();
        let Some((x, y)) = linalg::solve_mixed(&dl, &dw, &z.vector)? else {
            return Ok(None);
        };
        let mut w = vec![Rat::zero(); self.ambient_dim(k - 1)];
        for (c, gen) in x.iter().zip(g.lattice_gens()) {
            w = linalg::vec_add(&w, &linalg::vec_scale(&Rat::from_integer(c.clone()), gen));
        }
        for (c, gen) in y.iter().zip(g.subspace_gens()) {
            w = linalg::vec_add(&w, &linalg::vec_scale(c, gen));
        }
        debug_assert_eq!(d.mul_vec(&w), z.vector);
        Ok(Some(w))
    }
}

fn place_block(
    out: &mut RatMat,
    to_layout: &Layout,
    to_block: Block,
    from_layout: &Layout,
    from_block: Block,
    mat: &RatMat,
    negate: bool,
) {
    let r0 = to_layout.offset(to_block);
    let c0 = from_layout.offset(from_block);
    assert_eq!(mat.rows(), to_layout.dim(to_block));
    assert_eq!(mat.cols(), from_layout.dim(from_block));
    for i in 0..mat.rows() {
        for j in 0..mat.cols() {
            let v = if negate { -mat[(i, j)].clone() } else { mat[(i, j)].clone() };
            if !v.is_zero() {
                out[(r0 + i, c0 + j)] = v;
            }
        }
    }
}

fn place_identity(
    out: &mut RatMat,
    to_layout: &Layout,
    to_block: Block,
    from_layout: &Layout,
    from_block: Block,
    negate: bool,
) {
    let n = to_layout.dim(to_block);
    assert_eq!(n, from_layout.dim(from_block));
    let id = RatMat::identity(n);
    place_block(out, to_layout, to_block, from_layout, from_block, &id, negate);
}

/// Place the cone cochain differential on the integer blocks: it maps the
/// (MInt, AInt) pair at degree k to the (MInt, AInt) pair at degree k+1, and
/// those ranges are contiguous in the layout.
fn place_cone(out: &mut RatMat, to_layout: &Layout, from_layout: &Layout, delta: &RatMat) {
    let r0 = to_layout.offset(Block::MInt);
    let c0 = from_layout.offset(Block::MInt);
    assert_eq!(delta.rows(), to_layout.dim(Block::MInt) + to_layout.dim(Block::AInt));
    assert_eq!(delta.cols(), from_layout.dim(Block::MInt) + from_layout.dim(Block::AInt));
    for i in 0..delta.rows() {
        for j in 0..delta.cols() {
            if !delta[(i, j)].is_zero() {
                out[(r0 + i, c0 + j)] = delta[(i, j)].clone();
            }
        }
    }
}

/// Same, one degree down, acting on the rational blocks.
fn place_cone_shifted(
    out: &mut RatMat,
    to_layout: &Layout,
    from_layout: &Layout,
    delta: &RatMat,
    negate: bool,
) {
    let r0 = to_layout.offset(Block::MRat);
    let c0 = from_layout.offset(Block::MRat);
    assert_eq!(delta.rows(), to_layout.dim(Block::MRat) + to_layout.dim(Block::ARat));
    assert_eq!(delta.cols(), from_layout.dim(Block::MRat) + from_layout.dim(Block::ARat));
    for i in 0..delta.rows() {
        for j in 0..delta.cols() {
            if delta[(i, j)].is_zero() {
                continue;
            }
            let v = if negate { -delta[(i, j)].clone() } else { delta[(i, j)].clone() };
            out[(r0 + i, c0 + j)] = v;
        }
    }
}

/// A cochain of one of the character complexes, given by its ambient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharCocycle {
    pub flavor: Flavor,
    pub degree: isize,
    pub vector: Vec<Rat>,
}

impl CharCocycle {
    pub fn zero(cx: &CharComplex, degree: isize) -> Self {
        CharCocycle {
            flavor: cx.flavor(),
            degree,
            vector: vec![Rat::zero(); cx.ambient_dim(degree)],
        }
    }

    pub fn block(&self, cx: &CharComplex, b: Block) -> Vec<Rat> {
        cx.layout(self.degree).expect("degree in range").extract(&self.vector, b)
    }

    /// The form part `(omega, theta)`.
    pub fn form_pair(&self, cx: &CharComplex) -> FormPair {
        FormPair {
            degree: self.degree,
            omega: self.block(cx, Block::MForm),
            theta: self.block(cx, Block::AForm),
        }
    }

    /// The integer part `(c, b)` as a vector in the cone cochain space.
    pub fn int_pair(&self, cx: &CharComplex) -> Vec<Rat> {
        let mut v = self.block(cx, Block::MInt);
        v.extend(self.block(cx, Block::AInt));
        v
    }

    /// The rational part `(h, e)` as a vector in the cone cochain space one
    /// degree down.
    pub fn rat_pair(&self, cx: &CharComplex) -> Vec<Rat> {
        let mut v = self.block(cx, Block::MRat);
        v.extend(self.block(cx, Block::ARat));
        v
    }
}

/// A value in `Q/Z`, kept as its canonical representative in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterValue(Rat);

impl CharacterValue {
    pub fn new(x: Rat) -> Self {
        let f = x.floor();
        CharacterValue(x - f)
    }

    pub fn representative(&self) -> &Rat {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl std::fmt::Display for CharacterValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.to_integer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Evaluate the character of a cocycle on a validated relative cycle: the
/// rational pairing of the `(h, e)` part, reduced mod Z.
pub fn evaluate_character(
    cx: &CharComplex,
    z: &CharCocycle,
    chain: &ChainPair,
) -> Result<CharacterValue, CharError> {
    cx.check_cocycle(z)?;
    if chain.degree != z.degree - 1 {
        return Err(CharError::NotACycle);
    }
    let cone = ConeComplex::new(cx.rho());
    if !cone.is_relative_cycle(chain)? {
        return Err(CharError::NotACycle);
    }
    let he = z.rat_pair(cx);
    let val = linalg::dot(&he, &linalg::int_vec_to_rat(&chain.to_vector()));
    Ok(CharacterValue::new(val))
}

/// The curvature form pair and the integral mapping-cone cocycle attached to
/// a character cocycle. The class lives in the integral cone cohomology.
pub fn curvature_and_class(
    cx: &CharComplex,
    z: &CharCocycle,
) -> Result<(FormPair, Vec<Int>), CharError> {
    cx.check_cocycle(z)?;
    let form = z.form_pair(cx);
    let int_pair = z.int_pair(cx);
    let class: Vec<Int> = int_pair
        .iter()
        .map(|x| {
            debug_assert!(x.is_integer());
            x.to_integer()
        })
        .collect();
    Ok((form, class))
}

/// The compatibility `[omega, theta] = r([c, b])` in rational cone
/// cohomology: the difference is a rational coboundary.
pub fn curvature_class_compatible(cx: &CharComplex, z: &CharCocycle) -> Result<bool, CharError> {
    let (form, class) = curvature_and_class(cx, z)?;
    let cone = ConeComplex::new(cx.rho());
    let mut diff = form.to_vector();
    for (d, c) in diff.iter_mut().zip(&class) {
        *d -= Rat::from_integer(c.clone());
    }
    let delta = cone.cochain_differential(z.degree - 1);
    Ok(linalg::solve(&delta, &diff).is_some())
}

/// Vanishing data of a character: integrality of `(h, e)` against the
/// relative cycle lattice, and exact vanishing of the form part. For the
/// kernel criterion both are needed: the form part is the character's value
/// in the rational directions of boundaries, which the cycle-lattice pairing
/// cannot see.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterVanishing {
    pub on_cycle_lattice: bool,
    pub form_part_zero: bool,
}

impl CharacterVanishing {
    pub fn fully(&self) -> bool {
        self.on_cycle_lattice && self.form_part_zero
    }
}

pub fn character_vanishing(
    cx: &CharComplex,
    z: &CharCocycle,
) -> Result<CharacterVanishing, CharError> {
    cx.check_cocycle(z)?;
    let cone = ConeComplex::new(cx.rho());
    let he = z.rat_pair(cx);
    let mut on_lattice = true;
    for cycle in cone.cycle_lattice(z.degree - 1) {
        let v = linalg::dot(&he, &linalg::int_vec_to_rat(&cycle));
        if !v.is_integer() {
            on_lattice = false;
            break;
        }
    }
    let form_zero = z.form_pair(cx).is_zero();
    Ok(CharacterVanishing { on_cycle_lattice: on_lattice, form_part_zero: form_zero })
}

/// The connecting construction: a closed form `nu` with integer periods on
/// the target yields the cocycle `((0,0),(nu,0),(0,rho^* nu))` in the
/// vanishing-on-source-cycles complex.
pub fn phi_form_map(cx: &CharComplex, nu: &DiscreteForm) -> Result<CharCocycle, CharError> {
    if cx.flavor() != Flavor::Cs0 {
        return Err(CharError::WrongFlavor { expected: Flavor::Cs0, got: cx.flavor() });
    }
    let m = cx.rho().target();
    if nu.values.len() != m.num_simplices(nu.degree) {
        return Err(CharError::FormLacksPeriods);
    }
    let omega_group = lambda_period_forms(m, nu.degree)?;
    if !omega_group.contains(&nu.values)? {
        return Err(CharError::FormLacksPeriods);
    }
    let k = nu.degree + 1;
    let layout = cx.layout(k).ok_or(CharError::DegreeOutOfRange(k))?;
    let mut v = vec![Rat::zero(); layout.total()];
    layout.place(&mut v, Block::MRat, &nu.values);
    let pulled = cx.rho().pullback(nu.degree).mul_vec(&nu.values);
    layout.place(&mut v, Block::AForm, &pulled);
    let z = CharCocycle { flavor: Flavor::Cs0, degree: k, vector: v };
    cx.check_cocycle(&z)?;
    Ok(z)
}

/// Reinterpret a cocycle of the vanishing subcomplex inside the mixed
/// Hopkins-Singer complex; the two share their ambient coordinates.
pub fn j_map(
    cs0: &CharComplex,
    hs_mixed: &CharComplex,
    z: &CharCocycle,
) -> Result<CharCocycle, CharError> {
    if cs0.flavor() != Flavor::Cs0 {
        return Err(CharError::WrongFlavor { expected: Flavor::Cs0, got: cs0.flavor() });
    }
    if hs_mixed.flavor() != Flavor::HsMixed {
        return Err(CharError::WrongFlavor { expected: Flavor::HsMixed, got: hs_mixed.flavor() });
    }
    cs0.check_cocycle(z)?;
    let out = CharCocycle { flavor: Flavor::HsMixed, degree: z.degree, vector: z.vector.clone() };
    hs_mixed.check_cocycle(&out)?;
    Ok(out)
}

/// The degreewise isomorphism between the two Hopkins-Singer presentations:
/// identity on every block except a sign change on the rational source block.
pub fn hs_presentation_iso_matrix(layout: &Layout) -> RatMat {
    let n = layout.total();
    let mut e = RatMat::identity(n);
    for i in layout.range(Block::ARat) {
        e[(i, i)] = -Rat::one();
    }
    e
}

/// A fixed pairing check used by demos and tests: evaluate the curvature on
/// a chain against the character on its cone boundary.
pub fn boundary_consistency(
    cx: &CharComplex,
    z: &CharCocycle,
    chain: &ChainPair,
) -> Result<bool, CharError> {
    cx.check_cocycle(z)?;
    let cone = ConeComplex::new(cx.rho());
    let b = cone.boundary_matrix(chain.degree);
    let boundary_vec = b.mul_vec(&chain.to_vector());
    let nm = cx.rho().target().num_simplices(chain.degree - 1);
    let boundary = ChainPair {
        degree: chain.degree - 1,
        sigma: boundary_vec[..nm].to_vec(),
        tau: boundary_vec[nm..].to_vec(),
    };
    let lhs = evaluate_character(cx, z, &boundary)?;
    let rhs = CharacterValue::new(evaluate_pair(&z.form_pair(cx), chain)?);
    Ok(lhs == rhs)
}

/// Shorthand: build a relative pair from an inclusion of vertex sets.
pub fn inclusion_pair(
    a: SimplicialComplex,
    m: SimplicialComplex,
    vertex_map: Vec<usize>,
) -> Result<SimplicialMap, CharError> {
    Ok(SimplicialMap::new(a, m, vertex_map)?)
}

/// Integral cone cohomology in the ambient the `delta_2` class lives in.
pub fn cone_integral_cohomology(
    rho: &SimplicialMap,
    k: isize,
) -> Result<Subquotient, CharError> {
    Ok(ConeComplex::new(rho).cohomology(k, Coefficients::Integer)?)
}
