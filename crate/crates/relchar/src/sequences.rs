//! Exact sequence diagrams and their machine verification.
//!
//! A diagram is a chain of subquotients and induced maps. Exactness at an
//! interior position is checked on generators: the composite must land in the
//! target denominator, and every generator of the kernel of the outgoing map
//! must lie in (image of the incoming map) + denominator. Failures carry a
//! witness vector that re-verifies independently.

use crate::diffchar::{Block, CharComplex, Flavor};
use crate::forms::{image_forms, lambda_period_forms, relative_lambda_period_forms, riza_forms};
use crate::linalg::{self, kernel_basis, Rat, RatMat};
use crate::mixed::{InducedMap, MixedError, MixedSubgroup, Subquotient};
use crate::simplicial::{ConeComplex, SimplicialError, SimplicialMap};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequenceError {
    #[error("diagram maps are not composable at position {0}")]
    NotComposable(usize),
    #[error(transparent)]
    Mixed(#[from] MixedError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Char(#[from] crate::diffchar::CharError),
    #[error(transparent)]
    Forms(#[from] crate::forms::FormsError),
}

/// Verdict at one diagram position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Exact,
    /// The composite of the two maps does not vanish; the witness is a
    /// source-numerator generator whose image misses the denominator.
    CompositeNonzero { witness: Vec<Rat> },
    /// The kernel of the outgoing map is not covered by the image; the
    /// witness is a kernel generator outside image + denominator.
    HomologyNonzero { witness: Vec<Rat> },
}

impl Verdict {
    pub fn is_exact(&self) -> bool {
        matches!(self, Verdict::Exact)
    }
}

/// Exactness at the middle of `f: X -> H`, `g: H -> Y`.
pub fn check_exact_at(f: &InducedMap, g: &InducedMap) -> Result<Verdict, SequenceError> {
    if f.target().ambient_dim() != g.source().ambient_dim() {
        return Err(SequenceError::NotComposable(0));
    }
    // composite zero on generators
    let gf = g.matrix().mul(f.matrix());
    for gen in f.source().numerator().lattice_gens() {
        let img = gf.mul_vec(gen);
        if !g.target().denominator().contains(&img)? {
            return Ok(Verdict::CompositeNonzero { witness: gen.clone() });
        }
    }
    for gen in f.source().numerator().subspace_gens() {
        let img = gf.mul_vec(gen);
        if !g.target().denominator().contains_line(&img)? {
            return Ok(Verdict::CompositeNonzero { witness: gen.clone() });
        }
    }
    // kernel of g covered by image of f plus the denominator
    let kernel = g.kernel_group()?;
    let covered = f.image_group()?.sum(f.target().denominator())?;
    for gen in kernel.lattice_gens() {
        if !covered.contains(gen)? {
            return Ok(Verdict::HomologyNonzero { witness: gen.clone() });
        }
    }
    for gen in kernel.subspace_gens() {
        if !covered.contains_line(gen)? {
            return Ok(Verdict::HomologyNonzero { witness: gen.clone() });
        }
    }
    Ok(Verdict::Exact)
}

/// Re-verify a failure witness: it must genuinely exhibit the failure.
pub fn witness_is_genuine(
    f: &InducedMap,
    g: &InducedMap,
    verdict: &Verdict,
) -> Result<bool, SequenceError> {
    match verdict {
        Verdict::Exact => Ok(true),
        Verdict::CompositeNonzero { witness } => {
            let img = g.matrix().mul_vec(&f.matrix().mul_vec(witness));
            Ok(f.source().numerator().contains(witness)?
                && !g.target().denominator().contains(&img)?)
        }
        Verdict::HomologyNonzero { witness } => {
            let img = g.matrix().mul_vec(witness);
            let covered = f.image_group()?.sum(f.target().denominator())?;
            Ok(g.source().numerator().contains(witness)?
                && g.target().denominator().contains(&img)?
                && !covered.contains(witness)?)
        }
    }
}

/// A labelled term of a diagram.
#[derive(Debug, Clone)]
pub struct SequenceTerm {
    pub label: String,
    pub subquotient: Subquotient,
}

/// A chain of terms and maps; `maps[i]` goes from `terms[i]` to `terms[i+1]`.
#[derive(Debug, Clone)]
pub struct SequenceDiagram {
    pub name: String,
    pub terms: Vec<SequenceTerm>,
    pub maps: Vec<InducedMap>,
}

/// Per-position verdicts for the interior terms of a diagram.
#[derive(Debug, Clone)]
pub struct ExactnessReport {
    pub name: String,
    pub positions: Vec<(String, Verdict)>,
}

impl ExactnessReport {
    pub fn all_exact(&self) -> bool {
        self.positions.iter().all(|(_, v)| v.is_exact())
    }
}

impl SequenceDiagram {
    pub fn new(name: impl Into<String>) -> Self {
        SequenceDiagram { name: name.into(), terms: Vec::new(), maps: Vec::new() }
    }

    pub fn push_term(&mut self, label: impl Into<String>, sq: Subquotient) {
        self.terms.push(SequenceTerm { label: label.into(), subquotient: sq });
    }

    /// Append a map from the last pushed term to a new term.
    pub fn push_map(
        &mut self,
        label: impl Into<String>,
        target: Subquotient,
        matrix: RatMat,
    ) -> Result<(), SequenceError> {
        let source = self.terms.last().expect("push_term first").subquotient.clone();
        let map = InducedMap::new(source, target.clone(), matrix)?;
        self.maps.push(map);
        self.push_term(label, target);
        Ok(())
    }

    /// Run the exactness check at every interior position.
    pub fn check(&self) -> Result<ExactnessReport, SequenceError> {
        let mut positions = Vec::new();
        for i in 1..self.terms.len().saturating_sub(1) {
            let verdict = check_exact_at(&self.maps[i - 1], &self.maps[i])?;
            positions.push((self.terms[i].label.clone(), verdict));
        }
        Ok(ExactnessReport { name: self.name.clone(), positions })
    }
}

fn zero_term(ambient: usize) -> Subquotient {
    Subquotient::zero(ambient)
}

/// The three short exact sequences of the relative character group in
/// degree k, built from the subcomplex family of the character complex and
/// verified positionwise.
///
/// 1. `0 -> H^{k-1}(C_rho; Q/Z) -> H^k -> relative period forms -> 0`
/// 2. `0 -> forms^{k-1} / period forms^{k-1} -> H^k -> H^k(C_rho; Z) -> 0`
/// 3. `0 -> H^{k-1}(C_rho; Q)/r(H^{k-1}(C_rho; Z)) -> H^k -> R^k -> 0`
pub fn character_sequences(
    rho: &SimplicialMap,
    k: isize,
) -> Result<Vec<(SequenceDiagram, ExactnessReport)>, SequenceError> {
    let cx = CharComplex::build(Flavor::RelativeCs, rho)?;
    character_sequences_with(&cx, k)
}

/// Same, reusing an already built relative complex.
pub fn character_sequences_with(
    cx: &CharComplex,
    k: isize,
) -> Result<Vec<(SequenceDiagram, ExactnessReport)>, SequenceError> {
    assert!(k >= 1, "character groups start in degree 1");
    let rho = cx.rho();
    let cone = ConeComplex::new(rho);
    let hk = cx.homology_subquotient(k)?;
    let layout = cx
        .layout(k)
        .cloned()
        .unwrap_or_else(|| cx.layout(cx.max_degree()).unwrap().clone());
    let n = hk.ambient_dim();

    // shared ingredients
    let nc = cone.chain_dim(k); // integer cochain pair dimension at degree k
    let nh = cone.chain_dim(k - 1); // rational pair dimension at degree k-1
    let delta_km1 = cone.cochain_differential(k - 1);
    let delta_km2 = cone.cochain_differential(k - 2);
    let int_cocycles = MixedSubgroup::new(nc, integer_cocycle_columns(&cone, k), Vec::new())?;
    let int_cobounds = MixedSubgroup::new(
        nc,
        if nh == 0 { Vec::new() } else { nonzero_columns(&delta_km1) },
        Vec::new(),
    )?;

    let mut out = Vec::new();

    // --- sequence 1: flat classes, then the curvature projection ---
    {
        let qz = cone.cohomology(k - 1, crate::simplicial::Coefficients::RationalModInteger)?;
        // map: (h, e) -> ((c, b) = -delta(h, e), (h, e), 0)
        let mut mat = RatMat::zeros(n, nh);
        write_block_rows(&mut mat, &layout, Block::MInt, &delta_km1.map(|x| -x.clone()), 0);
        write_identity_rows(&mut mat, &layout, Block::MRat, nh, 0);
        let mut d = SequenceDiagram::new("curvature");
        d.push_term("0", zero_term(0));
        d.push_map("H^{k-1}(C;Q/Z)", qz.clone(), RatMat::zeros(qz.ambient_dim(), 0))?;
        d.push_map("H^k(char)", hk.clone(), mat)?;
        let omega = relative_lambda_period_forms(rho, k)?;
        let omega_sq = Subquotient::from_group(omega);
        let mut proj = RatMat::zeros(omega_sq.ambient_dim(), n);
        write_form_projection(&mut proj, &layout);
        d.push_map("relative period forms", omega_sq, proj)?;
        d.push_map("0", zero_term(0), RatMat::zeros(0, layout.dim(Block::MForm) + layout.dim(Block::AForm)))?;
        let report = d.check()?;
        out.push((d, report));
    }

    // --- sequence 2: topologically trivial characters, then the class ---
    {
        let forms_quot = Subquotient::new(
            MixedSubgroup::full_space(nh),
            relative_lambda_period_forms(rho, k - 1)?,
        )?;
        // map: (omega', theta') -> ((0,0), (omega', theta'), delta(omega', theta'))
        let mut mat = RatMat::zeros(n, nh);
        write_identity_rows(&mut mat, &layout, Block::MRat, nh, 0);
        write_block_rows(&mut mat, &layout, Block::MForm, &delta_km1, 0);
        let mut d = SequenceDiagram::new("characteristic class");
        d.push_term("0", zero_term(0));
        d.push_map(
            "forms^{k-1}/periods^{k-1}",
            forms_quot.clone(),
            RatMat::zeros(nh, 0),
        )?;
        d.push_map("H^k(char)", hk.clone(), mat)?;
        let hz = Subquotient::new(int_cocycles.clone(), int_cobounds.clone())?;
        let mut proj = RatMat::zeros(nc, n);
        write_int_projection(&mut proj, &layout);
        d.push_map("H^k(C;Z)", hz, proj)?;
        d.push_map("0", zero_term(0), RatMat::zeros(0, nc))?;
        let report = d.check()?;
        out.push((d, report));
    }

    // --- sequence 3: real classes mod integral ones, then both invariants ---
    {
        let rational_cocycles = MixedSubgroup::new(nh, Vec::new(), kernel_basis(&delta_km1))?;
        let mut den = MixedSubgroup::new(
            nh,
            Vec::new(),
            if cone.chain_dim(k - 2) == 0 { Vec::new() } else { nonzero_columns(&delta_km2) },
        )?;
        // plus the integer cocycle lattice: the image of the integral classes
        let int_km1 = if nh == 0 {
            Vec::new()
        } else {
            crate::linalg::integer_kernel(
                &delta_km1.to_integer().expect("integral cone differential"),
            )
            .iter()
            .map(|v| linalg::int_vec_to_rat(v))
            .collect()
        };
        den = den.sum(&MixedSubgroup::new(nh, int_km1, Vec::new())?)?;
        let left = Subquotient::new(rational_cocycles, den)?;
        let mut mat = RatMat::zeros(n, nh);
        write_identity_rows(&mut mat, &layout, Block::MRat, nh, 0);

        // R^k: pairs ((omega, theta), (c, b)) in period forms x integer
        // cocycles with equal rational cohomology classes
        let nf = layout.dim(Block::MForm) + layout.dim(Block::AForm);
        let prod_ambient = nf + nc;
        let omega = relative_lambda_period_forms(rho, k)?;
        let product = omega.embed(prod_ambient, 0).sum(&int_cocycles.embed(prod_ambient, nf))?;
        // difference map (form - cocycle) into the rational cochain space
        let mut diff_map = RatMat::zeros(nf, prod_ambient);
        for i in 0..nf {
            diff_map[(i, i)] = Rat::one();
            diff_map[(i, nf + i)] = -Rat::one();
        }
        let rational_cobounds = MixedSubgroup::new(
            nf,
            Vec::new(),
            if nh == 0 { Vec::new() } else { nonzero_columns(&delta_km1) },
        )?;
        let compatible = product.intersect(&rational_cobounds.preimage_of(&diff_map)?)?;
        let r_den = int_cobounds.embed(prod_ambient, nf);
        let r_term = Subquotient::new(compatible, r_den)?;
        let mut pair_proj = RatMat::zeros(prod_ambient, n);
        write_form_projection_offset(&mut pair_proj, &layout, 0);
        write_int_projection_offset(&mut pair_proj, &layout, nf);

        let mut d = SequenceDiagram::new("curvature and class jointly");
        d.push_term("0", zero_term(0));
        d.push_map("H^{k-1}(C;Q)/r(H^{k-1}(C;Z))", left.clone(), RatMat::zeros(nh, 0))?;
        d.push_map("H^k(char)", hk.clone(), mat)?;
        d.push_map("R^k", r_term, pair_proj)?;
        d.push_map("0", zero_term(0), RatMat::zeros(0, prod_ambient))?;
        let report = d.check()?;
        out.push((d, report));
    }

    Ok(out)
}

fn nonzero_columns(m: &RatMat) -> Vec<Vec<Rat>> {
    m.columns().into_iter().filter(|c| !c.iter().all(Zero::is_zero)).collect()
}

fn integer_cocycle_columns(cone: &ConeComplex, k: isize) -> Vec<Vec<Rat>> {
    if cone.chain_dim(k) == 0 {
        return Vec::new();
    }
    let delta_k = cone.cochain_differential(k);
    crate::linalg::integer_kernel(&delta_k.to_integer().expect("integral cone differential"))
        .iter()
        .map(|v| linalg::int_vec_to_rat(v))
        .collect()
}

fn write_block_rows(
    mat: &mut RatMat,
    layout: &crate::diffchar::Layout,
    block: Block,
    sub: &RatMat,
    col0: usize,
) {
    let r0 = layout.offset(block);
    for i in 0..sub.rows() {
        for j in 0..sub.cols() {
            if !sub[(i, j)].is_zero() {
                mat[(r0 + i, col0 + j)] = sub[(i, j)].clone();
            }
        }
    }
}

fn write_identity_rows(
    mat: &mut RatMat,
    layout: &crate::diffchar::Layout,
    block: Block,
    width: usize,
    col0: usize,
) {
    let r0 = layout.offset(block);
    for i in 0..width {
        mat[(r0 + i, col0 + i)] = Rat::one();
    }
}

/// Rows extracting the (MForm, AForm) pair.
fn write_form_projection(mat: &mut RatMat, layout: &crate::diffchar::Layout) {
    write_form_projection_offset(mat, layout, 0);
}

fn write_form_projection_offset(
    mat: &mut RatMat,
    layout: &crate::diffchar::Layout,
    row0: usize,
) {
    for (r, i) in layout.range(Block::MForm).chain(layout.range(Block::AForm)).enumerate() {
        mat[(row0 + r, i)] = Rat::one();
    }
}

/// Rows extracting the (MInt, AInt) pair.
fn write_int_projection(mat: &mut RatMat, layout: &crate::diffchar::Layout) {
    write_int_projection_offset(mat, layout, 0);
}

fn write_int_projection_offset(mat: &mut RatMat, layout: &crate::diffchar::Layout, row0: usize) {
    for (r, i) in layout.range(Block::MInt).chain(layout.range(Block::AInt)).enumerate() {
        mat[(row0 + r, i)] = Rat::one();
    }
}

/// The long exact sequence of the Hopkins-Singer product complex over
/// degrees `k_min ..= k_max`:
/// `... -> H^{k-1}(A) -> H^k(HS) -> H^k(M) -> H^k(A) -> ...`
pub fn hs_long_exact_sequence(
    rho: &SimplicialMap,
    k_min: isize,
    k_max: isize,
) -> Result<(SequenceDiagram, ExactnessReport), SequenceError> {
    let hs = CharComplex::build(Flavor::HsProduct, rho)?;
    let abs_m = CharComplex::build_absolute(rho.target())?;
    let abs_a = CharComplex::build_absolute(rho.source())?;
    hs_long_exact_sequence_with(&hs, &abs_m, &abs_a, k_min, k_max)
}

pub fn hs_long_exact_sequence_with(
    hs: &CharComplex,
    abs_m: &CharComplex,
    abs_a: &CharComplex,
    k_min: isize,
    k_max: isize,
) -> Result<(SequenceDiagram, ExactnessReport), SequenceError> {
    assert!(k_min >= 1 && k_min <= k_max);
    let rho = hs.rho();
    let mut d = SequenceDiagram::new("long exact sequence");

    let abs_layout = |cx: &CharComplex, k: isize| cx.layout(k).cloned();
    let dim_abs = |cx: &CharComplex, k: isize| cx.ambient_dim(k);

    // inclusion of the shifted source triple into the product complex
    let l_matrix = |k: isize| -> RatMat {
        // A triple at degree k-1 occupies the A blocks of the HS layout
        let la = abs_layout(abs_a, k - 1);
        let lh = hs.layout(k).cloned();
        let cols = dim_abs(abs_a, k - 1);
        let rows = hs.ambient_dim(k);
        let mut m = RatMat::zeros(rows, cols);
        if let (Some(la), Some(lh)) = (la, lh) {
            // source blocks MInt/MRat/MForm at degree k-1 map to the HS
            // blocks AInt/ARat/AForm at degree k; dimensions agree
            for (to, from) in
                [(Block::AInt, Block::MInt), (Block::ARat, Block::MRat), (Block::AForm, Block::MForm)]
            {
                for (i, (r, c)) in lh.range(to).zip(la.range(from)).enumerate() {
                    let _ = i;
                    m[(r, c)] = Rat::one();
                }
            }
        }
        m
    };
    // projection of the product complex onto the target triple
    let q_matrix = |k: isize| -> RatMat {
        let lm = abs_layout(abs_m, k);
        let lh = hs.layout(k).cloned();
        let rows = dim_abs(abs_m, k);
        let cols = hs.ambient_dim(k);
        let mut m = RatMat::zeros(rows, cols);
        if let (Some(lm), Some(lh)) = (lm, lh) {
            for (to, from) in
                [(Block::MInt, Block::MInt), (Block::MRat, Block::MRat), (Block::MForm, Block::MForm)]
            {
                for (r, c) in lm.range(to).zip(lh.range(from)) {
                    m[(r, c)] = Rat::one();
                }
            }
        }
        m
    };
    // connecting map: componentwise pullback on the absolute triples
    let rho_matrix = |k: isize| -> RatMat {
        let lm = abs_layout(abs_m, k);
        let la = abs_layout(abs_a, k);
        let rows = dim_abs(abs_a, k);
        let cols = dim_abs(abs_m, k);
        let mut m = RatMat::zeros(rows, cols);
        if let (Some(lm), Some(la)) = (lm, la) {
            let pull_k = rho.pullback(k);
            let pull_km1 = rho.pullback(k - 1);
            for (block, pull) in [
                (Block::MInt, &pull_k),
                (Block::MRat, &pull_km1),
                (Block::MForm, &pull_k),
            ] {
                let r0 = la.offset(block);
                let c0 = lm.offset(block);
                for i in 0..pull.rows() {
                    for j in 0..pull.cols() {
                        if !pull[(i, j)].is_zero() {
                            m[(r0 + i, c0 + j)] = pull[(i, j)].clone();
                        }
                    }
                }
            }
        }
        m
    };

    d.push_term(format!("H^{}(A)", k_min - 1), abs_a.homology_subquotient(k_min - 1)?);
    for k in k_min..=k_max {
        d.push_map(format!("H^{}(HS)", k), hs.homology_subquotient(k)?, l_matrix(k))?;
        d.push_map(format!("H^{}(M)", k), abs_m.homology_subquotient(k)?, q_matrix(k))?;
        d.push_map(format!("H^{}(A)", k), abs_a.homology_subquotient(k)?, rho_matrix(k))?;
    }
    let report = d.check()?;
    Ok((d, report))
}

/// The two short exact sequences relating the vanishing subgroup, built from
/// the inclusion of complexes and checked in degree k, together with the
/// auxiliary vanishing of the forms projection on Hopkins-Singer cocycles.
///
/// 1. `0 -> H^k_0 -> H^k(char) -> image forms / source period forms -> 0`
/// 2. `0 -> target period forms / vanishing forms -> H^k_0 -> H^k(HS) -> 0`
pub struct VanishingSequences {
    pub inclusion: (SequenceDiagram, ExactnessReport),
    pub forms_quotient: (SequenceDiagram, ExactnessReport),
    pub hs_forms_projection_vanishes: bool,
}

pub fn vanishing_sequences(
    rho: &SimplicialMap,
    k: isize,
) -> Result<VanishingSequences, SequenceError> {
    let rel = CharComplex::build(Flavor::RelativeCs, rho)?;
    let cs0 = CharComplex::build(Flavor::Cs0, rho)?;
    let hsm = CharComplex::build(Flavor::HsMixed, rho)?;
    vanishing_sequences_with(&rel, &cs0, &hsm, k)
}

pub fn vanishing_sequences_with(
    rel: &CharComplex,
    cs0: &CharComplex,
    hsm: &CharComplex,
    k: isize,
) -> Result<VanishingSequences, SequenceError> {
    assert!(k >= 1);
    let rho = rel.rho();
    let layout = rel.layout(k).cloned().unwrap_or_else(|| rel.layout(rel.max_degree()).unwrap().clone());
    let n = rel.ambient_dim(k);

    // sequence 1: inclusion then the theta projection
    let inclusion = {
        let h0 = cs0.homology_subquotient(k)?;
        let hrel = rel.homology_subquotient(k)?;
        let right = Subquotient::new(
            image_forms(rho, k)?,
            lambda_period_forms(rho.source(), k - 1)?,
        )?;
        let na = layout.dim(Block::AForm);
        let mut proj = RatMat::zeros(na, n);
        for (r, i) in layout.range(Block::AForm).enumerate() {
            proj[(r, i)] = Rat::one();
        }
        let mut d = SequenceDiagram::new("vanishing subgroup inclusion");
        d.push_term("0", zero_term(0));
        d.push_map("H^k_0", h0, RatMat::zeros(n, 0))?;
        d.push_map("H^k(char)", hrel, RatMat::identity(n))?;
        d.push_map("image forms/source periods", right, proj)?;
        d.push_map("0", zero_term(0), RatMat::zeros(0, na))?;
        let report = d.check()?;
        (d, report)
    };

    // sequence 2: the forms quotient, the vanishing subgroup, Hopkins-Singer
    let forms_quotient = {
        let m = rho.target();
        let nu_dim = m.num_simplices(k - 1);
        let left = Subquotient::new(
            lambda_period_forms(m, k - 1)?,
            riza_forms(rho, k - 1)?,
        )?;
        // phi: nu -> ((0,0), (nu, 0), (0, rho^* nu))
        let mut phi = RatMat::zeros(n, nu_dim);
        let r0 = layout.offset(Block::MRat);
        for i in 0..nu_dim {
            phi[(r0 + i, i)] = Rat::one();
        }
        let pull = rho.pullback(k - 1);
        let t0 = layout.offset(Block::AForm);
        for i in 0..pull.rows() {
            for j in 0..pull.cols() {
                if !pull[(i, j)].is_zero() {
                    phi[(t0 + i, j)] = pull[(i, j)].clone();
                }
            }
        }
        let h0 = cs0.homology_subquotient(k)?;
        let hhs = hsm.homology_subquotient(k)?;
        let mut d = SequenceDiagram::new("forms quotient and Hopkins-Singer");
        d.push_term("0", zero_term(0));
        d.push_map("target periods/vanishing forms", left, RatMat::zeros(nu_dim, 0))?;
        d.push_map("H^k_0", h0, phi)?;
        d.push_map("H^k(HS)", hhs, RatMat::identity(n))?;
        d.push_map("0", zero_term(0), RatMat::zeros(0, n))?;
        let report = d.check()?;
        (d, report)
    };

    // auxiliary claim: the forms projection of every Hopkins-Singer cocycle
    // lies in the vanishing forms subgroup
    let hs_forms_projection_vanishes = {
        let nm = layout.dim(Block::MForm);
        let mut proj = RatMat::zeros(nm, n);
        for (r, i) in layout.range(Block::MForm).enumerate() {
            proj[(r, i)] = Rat::one();
        }
        let z = hsm.cocycle_group(k)?;
        let image = z.image_of(&proj)?;
        riza_forms(rho, k)?.contains_subgroup(&image)?
    };

    Ok(VanishingSequences { inclusion, forms_quotient, hs_forms_projection_vanishes })
}

/// Build the suite of standard pairs named across the tests and reports.
pub fn standard_pairs() -> Vec<(String, SimplicialMap)> {
    use crate::simplicial::{shapes, SimplicialComplex};
    let circle_in_annulus = {
        let a = SimplicialComplex::new(
            6,
            &[vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]],
        )
        .unwrap();
        SimplicialMap::new(a, shapes::annulus(), vec![0, 1, 2, 3, 4, 5]).unwrap()
    };
    vec![
        (
            "empty -> S^1".to_string(),
            SimplicialMap::from_empty(shapes::circle(3)),
        ),
        (
            "empty -> S^2".to_string(),
            SimplicialMap::from_empty(shapes::sphere2()),
        ),
        (
            "S^0 -> D^1".to_string(),
            SimplicialMap::new(shapes::two_points(), shapes::interval(), vec![0, 1]).unwrap(),
        ),
        (
            "S^1 -> D^2".to_string(),
            SimplicialMap::new(shapes::circle(6), shapes::hex_disk(), vec![1, 2, 3, 4, 5, 6])
                .unwrap(),
        ),
        (
            "S^1 -> S^1 degree 2".to_string(),
            SimplicialMap::new(shapes::circle(6), shapes::circle(3), vec![0, 1, 2, 0, 1, 2])
                .unwrap(),
        ),
        ("S^1 + S^1 -> annulus".to_string(), circle_in_annulus),
    ]
}

/// Degree bound used by the verification suites for a pair.
pub fn suite_max_degree(rho: &SimplicialMap) -> isize {
    rho.target().dim().max(rho.source().dim() + 1) + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat, Mat};
    use crate::simplicial::{shapes, SimplicialComplex};

    fn z_group() -> Subquotient {
        Subquotient::from_group(MixedSubgroup::full_lattice(1))
    }

    fn z_mod(m: i64) -> Subquotient {
        Subquotient::new(
            MixedSubgroup::full_lattice(1),
            MixedSubgroup::new(1, vec![vec![rat(m)]], vec![]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn identity_sequence_exact() {
        let mut d = SequenceDiagram::new("identity");
        d.push_term("0", Subquotient::zero(0));
        d.push_map("G", z_group(), RatMat::zeros(1, 0)).unwrap();
        d.push_map("G", z_group(), RatMat::identity(1)).unwrap();
        d.push_map("0", Subquotient::zero(0), RatMat::zeros(0, 1)).unwrap();
        assert!(d.check().unwrap().all_exact());
    }

    #[test]
    fn doubling_sequence_exact() {
        let mut d = SequenceDiagram::new("0 -> Z -x2-> Z -> Z/2 -> 0");
        d.push_term("0", Subquotient::zero(0));
        d.push_map("Z", z_group(), RatMat::zeros(1, 0)).unwrap();
        d.push_map("Z", z_group(), Mat::from_rows(vec![vec![rat(2)]])).unwrap();
        d.push_map("Z/2", z_mod(2), RatMat::identity(1)).unwrap();
        d.push_map("0", Subquotient::zero(0), RatMat::zeros(0, 1)).unwrap();
        assert!(d.check().unwrap().all_exact());
    }

    #[test]
    fn corrupted_map_flagged_with_genuine_witness() {
        // x3 in place of x2 with target Z/2: the composite Z -> Z/2 no longer
        // vanishes
        let mut d = SequenceDiagram::new("corrupted");
        d.push_term("0", Subquotient::zero(0));
        d.push_map("Z", z_group(), RatMat::zeros(1, 0)).unwrap();
        d.push_map("Z", z_group(), Mat::from_rows(vec![vec![rat(3)]])).unwrap();
        d.push_map("Z/2", z_mod(2), RatMat::identity(1)).unwrap();
        d.push_map("0", Subquotient::zero(0), RatMat::zeros(0, 1)).unwrap();
        let report = d.check().unwrap();
        assert!(!report.all_exact());
        let (_, verdict) = &report.positions[1];
        assert!(matches!(verdict, Verdict::CompositeNonzero { .. }));
        assert!(witness_is_genuine(&d.maps[1], &d.maps[2], verdict).unwrap());
    }

    #[test]
    fn character_sequences_disk() {
        let rho =
            SimplicialMap::new(shapes::circle(6), shapes::hex_disk(), vec![1, 2, 3, 4, 5, 6])
                .unwrap();
        for (d, report) in character_sequences(&rho, 2).unwrap() {
            assert!(report.all_exact(), "sequence {} failed: {:?}", d.name, report.positions);
        }
    }

    #[test]
    fn character_sequences_absolute_sphere() {
        let rho = SimplicialMap::from_empty(shapes::sphere2());
        for (d, report) in character_sequences(&rho, 2).unwrap() {
            assert!(report.all_exact(), "sequence {} failed", d.name);
        }
    }

    #[test]
    fn character_sequences_degree_two_map_torsion() {
        let rho =
            SimplicialMap::new(shapes::circle(6), shapes::circle(3), vec![0, 1, 2, 0, 1, 2])
                .unwrap();
        let seqs = character_sequences(&rho, 2).unwrap();
        for (d, report) in &seqs {
            assert!(report.all_exact(), "sequence {} failed: {:?}", d.name, report.positions);
        }
        // the class sequence has torsion target H^2(C;Z) = Z/2
        let hz = &seqs[1].0.terms[3].subquotient;
        let dec = crate::mixed::decompose(hz).unwrap();
        assert_eq!(dec.shape(), (0, 0, 0, vec![int(2)]));
    }

    #[test]
    fn hs_les_disk() {
        let rho =
            SimplicialMap::new(shapes::circle(6), shapes::hex_disk(), vec![1, 2, 3, 4, 5, 6])
                .unwrap();
        let (_, report) = hs_long_exact_sequence(&rho, 1, 4).unwrap();
        assert!(report.all_exact(), "{:?}", report.positions);
    }

    #[test]
    fn hs_les_empty_source_gives_isomorphisms() {
        let rho = SimplicialMap::from_empty(shapes::circle(3));
        let hs = CharComplex::build(Flavor::HsProduct, &rho).unwrap();
        let abs_m = CharComplex::build_absolute(rho.target()).unwrap();
        let abs_a = CharComplex::build_absolute(rho.source()).unwrap();
        let (d, report) = hs_long_exact_sequence_with(&hs, &abs_m, &abs_a, 1, 3).unwrap();
        assert!(report.all_exact());
        // each q is an isomorphism
        for (i, map) in d.maps.iter().enumerate() {
            if d.terms[i + 1].label.contains("(M)") {
                assert!(map.is_isomorphism_induced().unwrap());
            }
        }
    }

    #[test]
    fn hs_vanishes_for_identity_circle() {
        let rho = SimplicialMap::identity(&shapes::circle(3));
        let (d, report) = hs_long_exact_sequence(&rho, 1, 3).unwrap();
        assert!(report.all_exact());
        for (i, term) in d.terms.iter().enumerate() {
            if term.label.contains("(HS)") {
                let dec = crate::mixed::decompose(&term.subquotient).unwrap();
                assert!(dec.is_trivial(), "term {} = {}", i, term.label);
            }
        }
    }

    #[test]
    fn vanishing_sequences_interval() {
        let rho =
            SimplicialMap::new(shapes::two_points(), shapes::interval(), vec![0, 1]).unwrap();
        let v = vanishing_sequences(&rho, 2).unwrap();
        assert!(v.inclusion.1.all_exact(), "{:?}", v.inclusion.1.positions);
        assert!(v.forms_quotient.1.all_exact(), "{:?}", v.forms_quotient.1.positions);
        assert!(v.hs_forms_projection_vanishes);
    }

    #[test]
    fn character_sequences_point_inclusion() {
        let rho = SimplicialMap::identity(&SimplicialComplex::point());
        for k in 1..=2isize {
            for (d, report) in character_sequences(&rho, k).unwrap() {
                assert!(report.all_exact(), "sequence {} at degree {}", d.name, k);
            }
        }
    }

    #[test]
    fn vanishing_middle_term_carries_the_circle_group() {
        // on the disk pair in degree 3 the theta constraint is vacuous, so
        // the vanishing subgroup is the whole degree-3 character group Q/Z
        let rho =
            SimplicialMap::new(shapes::circle(6), shapes::hex_disk(), vec![1, 2, 3, 4, 5, 6])
                .unwrap();
        let v = vanishing_sequences(&rho, 3).unwrap();
        assert!(v.inclusion.1.all_exact());
        assert!(v.forms_quotient.1.all_exact());
        let middle = &v.inclusion.0.terms[1].subquotient;
        let dec = crate::mixed::decompose(middle).unwrap();
        assert_eq!(dec.shape(), (0, 1, 0, vec![]));
    }

    #[test]
    fn vanishing_sequences_collapse_for_empty_source() {
        let rho = SimplicialMap::from_empty(shapes::circle(3));
        let v = vanishing_sequences(&rho, 2).unwrap();
        assert!(v.inclusion.1.all_exact());
        assert!(v.forms_quotient.1.all_exact());
        // with no source the two complexes coincide degreewise
        let left = &v.forms_quotient.0.terms[1].subquotient;
        assert!(left.is_zero_quotient().unwrap());
    }

    #[test]
    fn no_long_exact_sequence_obstruction_witness() {
        // a relative period pair whose theta is not closed: its curvature
        // does not pull back to zero, which blocks any naive restriction
        // sequence for the relative character group
        let a = SimplicialComplex::new(
            6,
            &[vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]],
        )
        .unwrap();
        let rho = SimplicialMap::new(a, shapes::annulus(), vec![0, 1, 2, 3, 4, 5]).unwrap();
        let omega = relative_lambda_period_forms(&rho, 1).unwrap();
        let nm = rho.target().num_simplices(1);
        let da = rho.source().coboundary_matrix(0);
        let pull = rho.pullback(1);
        let mut found = false;
        for g in omega.lattice_gens().iter().chain(omega.subspace_gens()) {
            let theta = &g[nm..];
            // d theta = rho^* omega on the source; if theta fails to be
            // closed the pullback of omega is nonzero
            let pulled = pull.mul_vec(&g[..nm].to_vec());
            if !linalg::vec_is_zero(&pulled) {
                // closedness of the pair forces d theta = rho^* omega != 0
                let dtheta = da.mul_vec(&{
                    // theta lives on source vertices at degree 0
                    theta.to_vec()
                });
                assert_eq!(dtheta, pulled);
                found = true;
            }
        }
        assert!(found, "expected a generator with non-closed theta");
    }
}
