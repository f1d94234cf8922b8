//! Unital functionals and the maximality decision procedures.
//!
//! A functional phi on M_k(F) is *tracial* on a unital subalgebra A when
//! phi(ab) = phi(ba) for all a, b in A, and A is *maximal phi-tracial* when
//! no strictly larger unital subalgebra of M_k(F) is phi-tracial.
//! [`decide_maximal`] answers the maximality question through a cascade of
//! criteria, each of which attaches a [`Certificate`] that can be replayed
//! independently of the run that produced it (see [`Verdict::recheck`]).
//!
//! The workhorse is the *tracial extension space* ([`foes`]): the set of
//! matrices T satisfying the linear constraints phi(BTC) = phi(TCB) for all
//! B, C in a basis of A. If a unital algebra D with A ⊆ D is phi-tracial,
//! then every T in D satisfies those constraints (phi((BT)C) = phi(C(BT)) =
//! phi((CB)T) = phi(T(CB)) inside D), so D sits inside the extension space.
//! In particular the extension space equalling A certifies maximality, and
//! any tracial extension element must be hunted inside it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{LatticeReport, MatrixAlgebra, Ternary, Transitivity};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{solve_homogeneous, Matrix, Subspace, Vector};

/// A unital linear functional on M_k(F), in one of two presentations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Functional {
    /// phi(T) = Tr(T K) for a fixed matrix K with Tr(K) = 1.
    KForm { k_matrix: Matrix },
    /// phi(T) = <T x, alpha> for vectors with <x, alpha> = 1.
    RankOne { x: Vector, alpha: Vector },
}

impl Functional {
    /// Builds the trace-form functional phi(T) = Tr(T K); unitality
    /// (phi(I) = Tr(K) = 1) is enforced.
    pub fn k_form(k_matrix: Matrix) -> Result<Self> {
        if !k_matrix.trace().is_one() {
            return Err(Error::NotUnitalFunctional);
        }
        Ok(Functional::KForm { k_matrix })
    }

    /// Builds the rank-one functional phi(T) = <T x, alpha>; unitality
    /// (phi(I) = <x, alpha> = 1) is enforced.
    pub fn rank_one(x: Vector, alpha: Vector) -> Result<Self> {
        if !x.dot(&alpha)?.is_one() {
            return Err(Error::NotUnitalPairing);
        }
        Ok(Functional::RankOne { x, alpha })
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Functional::KForm { k_matrix } => k_matrix.field(),
            Functional::RankOne { x, .. } => x.field(),
        }
    }

    pub fn k(&self) -> usize {
        match self {
            Functional::KForm { k_matrix } => k_matrix.k(),
            Functional::RankOne { x, .. } => x.dim(),
        }
    }

    pub fn is_rank_one(&self) -> bool {
        matches!(self, Functional::RankOne { .. })
    }

    /// The defining pair of a rank-one functional.
    pub fn rank_one_parts(&self) -> Option<(&Vector, &Vector)> {
        match self {
            Functional::RankOne { x, alpha } => Some((x, alpha)),
            Functional::KForm { .. } => None,
        }
    }

    /// Evaluates the functional on a matrix.
    pub fn eval(&self, t: &Matrix) -> Scalar {
        assert_eq!(t.k(), self.k(), "functional evaluated at the wrong size");
        assert_eq!(t.field(), self.field(), "functional evaluated over the wrong field");
        match self {
            Functional::KForm { k_matrix } => t.mul(k_matrix).trace(),
            Functional::RankOne { x, alpha } => {
                t.apply(x).dot(alpha).expect("shapes agree")
            }
        }
    }

    /// The matrix K with phi(T) = Tr(T K). For a rank-one pair this is the
    /// outer product K = x alpha^T, since
    /// <T x, alpha> = sum_{i,j} T_{ij} x_j alpha_i = Tr(T K).
    pub fn to_k_form(&self) -> Matrix {
        match self {
            Functional::KForm { k_matrix } => k_matrix.clone(),
            Functional::RankOne { x, alpha } => {
                Matrix::from_fn(&x.field(), x.dim(), |i, j| x.entry(i).mul(alpha.entry(j)))
            }
        }
    }

    /// The adjoint functional phi#, defined by phi#(T) = phi(T^T). For a
    /// K-form this transposes K; for a rank-one pair it swaps the vectors.
    pub fn adjoint(&self) -> Functional {
        match self {
            Functional::KForm { k_matrix } => {
                Functional::KForm { k_matrix: k_matrix.transpose() }
            }
            Functional::RankOne { x, alpha } => {
                Functional::RankOne { x: alpha.clone(), alpha: x.clone() }
            }
        }
    }
}

pub(crate) fn check_compat(algebra: &MatrixAlgebra, phi: &Functional) -> Result<()> {
    if algebra.field() != phi.field() {
        return Err(Error::FieldMismatch(algebra.field(), phi.field()));
    }
    if algebra.k() != phi.k() {
        return Err(Error::DimensionMismatch { expected: algebra.k(), got: phi.k() });
    }
    Ok(())
}

/// Finds a pair (a, b) of algebra elements with phi(ab) != phi(ba), if one
/// exists. The defect phi(ab) - phi(ba) is bilinear and antisymmetric, so
/// checking unordered basis pairs is exhaustive. Returns the first
/// violating pair in basis order.
pub fn traciality_violation(
    algebra: &MatrixAlgebra,
    phi: &Functional,
) -> Result<Option<(Matrix, Matrix)>> {
    check_compat(algebra, phi)?;
    let mats = algebra.basis_matrices();
    for (i, a) in mats.iter().enumerate() {
        for b in &mats[i + 1..] {
            if phi.eval(&a.mul(b)) != phi.eval(&b.mul(a)) {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

/// True iff phi is tracial on the algebra.
pub fn is_tracial(algebra: &MatrixAlgebra, phi: &Functional) -> Result<bool> {
    Ok(traciality_violation(algebra, phi)?.is_none())
}

/// The tracial extension space of a phi-tracial algebra A: all matrices T
/// with phi(BTC) = phi(TCB) for every pair (B, C) from a basis of A
/// (equivalently, by bilinearity, for all B, C in A).
///
/// Two facts make this the right hunting ground for maximality:
///
/// * A itself is contained in it (instantiate traciality of A twice), and
///   the containment is asserted at runtime.
/// * Every phi-tracial algebra D between A and M_k is contained in it: for
///   T in D and B, C in A, all three live in D, so phi((BT)C) = phi(C(BT))
///   = phi((CB)T) = phi(T(CB)).
///
/// Hence the space equalling A proves that no phi-tracial extension of A
/// exists. Requires phi tracial on A ([`Error::NotTracial`] otherwise).
///
/// The constraint row for a pair (B, C) comes from
/// phi(P T Q) = Tr(P T Q K) = sum_{u,v} T_{uv} (Q K P)_{vu}:
/// with P = B, Q = C for the left side and P = I, Q = CB for the right, the
/// coefficient vector of T is the row-major flattening of
/// (C K B - C B K)^T.
pub fn foes(algebra: &MatrixAlgebra, phi: &Functional) -> Result<Subspace> {
    check_compat(algebra, phi)?;
    if traciality_violation(algebra, phi)?.is_some() {
        return Err(Error::NotTracial);
    }
    let k = algebra.k();
    let k_matrix = phi.to_k_form();
    let mats = algebra.basis_matrices();
    let mut constraints = Vec::with_capacity(mats.len() * mats.len());
    for b in &mats {
        for c in &mats {
            let left = c.mul(&k_matrix).mul(b);
            let right = c.mul(b).mul(&k_matrix);
            constraints.push(left.sub(&right).transpose().vectorize());
        }
    }
    let space = solve_homogeneous(&algebra.field(), k * k, &constraints)
        .expect("constraint rows are well-shaped");
    assert!(
        space.contains(algebra.basis_space()),
        "a tracial algebra satisfies its own extension constraints"
    );
    Ok(space)
}

/// Maximality verdict outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// No strictly larger phi-tracial unital subalgebra exists.
    Maximal,
    /// A strictly larger phi-tracial unital subalgebra exists.
    NotMaximal,
    /// phi is not even tracial on the algebra itself.
    NotTracial,
    /// The budgeted search was exhausted without a decision.
    Unknown,
}

/// Replayable evidence attached to a [`Verdict`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The tracial extension space equals the algebra, so no tracial
    /// extension can exist.
    FoesEqualsAlgebra,
    /// Every element of the (finite) tracial extension space was tested and
    /// none generates a tracial extension.
    ExhaustiveSearch { enumerated: u128 },
    /// The rank-one structural criterion held: maximal abelian, defining
    /// vector cyclic, adjoint vector cyclic for the transposed algebra.
    CyclicityCriterion { checklist: CriterionChecklist },
    /// An explicit matrix outside the algebra whose adjunction stays
    /// tracial.
    WitnessExtension { witness: Matrix },
    /// Two algebra elements with phi(ab) != phi(ba).
    TracialityViolation { left: Matrix, right: Matrix },
    /// The algebra is an irreducible two-dimensional subalgebra of the 2x2
    /// matrices (a quadratic field extension), so its only proper unital
    /// extension is the full matrix algebra, and the attached pair violates
    /// traciality of phi there.
    QuadraticFieldObstruction { left: Matrix, right: Matrix },
}

/// The three conditions of the rank-one maximality criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriterionChecklist {
    /// The algebra equals its own commutant (and is abelian).
    pub maximal_abelian: bool,
    /// The defining vector x is cyclic for the algebra.
    pub vector_cyclic: bool,
    /// The dual vector alpha is cyclic for the transposed algebra.
    pub adjoint_vector_cyclic: bool,
}

impl CriterionChecklist {
    pub fn all(&self) -> bool {
        self.maximal_abelian && self.vector_cyclic && self.adjoint_vector_cyclic
    }
}

/// Upper bound on pseudo-random sampling draws in the last-resort branch of
/// [`decide_maximal`]: each draw costs a closure computation, so the (much
/// larger) enumeration budget must not carry over one-for-one.
pub const SAMPLING_DRAW_CAP: u64 = 4096;

/// Tuning knobs for the budgeted searches inside [`decide_maximal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecisionOptions {
    /// Maximum number of candidate matrices any single enumeration or
    /// sampling loop may test; pseudo-random sampling is additionally capped
    /// at [`SAMPLING_DRAW_CAP`] draws.
    pub budget: u64,
    /// Seed for the pseudo-random sampling fallback; recorded in the
    /// verdict whenever sampling ran, so runs are reproducible.
    pub seed: u64,
}

impl Default for DecisionOptions {
    fn default() -> Self {
        DecisionOptions { budget: 20_000_000, seed: 0 }
    }
}

/// The result of a maximality decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub certificate: Option<Certificate>,
    /// Populated when the rank-one criterion was evaluated, whatever the
    /// outcome.
    pub checklist: Option<CriterionChecklist>,
    /// The sampling seed, when pseudo-random sampling was used.
    pub seed: Option<u64>,
}

impl Verdict {
    fn bare(outcome: Outcome, certificate: Option<Certificate>) -> Self {
        Verdict { outcome, certificate, checklist: None, seed: None }
    }

    /// Replays the certificate against the given algebra and functional.
    /// Returns true iff the certificate still supports the outcome. Errors
    /// only on shape/field mismatches; a certificate that fails to hold is
    /// reported as `Ok(false)`.
    pub fn recheck(&self, algebra: &MatrixAlgebra, phi: &Functional) -> Result<bool> {
        check_compat(algebra, phi)?;
        match (&self.outcome, &self.certificate) {
            (Outcome::NotTracial, Some(Certificate::TracialityViolation { left, right })) => {
                Ok(algebra.contains(left)?
                    && algebra.contains(right)?
                    && phi.eval(&left.mul(right)) != phi.eval(&right.mul(left)))
            }
            (Outcome::Maximal, Some(Certificate::FoesEqualsAlgebra)) => {
                match foes(algebra, phi) {
                    Ok(space) => Ok(&space == algebra.basis_space()),
                    Err(Error::NotTracial) => Ok(false),
                    Err(e) => Err(e),
                }
            }
            (Outcome::Maximal, Some(Certificate::ExhaustiveSearch { enumerated })) => {
                let space = match foes(algebra, phi) {
                    Ok(space) => space,
                    Err(Error::NotTracial) => return Ok(false),
                    Err(e) => return Err(e),
                };
                let Some(count) = space.element_count() else {
                    return Ok(false);
                };
                if count != *enumerated {
                    return Ok(false);
                }
                let Some(elements) = space.elements() else {
                    return Ok(false);
                };
                for v in elements {
                    let t = Matrix::unvectorize(&v, algebra.k()).expect("ambient k^2");
                    if !algebra.contains(&t)? && extends_tracially(algebra, phi, &t)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (Outcome::Maximal, Some(Certificate::CyclicityCriterion { checklist })) => {
                match rank_one_criterion(algebra, phi) {
                    Ok(report) => {
                        Ok(report.checklist == *checklist && report.checklist.all())
                    }
                    Err(Error::NotAbelian | Error::RankOneRequired) => Ok(false),
                    Err(e) => Err(e),
                }
            }
            (Outcome::Maximal, Some(Certificate::QuadraticFieldObstruction { left, right })) => {
                if algebra.k() != 2 || algebra.dim() != 2 {
                    return Ok(false);
                }
                if left.field() != algebra.field()
                    || right.field() != algebra.field()
                    || left.k() != 2
                    || right.k() != 2
                {
                    return Ok(false);
                }
                if traciality_violation(algebra, phi)?.is_some() {
                    return Ok(false);
                }
                let Some(t) = algebra.basis_matrices().into_iter().find(|m| !m.is_scalar())
                else {
                    return Ok(false);
                };
                let irreducible = matches!(
                    crate::algebra::similarity_to_canonical_2x2(&t),
                    Ok((crate::algebra::CanonicalForm2x2::CompanionIrreducible(..), _))
                );
                Ok(irreducible
                    && phi.eval(&left.mul(right)) != phi.eval(&right.mul(left)))
            }
            (Outcome::NotMaximal, Some(Certificate::WitnessExtension { witness })) => {
                verify_extension_witness(algebra, phi, witness)
            }
            (Outcome::Unknown, None) => Ok(true),
            _ => Ok(false),
        }
    }
}

/// True iff adjoining `t` to the algebra keeps phi tracial: t lies outside
/// the algebra and the unital closure of (algebra, t) has no traciality
/// violation.
pub fn verify_extension_witness(
    algebra: &MatrixAlgebra,
    phi: &Functional,
    t: &Matrix,
) -> Result<bool> {
    check_compat(algebra, phi)?;
    if t.field() != algebra.field() {
        return Err(Error::FieldMismatch(algebra.field(), t.field()));
    }
    if algebra.contains(t)? {
        return Ok(false);
    }
    extends_tracially(algebra, phi, t)
}

fn extends_tracially(algebra: &MatrixAlgebra, phi: &Functional, t: &Matrix) -> Result<bool> {
    let mut generators = algebra.basis_matrices();
    generators.push(t.clone());
    let bigger = MatrixAlgebra::unital_closure(&algebra.field(), algebra.k(), &generators)?;
    is_tracial(&bigger, phi)
}

/// Decides whether the algebra is maximal phi-tracial.
///
/// The cascade:
/// 1. If phi is not tracial on A, the question does not arise: the verdict
///    is NotTracial with a violating pair.
/// 2. If the tracial extension space equals A, the verdict is Maximal
///    unconditionally (any tracial extension would live in that space).
/// 3. Over a prime field, if the extension space has at most `budget`
///    elements, every one is tested as a generator: complete in both
///    directions (each tracial extension of A is generated over A by such
///    an element).
/// 4. Over Q, for a rank-one functional on an abelian algebra, the
///    structural criterion decides: maximal iff A is maximal abelian, x is
///    cyclic for A, and alpha is cyclic for the transposed algebra; on
///    failure an explicit witness extension is constructed.
/// 5. Otherwise, the pivot-complement basis vectors of the extension space
///    over A are tested, then seeded pseudo-random elements of the space
///    (at most `budget` draws, capped at [`SAMPLING_DRAW_CAP`] so the
///    enumeration budget does not translate into millions of closure
///    computations); a hit proves NotMaximal, exhaustion returns Unknown.
pub fn decide_maximal(
    algebra: &MatrixAlgebra,
    phi: &Functional,
    options: &DecisionOptions,
) -> Result<Verdict> {
    check_compat(algebra, phi)?;
    if let Some((left, right)) = traciality_violation(algebra, phi)? {
        return Ok(Verdict::bare(
            Outcome::NotTracial,
            Some(Certificate::TracialityViolation { left, right }),
        ));
    }
    let space = foes(algebra, phi)?;
    if &space == algebra.basis_space() {
        return Ok(Verdict::bare(Outcome::Maximal, Some(Certificate::FoesEqualsAlgebra)));
    }
    if algebra.field().is_finite() {
        if let Some(count) = space.element_count() {
            if count <= options.budget as u128 {
                for v in space.elements().expect("finite field") {
                    let t = Matrix::unvectorize(&v, algebra.k()).expect("ambient k^2");
                    if algebra.contains(&t)? {
                        continue;
                    }
                    if extends_tracially(algebra, phi, &t)? {
                        return Ok(Verdict::bare(
                            Outcome::NotMaximal,
                            Some(Certificate::WitnessExtension { witness: t }),
                        ));
                    }
                }
                return Ok(Verdict::bare(
                    Outcome::Maximal,
                    Some(Certificate::ExhaustiveSearch { enumerated: count }),
                ));
            }
        }
    }
    if algebra.field() == FieldSpec::Rationals && phi.is_rank_one() && algebra.is_abelian() {
        let report = rank_one_criterion(algebra, phi)?;
        let verdict = match report.witness {
            None => Verdict {
                outcome: Outcome::Maximal,
                certificate: Some(Certificate::CyclicityCriterion {
                    checklist: report.checklist,
                }),
                checklist: Some(report.checklist),
                seed: None,
            },
            Some(witness) => Verdict {
                outcome: Outcome::NotMaximal,
                certificate: Some(Certificate::WitnessExtension { witness }),
                checklist: Some(report.checklist),
                seed: None,
            },
        };
        return Ok(verdict);
    }
    // Deterministic probes: the pivot-complement rows of the extension
    // space over A.
    for row in algebra.basis_space().complement_rows_within(&space) {
        let t = Matrix::unvectorize(&row, algebra.k()).expect("ambient k^2");
        if extends_tracially(algebra, phi, &t)? {
            return Ok(Verdict::bare(
                Outcome::NotMaximal,
                Some(Certificate::WitnessExtension { witness: t }),
            ));
        }
    }
    // Seeded sampling inside the extension space.
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let basis = space.basis();
    for _ in 0..options.budget.min(SAMPLING_DRAW_CAP) {
        let mut v = Vector::zero(&algebra.field(), algebra.k() * algebra.k());
        for b in basis {
            let c = crate::field::random_scalar(&algebra.field(), &mut rng);
            v = v.add(&b.scale(&c));
        }
        let t = Matrix::unvectorize(&v, algebra.k()).expect("ambient k^2");
        if algebra.contains(&t)? {
            continue;
        }
        if extends_tracially(algebra, phi, &t)? {
            return Ok(Verdict {
                outcome: Outcome::NotMaximal,
                certificate: Some(Certificate::WitnessExtension { witness: t }),
                checklist: None,
                seed: Some(options.seed),
            });
        }
    }
    Ok(Verdict {
        outcome: Outcome::Unknown,
        certificate: None,
        checklist: None,
        seed: Some(options.seed),
    })
}

/// Outcome of the rank-one structural criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub checklist: CriterionChecklist,
    /// A verified extension witness, constructed whenever some condition
    /// fails.
    pub witness: Option<Matrix>,
}

/// The structural maximality criterion for a rank-one functional
/// phi = <. x, alpha> on an abelian algebra: A is maximal phi-tracial iff
/// A is maximal abelian, x is cyclic for A, and alpha is cyclic for the
/// transposed algebra A^T.
///
/// When a condition fails, an explicit extension witness is built and
/// verified before returning:
///
/// * not maximal abelian: any commutant element outside A generates an
///   abelian (hence tracial for every functional) extension;
/// * x not cyclic: with M the orbit of x, the algebra
///   A1 = {T : TM ⊆ M and T|_M = B|_M for some B in A} strictly contains A
///   and is phi-tracial, because STx = B_S B_T x = B_T B_S x = TSx for
///   S, T in A1;
/// * alpha not cyclic for A^T: the previous construction applied to
///   (A^T, alpha) transposes back to a witness for (A, phi), since D is
///   phi-tracial iff D^T is phi#-tracial.
pub fn rank_one_criterion(algebra: &MatrixAlgebra, phi: &Functional) -> Result<CriterionReport> {
    check_compat(algebra, phi)?;
    let (x, alpha) = phi.rank_one_parts().ok_or(Error::RankOneRequired)?;
    if !algebra.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let adjoint = algebra.adjoint_algebra();
    let checklist = CriterionChecklist {
        maximal_abelian: algebra.is_maximal_abelian(),
        vector_cyclic: algebra.is_cyclic(x)?,
        adjoint_vector_cyclic: adjoint.is_cyclic(alpha)?,
    };
    let witness = if checklist.all() {
        None
    } else if !checklist.maximal_abelian {
        Some(commutant_complement_witness(algebra))
    } else if !checklist.vector_cyclic {
        Some(orbit_algebra_witness(algebra, x))
    } else {
        Some(orbit_algebra_witness(&adjoint, alpha).transpose())
    };
    if let Some(w) = &witness {
        assert!(
            verify_extension_witness(algebra, phi, w)?,
            "constructed witness failed verification"
        );
    }
    Ok(CriterionReport { checklist, witness })
}

/// A commutant element outside a non-maximal abelian algebra. Adjoining it
/// keeps the closure abelian (commuting generators), hence tracial for
/// every functional.
fn commutant_complement_witness(algebra: &MatrixAlgebra) -> Matrix {
    let commutant = algebra.commutant();
    let rows = algebra
        .basis_space()
        .complement_rows_within(commutant.basis_space());
    let row = rows
        .first()
        .expect("a non-maximal abelian algebra has commutant elements outside it");
    Matrix::unvectorize(row, algebra.k()).expect("ambient k^2")
}

/// For an abelian algebra with a non-cyclic vector x, builds an element of
/// A1 = {T : T M ⊆ M, T|_M in A|_M} \ A, where M is the orbit of x.
///
/// Both constraint families are linear in T. Invariance rows come from the
/// annihilator of M; restriction rows from the annihilator of the span of
/// the stacked images (B m_1 | ... | B m_j) over the algebra basis.
fn orbit_algebra_witness(algebra: &MatrixAlgebra, x: &Vector) -> Matrix {
    let field = algebra.field();
    let k = algebra.k();
    let m = algebra.orbit_span(x).expect("compatible shapes");
    assert!(!m.is_zero() && !m.is_full(), "x must be nonzero and non-cyclic");
    let m_basis = m.basis();
    let j = m.dim();
    let mut constraints = Vec::new();
    // T M ⊆ M: <g, T m> = sum_{u,v} g_u m_v T_{uv} = 0 for annihilator
    // rows g of M.
    for g in m.annihilator().basis() {
        for mv in m_basis {
            let row = Vector::new(
                field,
                (0..k * k)
                    .map(|idx| g.entry(idx / k).mul(mv.entry(idx % k)))
                    .collect(),
            )
            .expect("entries share the field");
            constraints.push(row);
        }
    }
    // T|_M in A|_M: the stacked image (T m_1 | ... | T m_j) must lie in the
    // span W of the algebra's stacked images.
    let stacked: Vec<Vector> = algebra
        .basis_matrices()
        .iter()
        .map(|b| stack_images(&field, b, m_basis))
        .collect();
    let w = Subspace::span(&field, j * k, &stacked).expect("stacked vectors share shape");
    for h in w.annihilator().basis() {
        let row = Vector::new(
            field,
            (0..k * k)
                .map(|idx| {
                    let (u, v) = (idx / k, idx % k);
                    let mut acc = Scalar::zero(&field);
                    for (s, mv) in m_basis.iter().enumerate() {
                        acc = acc.add(&h.entry(s * k + u).mul(mv.entry(v)));
                    }
                    acc
                })
                .collect(),
        )
        .expect("entries share the field");
        constraints.push(row);
    }
    let space = solve_homogeneous(&field, k * k, &constraints).expect("well-shaped rows");
    let extension = MatrixAlgebra::from_subspace(k, space)
        .expect("the orbit-restricted matrices form a unital algebra");
    assert!(
        extension.contains_algebra(algebra),
        "the orbit algebra contains the original"
    );
    let rows = algebra
        .basis_space()
        .complement_rows_within(extension.basis_space());
    let row = rows
        .first()
        .expect("a non-cyclic orbit admits matrices outside the algebra");
    Matrix::unvectorize(row, k).expect("ambient k^2")
}

fn stack_images(field: &FieldSpec, b: &Matrix, m_basis: &[Vector]) -> Vector {
    let mut entries = Vec::with_capacity(m_basis.len() * b.k());
    for mv in m_basis {
        entries.extend(b.apply(mv).entries().iter().cloned());
    }
    Vector::new(*field, entries).expect("entries share the field")
}

/// Report for the equivalence between structural transitivity and
/// universal rank-one maximality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    /// Whether the algebra is maximal abelian.
    pub maximal_abelian: bool,
    /// Transitivity verdict and witness.
    pub transitivity: Transitivity,
    /// Left side of the equivalence: maximal abelian AND transitive.
    pub left: Ternary,
    /// Right side: maximal phi-tracial for every unital rank-one phi.
    pub right: Ternary,
    /// Number of (x, alpha) pairs examined.
    pub pairs_checked: u64,
    /// Whether the pair sweep was exhaustive (possible over prime fields
    /// within budget).
    pub exhaustive: bool,
    /// A pair that is definitely not maximal-tracial, if found.
    pub failing_pair: Option<FailingPair>,
    /// Whether the two sides agree: `Some(false)` exposes a counterexample
    /// to the equivalence, `None` means the evidence is inconclusive.
    pub consistent: Option<bool>,
}

/// A rank-one pair witnessing failure of the right side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailingPair {
    pub x: Vector,
    pub alpha: Vector,
    pub verdict: Verdict,
}

/// Cross-checks the equivalence "maximal abelian and transitive iff
/// maximal phi-tracial for every unital rank-one phi" on one algebra.
///
/// Over a prime field the right side sweeps all (p^k - 1) p^(k-1) unital
/// pairs when that count fits the budget; otherwise (and over Q) it samples
/// `pairs` pseudo-random unital pairs with the options seed. A sampled
/// all-maximal result leaves the right side Unknown: samples can refute but
/// not prove a universal statement.
pub fn transitivity_equivalence_report(
    algebra: &MatrixAlgebra,
    options: &DecisionOptions,
    pairs: u64,
) -> Result<EquivalenceReport> {
    let field = algebra.field();
    let k = algebra.k();
    let maximal_abelian = algebra.is_maximal_abelian();
    let transitivity = algebra.is_transitive(options.budget);
    let left = match (maximal_abelian, transitivity.verdict) {
        (false, _) => Ternary::False,
        (true, t) => t,
    };

    let mut pairs_checked = 0u64;
    let mut failing_pair = None;
    let mut saw_unknown = false;
    let mut exhaustive = false;

    let mut consider = |x: Vector, alpha: Vector, pairs_checked: &mut u64| -> Result<bool> {
        let phi = Functional::rank_one(x.clone(), alpha.clone()).expect("pairing is one");
        let verdict = decide_maximal(algebra, &phi, options)?;
        *pairs_checked += 1;
        match verdict.outcome {
            Outcome::Maximal => Ok(false),
            Outcome::NotMaximal | Outcome::NotTracial => {
                failing_pair = Some(FailingPair { x, alpha, verdict });
                Ok(true)
            }
            Outcome::Unknown => {
                saw_unknown = true;
                Ok(false)
            }
        }
    };

    if let Some(p) = field.order() {
        let total = unital_pair_count(p, k);
        if total <= options.budget as u128 {
            exhaustive = true;
            'sweep: for x in Subspace::full(&field, k).elements().expect("finite field") {
                if x.is_zero() {
                    continue;
                }
                let (particular, perp) = unital_duals(&field, &x);
                for w in perp.elements().expect("finite field") {
                    let alpha = particular.add(&w);
                    debug_assert!(x.dot(&alpha).unwrap().is_one());
                    if consider(x.clone(), alpha, &mut pairs_checked)? {
                        break 'sweep;
                    }
                }
            }
        }
    }
    if !exhaustive {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        for _ in 0..pairs {
            let (x, alpha) = sample_unital_pair(&field, k, &mut rng);
            if consider(x, alpha, &mut pairs_checked)? {
                break;
            }
        }
    }

    let right = if failing_pair.is_some() {
        Ternary::False
    } else if exhaustive && !saw_unknown {
        Ternary::True
    } else {
        Ternary::Unknown
    };
    let consistent = match (left, right) {
        (Ternary::Unknown, _) | (_, Ternary::Unknown) => None,
        (l, r) => Some(l == r),
    };
    Ok(EquivalenceReport {
        maximal_abelian,
        transitivity,
        left,
        right,
        pairs_checked,
        exhaustive,
        failing_pair,
        consistent,
    })
}

/// (p^k - 1) * p^(k-1), clamped.
fn unital_pair_count(p: u64, k: usize) -> u128 {
    let mut pk: u128 = 1;
    for _ in 0..k {
        pk = pk.saturating_mul(p as u128);
    }
    let mut pk1: u128 = 1;
    for _ in 0..k.saturating_sub(1) {
        pk1 = pk1.saturating_mul(p as u128);
    }
    (pk - 1).saturating_mul(pk1)
}

/// A particular solution of <x, alpha> = 1 plus the solution space of
/// <x, alpha> = 0.
fn unital_duals(field: &FieldSpec, x: &Vector) -> (Vector, Subspace) {
    let i = x.leading_index().expect("x is nonzero");
    let inv = x.entry(i).inv().expect("leading entry is nonzero");
    let particular = Vector::standard_basis(field, x.dim(), i).scale(&inv);
    let perp = solve_homogeneous(field, x.dim(), std::slice::from_ref(x))
        .expect("one well-shaped constraint");
    (particular, perp)
}

fn sample_unital_pair<R: Rng>(field: &FieldSpec, k: usize, rng: &mut R) -> (Vector, Vector) {
    let x = loop {
        let candidate = Vector::new(
            *field,
            (0..k).map(|_| crate::field::random_scalar(field, rng)).collect(),
        )
        .expect("entries share the field");
        if !candidate.is_zero() {
            break candidate;
        }
    };
    let (particular, perp) = unital_duals(field, &x);
    let mut alpha = particular;
    for b in perp.basis() {
        let c = crate::field::random_scalar(field, rng);
        alpha = alpha.add(&b.scale(&c));
    }
    debug_assert!(x.dot(&alpha).unwrap().is_one());
    (x, alpha)
}

/// Report for the necessity of cyclic vectors at maximality, on algebras
/// whose invariant-subspace lattice is complemented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessityReport {
    pub lattice: LatticeReport,
    pub verdict: Verdict,
    pub e_cyclic: bool,
    pub f_cyclic_for_adjoint: bool,
    /// `Some(true)` if maximality implies both cyclicities here (vacuously
    /// when not maximal), `Some(false)` on a counterexample, `None` when
    /// maximality itself is undecided.
    pub implication_holds: Option<bool>,
}

/// Checks, for phi = <. e, f> rank-one, the implication "A maximal
/// phi-tracial implies e cyclic for A and f cyclic for A^T", which is valid
/// when the invariant-subspace lattice of A is complemented. Errors with
/// [`Error::LatticeNotComplemented`] when the premise fails and
/// [`Error::LatticeUndecided`] when it cannot be established within budget.
pub fn cyclicity_necessity_report(
    algebra: &MatrixAlgebra,
    phi: &Functional,
    options: &DecisionOptions,
) -> Result<NecessityReport> {
    check_compat(algebra, phi)?;
    let (e, f) = phi.rank_one_parts().ok_or(Error::RankOneRequired)?;
    let lattice = algebra.has_complemented_lattice(options.budget);
    match lattice.verdict {
        Ternary::False => return Err(Error::LatticeNotComplemented),
        Ternary::Unknown => return Err(Error::LatticeUndecided),
        Ternary::True => {}
    }
    let verdict = decide_maximal(algebra, phi, options)?;
    let e_cyclic = algebra.is_cyclic(e)?;
    let f_cyclic_for_adjoint = algebra.adjoint_algebra().is_cyclic(f)?;
    let implication_holds = match verdict.outcome {
        Outcome::Maximal => Some(e_cyclic && f_cyclic_for_adjoint),
        Outcome::NotMaximal | Outcome::NotTracial => Some(true),
        Outcome::Unknown => None,
    };
    Ok(NecessityReport { lattice, verdict, e_cyclic, f_cyclic_for_adjoint, implication_holds })
}
