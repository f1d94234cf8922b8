//! Ground truth by exhaustion over small prime fields.
//!
//! For p in {2, 3, 5} this module enumerates every unital subalgebra of the
//! 2x2 matrices over GF(p) and every unital functional on them, and decides
//! maximal traciality literally from the definition: sweep all candidate
//! matrices and test whether adjoining any of them keeps the functional
//! tracial.  The sweep is slow and unstructured on purpose — it shares no
//! reasoning with [`crate::classify2x2`] or [`crate::tracial`], which makes
//! it a meaningful arbiter for both.
//!
//! Subalgebra enumeration grows closures to a fixpoint: starting from the
//! scalars, adjoin every matrix to every algebra found so far and close,
//! until nothing new appears.  Every unital subalgebra arises this way
//! (adjoin its basis elements one at a time), and each step only produces
//! unital subalgebras, so the fixpoint is exactly the full catalogue —
//! the same set that bounded-generator enumeration yields, at a small
//! fraction of the closure computations.

use crate::algebra::MatrixAlgebra;
use crate::classify2x2::classify2x2;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Matrix, Subspace};
use crate::tracial::{is_tracial, verify_extension_witness, Functional, Outcome};

/// The primes small enough for exhaustive 2x2 sweeps.
const SWEEP_PRIMES: [u64; 3] = [2, 3, 5];

fn sweep_field(p: u64) -> Result<FieldSpec> {
    if !SWEEP_PRIMES.contains(&p) {
        return Err(Error::UnsupportedSweepField(p));
    }
    FieldSpec::prime(p)
}

/// Every 2x2 matrix over the field, in a fixed enumeration order.
fn all_matrices(field: &FieldSpec) -> Vec<Matrix> {
    Subspace::full(field, 4)
        .elements()
        .expect("finite field")
        .map(|v| Matrix::unvectorize(&v, 2).expect("ambient 4"))
        .collect()
}

/// All distinct unital subalgebras of the 2x2 matrices over GF(p), sorted
/// by dimension and then by canonical basis, so the catalogue is identical
/// across runs.
///
/// Errors with [`Error::UnsupportedSweepField`] unless p is 2, 3, or 5.
pub fn enumerate_unital_subalgebras(p: u64) -> Result<Vec<MatrixAlgebra>> {
    let field = sweep_field(p)?;
    let matrices = all_matrices(&field);
    let mut found = vec![MatrixAlgebra::unital_closure(&field, 2, &[])?];
    let mut frontier = found.clone();
    while !frontier.is_empty() {
        let mut fresh: Vec<MatrixAlgebra> = Vec::new();
        for algebra in &frontier {
            let generators = algebra.basis_matrices();
            for m in &matrices {
                if algebra.contains(m)? {
                    continue;
                }
                let mut extended = generators.clone();
                extended.push(m.clone());
                let bigger = MatrixAlgebra::unital_closure(&field, 2, &extended)?;
                if !found.contains(&bigger) && !fresh.contains(&bigger) {
                    fresh.push(bigger);
                }
            }
        }
        found.extend(fresh.iter().cloned());
        frontier = fresh;
    }
    found.sort_by_key(canonical_key);
    Ok(found)
}

/// Sort key: dimension first, then the canonical basis flattened to scalars.
fn canonical_key(algebra: &MatrixAlgebra) -> (usize, Vec<Scalar>) {
    let mut flat = Vec::new();
    for row in algebra.basis_space().basis() {
        for i in 0..row.dim() {
            flat.push(row.entry(i).clone());
        }
    }
    (algebra.dim(), flat)
}

/// All unital functionals on the 2x2 matrices over GF(p): one per matrix of
/// trace one, p^3 in total.
pub fn enumerate_unital_functionals(p: u64) -> Result<Vec<Functional>> {
    let field = sweep_field(p)?;
    let functionals: Vec<Functional> = all_matrices(&field)
        .into_iter()
        .filter(|m| m.trace().is_one())
        .map(|m| Functional::k_form(m).expect("trace one"))
        .collect();
    debug_assert_eq!(functionals.len() as u64, p.pow(3));
    Ok(functionals)
}

/// The literal definition of maximal traciality, checked by exhaustion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteVerdict {
    /// The functional is not tracial on the algebra itself.
    NotTracial,
    /// Tracial, and no matrix outside the algebra extends it tracially.
    Maximal,
    /// Tracial, but adjoining the witness stays tracial.
    NotMaximal { witness: Matrix },
}

/// Decides maximal traciality from the definition: sweeps every matrix of
/// the ambient algebra and tests whether adjoining it keeps the functional
/// tracial.  Requires a finite field and at most `budget` candidates.
pub fn brute_maximal(
    algebra: &MatrixAlgebra,
    phi: &Functional,
    budget: u64,
) -> Result<BruteVerdict> {
    let field = algebra.field();
    if !field.is_finite() {
        return Err(Error::FiniteFieldRequired);
    }
    let full = Subspace::full(&field, algebra.k() * algebra.k());
    let count = full.element_count().ok_or(Error::BudgetExceeded {
        required: u128::MAX,
        budget,
    })?;
    if count > budget as u128 {
        return Err(Error::BudgetExceeded { required: count, budget });
    }
    if !is_tracial(algebra, phi)? {
        return Ok(BruteVerdict::NotTracial);
    }
    for v in full.elements().expect("finite field") {
        let t = Matrix::unvectorize(&v, algebra.k()).expect("ambient k^2");
        if verify_extension_witness(algebra, phi, &t)? {
            return Ok(BruteVerdict::NotMaximal { witness: t });
        }
    }
    Ok(BruteVerdict::Maximal)
}

/// One disagreement between the classification and the brute-force sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// The canonical basis of the algebra (which also generates it).
    pub generators: Vec<Matrix>,
    pub k_matrix: Matrix,
    pub classify_outcome: Outcome,
    pub brute_verdict: BruteVerdict,
}

/// The result of sweeping every (algebra, functional) pair over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub field: FieldSpec,
    pub algebra_count: usize,
    pub functional_count: usize,
    pub pair_count: usize,
    /// Empty exactly when the classification is verified over this field.
    pub mismatches: Vec<Mismatch>,
}

/// Compares [`classify2x2`] against [`brute_maximal`] on every pair of a
/// unital subalgebra and a unital functional over GF(p), and reports every
/// disagreement.  Mismatches are data, not errors: the report always comes
/// back, and an empty mismatch list is the verification.
pub fn verify_classification(p: u64) -> Result<SweepReport> {
    let field = sweep_field(p)?;
    let algebras = enumerate_unital_subalgebras(p)?;
    let functionals = enumerate_unital_functionals(p)?;
    let budget = p.pow(4);
    let mut mismatches = Vec::new();
    for algebra in &algebras {
        for phi in &functionals {
            let classification = classify2x2(algebra, phi)?;
            let brute = brute_maximal(algebra, phi, budget)?;
            let agree = matches!(
                (&classification.verdict.outcome, &brute),
                (Outcome::NotTracial, BruteVerdict::NotTracial)
                    | (Outcome::Maximal, BruteVerdict::Maximal)
                    | (Outcome::NotMaximal, BruteVerdict::NotMaximal { .. })
            );
            if !agree {
                mismatches.push(Mismatch {
                    generators: algebra.basis_matrices(),
                    k_matrix: phi.to_k_form(),
                    classify_outcome: classification.verdict.outcome,
                    brute_verdict: brute,
                });
            }
        }
    }
    Ok(SweepReport {
        field,
        algebra_count: algebras.len(),
        functional_count: functionals.len(),
        pair_count: algebras.len() * functionals.len(),
        mismatches,
    })
}
