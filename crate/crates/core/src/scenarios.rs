//! Named instance builders at finite desk scale.
//!
//! Each builder assembles a matrix algebra and a unital functional whose
//! maximal-traciality status is known from its structure, then re-derives
//! that status through [`crate::tracial::decide_maximal`] before returning,
//! so a scenario's `expected` outcome can never drift from what the
//! decision procedures actually compute.  The scenarios double as the CLI
//! demo corpus and as integration anchors for the test suite.

use crate::algebra::{CanonicalForm2x2, MatrixAlgebra};
use crate::error::{Error, Result};
use crate::field::{quadratic_roots, FieldSpec, Scalar};
use crate::linalg::{Matrix, Vector};
use crate::tracial::{
    decide_maximal, rank_one_criterion, Certificate, DecisionOptions, Functional, Outcome,
};

/// A named instance with a structurally derived expected outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub algebra: MatrixAlgebra,
    pub functional: Functional,
    /// Re-derived by [`decide_maximal`] inside the builder; never a
    /// free-floating assertion.
    pub expected: Outcome,
    /// A self-contained mathematical description of the construction and of
    /// why the expected outcome holds.
    pub provenance: String,
}

fn confirm(scenario: Scenario) -> Result<Scenario> {
    let verdict = decide_maximal(
        &scenario.algebra,
        &scenario.functional,
        &DecisionOptions::default(),
    )?;
    assert_eq!(
        verdict.outcome, scenario.expected,
        "scenario '{}' drifted from the decision procedure",
        scenario.name
    );
    Ok(scenario)
}

/// The algebra of left multiplications L_A(X) = AX acting on vectorized
/// n-by-n matrices, paired with the normalized trace: the rank-one
/// functional at x = vec(identity), alpha = (1/n) vec(identity) satisfies
/// phi(L_A) = Tr(A)/n.
///
/// Requires n to be invertible in the field (otherwise the normalized trace
/// does not exist and the builder errors with
/// [`Error::CharacteristicDividesN`]).  The commutant of the left
/// multiplications is exactly the right multiplications and vice versa —
/// asserted here — and the tracial extension space collapses to the algebra
/// itself, so the expected outcome is Maximal with the space-equality
/// certificate.
pub fn left_regular_scenario(n: usize, field: &FieldSpec) -> Result<Scenario> {
    assert!(n >= 1, "the left regular scenario needs n >= 1");
    if let FieldSpec::PrimeField(p) = field {
        if (n as u64) % p == 0 {
            return Err(Error::CharacteristicDividesN);
        }
    }
    let identity = Matrix::identity(field, n);
    let mut left_generators = Vec::with_capacity(n * n);
    let mut right_generators = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let unit = Matrix::unit(field, n, i, j);
            // vec(AX) = (A kron I) vec(X) and vec(XB) = (I kron B^T) vec(X).
            left_generators.push(unit.kronecker(&identity));
            right_generators.push(identity.kronecker(&unit.transpose()));
        }
    }
    let left = MatrixAlgebra::unital_closure(field, n * n, &left_generators)?;
    let right = MatrixAlgebra::unital_closure(field, n * n, &right_generators)?;
    assert!(left.commutant() == right, "left multiplications commute exactly with right ones");
    assert!(right.commutant() == left, "right multiplications commute exactly with left ones");

    let e = identity.vectorize();
    let alpha = e.scale(&Scalar::from_integer(n as i64, field).inv()?);
    let functional = Functional::rank_one(e, alpha)?;
    let scenario = confirm(Scenario {
        name: format!("left-regular(n={n}, {field})"),
        algebra: left,
        functional,
        expected: Outcome::Maximal,
        provenance: format!(
            "Left multiplications by {n}x{n} matrices acting on vectorized matrices, with \
             the rank-one functional at the vectorized identity implementing the normalized \
             trace.  The commutant of the left multiplications is the algebra of right \
             multiplications (and vice versa), and the tracial extension space collapses \
             to the left multiplications themselves, so the algebra is maximal tracial."
        ),
    })?;
    let verdict = decide_maximal(
        &scenario.algebra,
        &scenario.functional,
        &DecisionOptions::default(),
    )?;
    assert_eq!(verdict.certificate, Some(Certificate::FoesEqualsAlgebra));
    Ok(scenario)
}

/// Polynomials in the k-by-k nilpotent shift N (N e_i = e_{i+1}), paired
/// with the rank-one functional at x = e_1 and alpha = h / h_1.
///
/// The shift algebra is maximal abelian (the shift is non-derogatory) and
/// e_1 is cyclic for it, so maximality is governed by the remaining
/// criterion condition: alpha is cyclic for the transposed algebra exactly
/// when the last coordinate of h is nonzero.  Errors with
/// [`Error::NotUnitalPairing`] when h_1 = 0, since no scaling of h then
/// pairs to one with e_1.
pub fn jordan_shift_scenario(k: usize, field: &FieldSpec, h: &Vector) -> Result<Scenario> {
    assert!(k >= 1, "the shift scenario needs k >= 1");
    if h.dim() != k {
        return Err(Error::DimensionMismatch { expected: k, got: h.dim() });
    }
    if h.field() != *field {
        return Err(Error::FieldMismatch(*field, h.field()));
    }
    if h.entry(0).is_zero() {
        return Err(Error::NotUnitalPairing);
    }
    let shift = Matrix::from_fn(field, k, |i, j| {
        if i == j + 1 { Scalar::one(field) } else { Scalar::zero(field) }
    });
    let algebra = MatrixAlgebra::unital_closure(field, k, &[shift])?;
    assert_eq!(algebra.dim(), k, "the shift generates all polynomials of degree < k");
    let x = Vector::standard_basis(field, k, 0);
    let alpha = h.scale(&h.entry(0).inv()?);
    let functional = Functional::rank_one(x, alpha)?;
    let report = rank_one_criterion(&algebra, &functional)?;
    assert!(report.checklist.maximal_abelian);
    assert!(report.checklist.vector_cyclic);
    assert_eq!(
        report.checklist.adjoint_vector_cyclic,
        !h.entry(k - 1).is_zero(),
        "the adjoint orbit of h escapes the flag exactly when its last coordinate is nonzero"
    );
    let expected = if report.checklist.all() { Outcome::Maximal } else { Outcome::NotMaximal };
    confirm(Scenario {
        name: format!("jordan-shift(k={k}, {field})"),
        algebra,
        functional,
        expected,
        provenance: format!(
            "Polynomials in the {k}x{k} nilpotent shift, a maximal abelian algebra with \
             cyclic vector e_1, paired against alpha = h / h_1.  The transposed shift \
             moves coordinates down, so the orbit of alpha spans the space exactly when \
             the last coordinate of h is nonzero; maximality reduces to that single \
             cyclicity condition."
        ),
    })
}

/// The diagonal matrices as the multiplication algebra of a finite
/// probability space with atom weights `weights`, paired with the
/// functional T -> sum_i weights_i (Tf)_i h_i, realized as the rank-one
/// pairing of f against alpha with alpha_i = weights_i * h_i.
///
/// Weights must be positive rationals summing to one
/// ([`Error::InvalidWeights`] otherwise — positivity has no meaning over a
/// prime field, so this scenario is rationals-only), and the pairing must
/// be unital ([`Error::NotUnitalPairing`]).  The expected outcome is
/// Maximal exactly when every coordinate of f and of h is nonzero: the
/// finite reading of "f and h nonzero almost everywhere".  No norm or
/// gauge enters — at finite scale the criterion is pure coordinate
/// non-vanishing.
pub fn diagonal_scenario(weights: &[Scalar], f: &Vector, h: &Vector) -> Result<Scenario> {
    let field = FieldSpec::Rationals;
    let n = weights.len();
    assert!(n >= 1, "the diagonal scenario needs at least one atom");
    if f.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: f.dim() });
    }
    if h.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: h.dim() });
    }
    let zero = Scalar::zero(&field);
    let mut total = zero.clone();
    for w in weights {
        if w.field() != field || *w <= zero {
            return Err(Error::InvalidWeights);
        }
        total = total.add(w);
    }
    if !total.is_one() {
        return Err(Error::InvalidWeights);
    }
    if f.field() != field {
        return Err(Error::FieldMismatch(field, f.field()));
    }
    if h.field() != field {
        return Err(Error::FieldMismatch(field, h.field()));
    }
    let generators: Vec<Matrix> = (0..n).map(|i| Matrix::unit(&field, n, i, i)).collect();
    let algebra = MatrixAlgebra::unital_closure(&field, n, &generators)?;
    let alpha = Vector::new(
        field,
        (0..n).map(|i| weights[i].mul(h.entry(i))).collect(),
    )
    .expect("weighted entries stay rational");
    let functional = Functional::rank_one(f.clone(), alpha)?;
    let everywhere_nonzero = (0..n).all(|i| !f.entry(i).is_zero() && !h.entry(i).is_zero());
    let expected = if everywhere_nonzero { Outcome::Maximal } else { Outcome::NotMaximal };
    confirm(Scenario {
        name: format!("diagonal(n={n})"),
        algebra,
        functional,
        expected,
        provenance: format!(
            "Diagonal matrices as the multiplication algebra of a probability space with \
             {n} atoms; the functional integrates (Tf) times h against the atom weights, \
             absorbed into alpha_i = weights_i * h_i.  The algebra is maximal tracial for \
             this pairing exactly when every coordinate of f and of h is nonzero, the \
             finite analogue of both densities being nonzero almost everywhere."
        ),
    })
}

/// The quadratic field extension generated by the companion matrix of an
/// irreducible x^2 + b x + c, paired with any unital rank-one functional.
///
/// Irreducibility makes the algebra act irreducibly and be maximal
/// abelian, so it is maximal tracial for every such functional; the
/// builder errors with [`Error::ReduciblePolynomial`] when the quadratic
/// has roots in the field.
pub fn field_extension_scenario(
    b: &Scalar,
    c: &Scalar,
    x: &Vector,
    alpha: &Vector,
) -> Result<Scenario> {
    let field = b.field();
    if c.field() != field {
        return Err(Error::FieldMismatch(field, c.field()));
    }
    let roots = quadratic_roots(b, c)?;
    if !roots.roots.is_empty() {
        return Err(Error::ReduciblePolynomial);
    }
    let companion =
        CanonicalForm2x2::CompanionIrreducible(b.clone(), c.clone()).matrix(&field);
    let algebra = MatrixAlgebra::unital_closure(&field, 2, &[companion])?;
    assert!(algebra.is_maximal_abelian());
    let functional = Functional::rank_one(x.clone(), alpha.clone())?;
    confirm(Scenario {
        name: format!("field-extension(x^2 + ({b}) x + ({c}), {field})"),
        algebra,
        functional,
        expected: Outcome::Maximal,
        provenance: format!(
            "The companion matrix of the irreducible polynomial x^2 + ({b}) x + ({c}) \
             generates a quadratic field extension acting irreducibly on the plane, which \
             is maximal abelian with every nonzero vector cyclic on both sides; any unital \
             rank-one pairing is therefore maximal tracial."
        ),
    })
}
