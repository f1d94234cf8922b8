//! A complete decision procedure for unital subalgebras of the 2x2 matrices.
//!
//! Up to similarity there are only six kinds of unital subalgebra of M_2:
//! the scalars, three kinds of two-dimensional algebra distinguished by how
//! the characteristic polynomial of a non-scalar element factors, the
//! three-dimensional triangular algebra, and the full algebra.  For each
//! kind both the tracial question and the maximality question have
//! closed-form answers in terms of the functional's defining matrix
//! conjugated into a canonical frame, so — unlike the general cascade in
//! [`crate::tracial::decide_maximal`] — the classification never returns an
//! `Unknown` outcome.  Every verdict carries the same replayable
//! certificates as the general procedure and is verified before it is
//! returned.
//!
//! One- and two-dimensional unital subalgebras are abelian, hence tracial
//! for every unital functional; traciality can only fail in dimensions
//! three and four.

use std::fmt;

use crate::algebra::{
    columns_2x2, similarity_to_canonical_2x2, CanonicalForm2x2, MatrixAlgebra,
};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{solve_homogeneous, Matrix, Vector};
use crate::tracial::{
    check_compat, foes, traciality_violation, verify_extension_witness, Certificate,
    Functional, Outcome, Verdict,
};

/// The similarity class of a unital subalgebra of the 2x2 matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    /// The scalar multiples of the identity.
    Dim1,
    /// Two-dimensional, spanned by the identity and an element with two
    /// distinct eigenvalues in the field: a conjugate of the diagonal
    /// algebra.
    Dim2SplitDistinct,
    /// Two-dimensional, spanned by the identity and a non-scalar element
    /// with a repeated eigenvalue: a conjugate of the span of the identity
    /// and one nilpotent matrix unit.
    Dim2SplitJordan,
    /// Two-dimensional with an element whose characteristic polynomial is
    /// irreducible: a quadratic field extension acting irreducibly.
    Dim2Irreducible,
    /// Three-dimensional: a conjugate of the upper-triangular algebra.
    Dim3,
    /// The full matrix algebra.
    Dim4,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            CaseLabel::Dim1 => "scalars",
            CaseLabel::Dim2SplitDistinct => "dim-2 split with distinct eigenvalues",
            CaseLabel::Dim2SplitJordan => "dim-2 with a repeated eigenvalue",
            CaseLabel::Dim2Irreducible => "dim-2 quadratic field extension",
            CaseLabel::Dim3 => "dim-3 triangular",
            CaseLabel::Dim4 => "full matrix algebra",
        };
        f.write_str(text)
    }
}

/// The outcome of the two-by-two classification: the similarity class, a
/// certified verdict, and a self-contained account of the rule that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub case: CaseLabel,
    pub verdict: Verdict,
    pub explanation: String,
    /// The change of basis conjugating the algebra onto its canonical
    /// frame, when the case analysis needed one (dimensions two and three).
    pub frame: Option<Matrix>,
}

/// Decides traciality and maximal traciality for a unital subalgebra of the
/// 2x2 matrices by direct case analysis on its similarity class.
///
/// Errors with [`Error::WrongDimension`] when the ambient size is not 2 and
/// propagates field or shape mismatches between the algebra and the
/// functional.  The verdict never has outcome `Unknown`, and every
/// certificate is verified before the classification is returned, so
/// [`Verdict::recheck`] accepts it.
pub fn classify2x2(algebra: &MatrixAlgebra, phi: &Functional) -> Result<Classification> {
    check_compat(algebra, phi)?;
    if algebra.k() != 2 {
        return Err(Error::WrongDimension(algebra.k()));
    }
    let k_matrix = phi.to_k_form();
    match algebra.dim() {
        1 => classify_scalars(algebra, phi),
        2 => classify_dim2(algebra, phi, &k_matrix),
        3 => classify_dim3(algebra, phi, &k_matrix),
        4 => classify_full(algebra, phi, &k_matrix),
        d => unreachable!("a unital subalgebra of the 2x2 matrices has dimension 1..=4, got {d}"),
    }
}

/// The matrix of the normalized trace, when the characteristic allows one.
fn half_identity(field: &FieldSpec) -> Option<Matrix> {
    Scalar::half(field).map(|h| Matrix::identity(field, 2).scale(&h))
}

fn is_normalized_trace(k_matrix: &Matrix) -> bool {
    half_identity(&k_matrix.field()).is_some_and(|m| *k_matrix == m)
}

fn maximal_by_foes(algebra: &MatrixAlgebra, phi: &Functional) -> Result<Verdict> {
    let space = foes(algebra, phi)?;
    assert_eq!(
        &space,
        algebra.basis_space(),
        "classification promised the tracial extension space collapses to the algebra"
    );
    Ok(Verdict {
        outcome: Outcome::Maximal,
        certificate: Some(Certificate::FoesEqualsAlgebra),
        checklist: None,
        seed: None,
    })
}

fn not_maximal_by_witness(
    algebra: &MatrixAlgebra,
    phi: &Functional,
    witness: Matrix,
) -> Result<Verdict> {
    assert!(
        verify_extension_witness(algebra, phi, &witness)?,
        "classification produced a witness that does not extend tracially"
    );
    Ok(Verdict {
        outcome: Outcome::NotMaximal,
        certificate: Some(Certificate::WitnessExtension { witness }),
        checklist: None,
        seed: None,
    })
}

fn not_tracial(left: Matrix, right: Matrix) -> Verdict {
    Verdict {
        outcome: Outcome::NotTracial,
        certificate: Some(Certificate::TracialityViolation { left, right }),
        checklist: None,
        seed: None,
    }
}

fn classify_scalars(algebra: &MatrixAlgebra, phi: &Functional) -> Result<Classification> {
    let witness = Matrix::unit(&algebra.field(), 2, 0, 1);
    Ok(Classification {
        case: CaseLabel::Dim1,
        verdict: not_maximal_by_witness(algebra, phi, witness)?,
        explanation: "The scalars extend to the abelian span of the identity and a single \
                      matrix unit, and abelian algebras are tracial for every unital \
                      functional."
            .to_string(),
        frame: None,
    })
}

fn classify_dim2(
    algebra: &MatrixAlgebra,
    phi: &Functional,
    k_matrix: &Matrix,
) -> Result<Classification> {
    let field = algebra.field();
    let t = algebra
        .basis_matrices()
        .into_iter()
        .find(|m| !m.is_scalar())
        .expect("a two-dimensional unital algebra has a non-scalar basis element");
    let (form, s) = similarity_to_canonical_2x2(&t)?;
    let s_inv = s.inverse().expect("change of basis");
    // Conjugating the algebra onto span{I, canonical form} turns phi into
    // the functional with matrix S^-1 K S in the new frame; in that frame
    // the functional's value on the matrix unit e_ij is entry (j, i).
    let k_frame = s_inv.mul(k_matrix).mul(&s);
    match form {
        CanonicalForm2x2::DiagDistinct(..) => {
            let upper_value = k_frame.entry(1, 0);
            let lower_value = k_frame.entry(0, 1);
            if !upper_value.is_zero() && !lower_value.is_zero() {
                Ok(Classification {
                    case: CaseLabel::Dim2SplitDistinct,
                    verdict: maximal_by_foes(algebra, phi)?,
                    explanation: "In the diagonalizing frame the functional is nonzero on \
                                  both off-diagonal matrix units, which pins the tracial \
                                  extension space to the algebra itself."
                        .to_string(),
                    frame: Some(s.clone()),
                })
            } else {
                let unit = if upper_value.is_zero() {
                    Matrix::unit(&field, 2, 0, 1)
                } else {
                    Matrix::unit(&field, 2, 1, 0)
                };
                let witness = s.mul(&unit).mul(&s_inv);
                Ok(Classification {
                    case: CaseLabel::Dim2SplitDistinct,
                    verdict: not_maximal_by_witness(algebra, phi, witness)?,
                    explanation: "In the diagonalizing frame the functional vanishes on an \
                                  off-diagonal matrix unit, and adjoining that unit gives a \
                                  larger triangular algebra on which the functional stays \
                                  tracial."
                        .to_string(),
                    frame: Some(s.clone()),
                })
            }
        }
        CanonicalForm2x2::JordanRepeated(_) => {
            if !k_frame.entry(1, 0).is_zero() {
                Ok(Classification {
                    case: CaseLabel::Dim2SplitJordan,
                    verdict: maximal_by_foes(algebra, phi)?,
                    explanation: "In the Jordan frame the functional is nonzero on the \
                                  nilpotent part of the algebra, which pins the tracial \
                                  extension space to the algebra itself."
                        .to_string(),
                    frame: Some(s.clone()),
                })
            } else {
                let witness = s.mul(&Matrix::unit(&field, 2, 0, 0)).mul(&s_inv);
                Ok(Classification {
                    case: CaseLabel::Dim2SplitJordan,
                    verdict: not_maximal_by_witness(algebra, phi, witness)?,
                    explanation: "In the Jordan frame the functional vanishes on the \
                                  nilpotent part, so the algebra extends to the full \
                                  triangular algebra of that frame while staying tracial."
                        .to_string(),
                    frame: Some(s.clone()),
                })
            }
        }
        CanonicalForm2x2::CompanionIrreducible(..) => {
            if is_normalized_trace(k_matrix) {
                let witness = Matrix::unit(&field, 2, 0, 0);
                Ok(Classification {
                    case: CaseLabel::Dim2Irreducible,
                    verdict: not_maximal_by_witness(algebra, phi, witness)?,
                    explanation: "The functional is the normalized trace, which stays \
                                  tracial on the full matrix algebra, the unique proper \
                                  extension of an irreducibly acting quadratic field \
                                  extension."
                        .to_string(),
                    frame: Some(s.clone()),
                })
            } else {
                let space = foes(algebra, phi)?;
                let (verdict, explanation) = if &space == algebra.basis_space() {
                    (
                        maximal_by_foes(algebra, phi)?,
                        "The tracial extension space collapses to the algebra, which \
                         rules out every proper tracial extension."
                            .to_string(),
                    )
                } else {
                    // The functional's matrix lies in the algebra, so the
                    // first-order constraints vanish; maximality instead
                    // follows from the structure of the extension lattice.
                    let full = MatrixAlgebra::full(&field, 2);
                    let (left, right) = traciality_violation(&full, phi)?.expect(
                        "a functional other than the normalized trace violates traciality \
                         on the full matrix algebra",
                    );
                    (
                        Verdict {
                            outcome: Outcome::Maximal,
                            certificate: Some(Certificate::QuadraticFieldObstruction {
                                left,
                                right,
                            }),
                            checklist: None,
                            seed: None,
                        },
                        "The only unital algebra strictly containing an irreducibly \
                         acting quadratic field extension is the full matrix algebra, \
                         where the functional is not tracial."
                            .to_string(),
                    )
                };
                Ok(Classification {
                    case: CaseLabel::Dim2Irreducible,
                    verdict,
                    explanation,
                    frame: Some(s.clone()),
                })
            }
        }
    }
}

fn classify_dim3(
    algebra: &MatrixAlgebra,
    phi: &Functional,
    k_matrix: &Matrix,
) -> Result<Classification> {
    let field = algebra.field();
    let (s, s_inv) = triangular_frame(algebra)?;
    if let Some((left, right)) = traciality_violation(algebra, phi)? {
        let k_frame = s_inv.mul(k_matrix).mul(&s);
        debug_assert!(
            !k_frame.entry(1, 0).is_zero(),
            "a traciality violation on a triangular algebra means the functional is \
             nonzero on the strictly upper corner of its frame"
        );
        return Ok(Classification {
            case: CaseLabel::Dim3,
            verdict: not_tracial(left, right),
            explanation: "The algebra is conjugate to the upper-triangular algebra, whose \
                          commutators span the strictly upper corner; the functional does \
                          not vanish there."
                .to_string(),
            frame: Some(s),
        });
    }
    if is_normalized_trace(k_matrix) {
        let witness = s.mul(&Matrix::unit(&field, 2, 1, 0)).mul(&s_inv);
        Ok(Classification {
            case: CaseLabel::Dim3,
            verdict: not_maximal_by_witness(algebra, phi, witness)?,
            explanation: "The functional is the normalized trace, which stays tracial on \
                          the full matrix algebra; adjoining the conjugated lower matrix \
                          unit realizes that extension."
                .to_string(),
            frame: Some(s),
        })
    } else {
        Ok(Classification {
            case: CaseLabel::Dim3,
            verdict: maximal_by_foes(algebra, phi)?,
            explanation: "The functional vanishes on the conjugated strictly upper corner \
                          but is not the normalized trace, so the tracial extension space \
                          collapses to the algebra."
                .to_string(),
            frame: Some(s),
        })
    }
}

fn classify_full(
    algebra: &MatrixAlgebra,
    phi: &Functional,
    k_matrix: &Matrix,
) -> Result<Classification> {
    if let Some((left, right)) = traciality_violation(algebra, phi)? {
        return Ok(Classification {
            case: CaseLabel::Dim4,
            verdict: not_tracial(left, right),
            explanation: "On the full matrix algebra the only tracial unital functional \
                          is the normalized trace, which exists only in characteristic \
                          other than two; this functional is not it."
                .to_string(),
            frame: None,
        });
    }
    debug_assert!(is_normalized_trace(k_matrix));
    Ok(Classification {
        case: CaseLabel::Dim4,
        verdict: maximal_by_foes(algebra, phi)?,
        explanation: "The functional is the normalized trace, which is tracial on the \
                      full matrix algebra, and no larger subalgebra exists."
            .to_string(),
        frame: None,
    })
}

/// A change of basis `(S, S^-1)` conjugating a three-dimensional unital
/// subalgebra of the 2x2 matrices onto the upper-triangular algebra.
///
/// The trace form `(a, b) -> Tr(ab)` on such an algebra has a
/// one-dimensional radical spanned by a rank-one nilpotent `n`; the range
/// of `n` is the unique invariant line, and sending it to the first
/// coordinate axis triangularizes the algebra.
fn triangular_frame(algebra: &MatrixAlgebra) -> Result<(Matrix, Matrix)> {
    let field = algebra.field();
    let basis = algebra.basis_matrices();
    let rows: Vec<Vector> = basis
        .iter()
        .map(|b| {
            let entries = basis.iter().map(|c| b.mul(c).trace()).collect();
            Vector::new(field, entries).expect("traces live in the base field")
        })
        .collect();
    let kernel = solve_homogeneous(&field, basis.len(), &rows)?;
    assert_eq!(
        kernel.dim(),
        1,
        "the trace form of a three-dimensional unital subalgebra of the 2x2 matrices \
         has a one-dimensional radical"
    );
    let coefficients = &kernel.basis()[0];
    let mut nilpotent = Matrix::zero(&field, 2);
    for (i, b) in basis.iter().enumerate() {
        nilpotent = nilpotent.add(&b.scale(coefficients.entry(i)));
    }
    assert!(!nilpotent.is_zero(), "the radical of the trace form is nonzero");
    assert!(
        nilpotent.mul(&nilpotent).is_zero(),
        "the radical of the trace form squares to zero"
    );
    let column = if nilpotent.entry(0, 0).is_zero() && nilpotent.entry(1, 0).is_zero() {
        1
    } else {
        0
    };
    let v = Vector::new(
        field,
        vec![nilpotent.entry(0, column).clone(), nilpotent.entry(1, column).clone()],
    )
    .expect("matrix entries live in the base field");
    let w = if v.entry(1).is_zero() {
        Vector::standard_basis(&field, 2, 1)
    } else {
        Vector::standard_basis(&field, 2, 0)
    };
    let s = columns_2x2(&field, &v, &w);
    let s_inv = s.inverse().expect("the invariant line and a transversal form a basis");
    for b in &basis {
        debug_assert!(
            s_inv.mul(b).mul(&s).entry(1, 0).is_zero(),
            "the frame triangularizes the algebra"
        );
    }
    Ok((s, s_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tracial::{decide_maximal, DecisionOptions};

    fn qf() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn closure(field: &FieldSpec, generators: &[Matrix]) -> MatrixAlgebra {
        MatrixAlgebra::unital_closure(field, 2, generators).unwrap()
    }

    fn k_form_q(rows: &[&[&str]]) -> Functional {
        let rows: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect();
        Functional::k_form(Matrix::from_string_rows(&qf(), &rows).unwrap()).unwrap()
    }

    fn k_form_int(field: &FieldSpec, rows: &[&[i64]]) -> Functional {
        Functional::k_form(Matrix::from_integer_rows(field, rows)).unwrap()
    }

    fn scalars(field: &FieldSpec) -> MatrixAlgebra {
        closure(field, &[])
    }

    fn diagonal(field: &FieldSpec) -> MatrixAlgebra {
        closure(field, &[Matrix::from_integer_rows(field, &[&[1, 0], &[0, 0]])])
    }

    fn jordan_line(field: &FieldSpec) -> MatrixAlgebra {
        closure(field, &[Matrix::from_integer_rows(field, &[&[0, 1], &[0, 0]])])
    }

    fn rotation(field: &FieldSpec) -> MatrixAlgebra {
        closure(field, &[Matrix::from_integer_rows(field, &[&[0, -1], &[1, 0]])])
    }

    fn triangular(field: &FieldSpec) -> MatrixAlgebra {
        closure(
            field,
            &[
                Matrix::from_integer_rows(field, &[&[1, 0], &[0, 0]]),
                Matrix::from_integer_rows(field, &[&[0, 1], &[0, 0]]),
            ],
        )
    }

    #[test]
    fn scalars_are_never_maximal() {
        for (field, phi) in [
            (qf(), k_form_q(&[&["1", "3"], &["0", "0"]])),
            (gf(2), k_form_int(&gf(2), &[&[1, 1], &[1, 0]])),
        ] {
            let a = scalars(&field);
            let c = classify2x2(&a, &phi).unwrap();
            assert_eq!(c.case, CaseLabel::Dim1);
            assert_eq!(c.verdict.outcome, Outcome::NotMaximal);
            assert_eq!(
                c.verdict.certificate,
                Some(Certificate::WitnessExtension {
                    witness: Matrix::unit(&field, 2, 0, 1)
                })
            );
            assert!(c.verdict.recheck(&a, &phi).unwrap());
        }
    }

    #[test]
    fn diagonal_algebra_reads_the_functional_corners() {
        let a = diagonal(&qf());
        let both_corners = k_form_q(&[&["1/2", "1"], &["1", "1/2"]]);
        let c = classify2x2(&a, &both_corners).unwrap();
        assert_eq!(c.case, CaseLabel::Dim2SplitDistinct);
        assert_eq!(c.verdict.outcome, Outcome::Maximal);
        assert_eq!(c.verdict.certificate, Some(Certificate::FoesEqualsAlgebra));
        assert!(c.verdict.recheck(&a, &both_corners).unwrap());

        let dead_corner = k_form_q(&[&["1/2", "0"], &["1", "1/2"]]);
        let c = classify2x2(&a, &dead_corner).unwrap();
        assert_eq!(c.verdict.outcome, Outcome::NotMaximal);
        // The vanishing value is on the lower matrix unit: phi(e21) = K_12.
        assert_eq!(
            c.verdict.certificate,
            Some(Certificate::WitnessExtension {
                witness: Matrix::unit(&qf(), 2, 1, 0)
            })
        );
        assert!(c.verdict.recheck(&a, &dead_corner).unwrap());

        // The general procedure agrees on both.
        let options = DecisionOptions::default();
        assert_eq!(
            decide_maximal(&a, &both_corners, &options).unwrap().outcome,
            Outcome::Maximal
        );
        assert_eq!(
            decide_maximal(&a, &dead_corner, &options).unwrap().outcome,
            Outcome::NotMaximal
        );
    }

    #[test]
    fn conjugated_diagonal_gets_conjugated_witnesses() {
        let field = qf();
        let g = Matrix::from_integer_rows(&field, &[&[1, 2], &[1, 3]]);
        let g_inv = g.inverse().unwrap();
        let generator = g
            .mul(&Matrix::from_integer_rows(&field, &[&[1, 0], &[0, 0]]))
            .mul(&g_inv);
        let a = closure(&field, &[generator]);
        let phi = k_form_q(&[&["1/2", "0"], &["1", "1/2"]]);
        let c = classify2x2(&a, &phi).unwrap();
        assert_eq!(c.case, CaseLabel::Dim2SplitDistinct);
        // Whatever frame the classification picked, its witness must verify.
        assert!(c.verdict.recheck(&a, &phi).unwrap());
    }

    #[test]
    fn jordan_line_reads_the_nilpotent_direction() {
        let a = jordan_line(&qf());
        let live = k_form_q(&[&["1/2", "0"], &["1", "1/2"]]);
        let c = classify2x2(&a, &live).unwrap();
        assert_eq!(c.case, CaseLabel::Dim2SplitJordan);
        assert_eq!(c.verdict.outcome, Outcome::Maximal);
        assert_eq!(c.verdict.certificate, Some(Certificate::FoesEqualsAlgebra));
        assert!(c.verdict.recheck(&a, &live).unwrap());

        let dead = k_form_q(&[&["1/2", "3"], &["0", "1/2"]]);
        let c = classify2x2(&a, &dead).unwrap();
        assert_eq!(c.verdict.outcome, Outcome::NotMaximal);
        assert_eq!(
            c.verdict.certificate,
            Some(Certificate::WitnessExtension {
                witness: Matrix::unit(&qf(), 2, 0, 0)
            })
        );
        assert!(c.verdict.recheck(&a, &dead).unwrap());
    }

    #[test]
    fn quadratic_field_extension_over_the_rationals() {
        let a = rotation(&qf());
        let options = DecisionOptions { budget: 64, seed: 0 };

        // The normalized trace extends to the full algebra.
        let half_trace = k_form_q(&[&["1/2", "0"], &["0", "1/2"]]);
        let c = classify2x2(&a, &half_trace).unwrap();
        assert_eq!(c.case, CaseLabel::Dim2Irreducible);
        assert_eq!(c.verdict.outcome, Outcome::NotMaximal);
        assert!(c.verdict.recheck(&a, &half_trace).unwrap());
        assert_eq!(
            decide_maximal(&a, &half_trace, &options).unwrap().outcome,
            Outcome::NotMaximal
        );

        // A functional matrix outside the algebra collapses the extension
        // space.
        let corner = k_form_q(&[&["1", "0"], &["0", "0"]]);
        let c = classify2x2(&a, &corner).unwrap();
        assert_eq!(c.verdict.outcome, Outcome::Maximal);
        assert_eq!(c.verdict.certificate, Some(Certificate::FoesEqualsAlgebra));
        assert!(c.verdict.recheck(&a, &corner).unwrap());

        // A functional matrix inside the algebra (but not the normalized
        // trace) leaves no first-order constraints, yet the algebra is still
        // maximal: the only candidate extension is the full algebra, where
        // the functional is not tracial.  The general cascade cannot settle
        // this instance and honestly reports Unknown.
        let inside = k_form_q(&[&["1/2", "1"], &["-1", "1/2"]]);
        let c = classify2x2(&a, &inside).unwrap();
        assert_eq!(c.verdict.outcome, Outcome::Maximal);
        assert!(matches!(
            c.verdict.certificate,
            Some(Certificate::QuadraticFieldObstruction { .. })
        ));
        assert!(c.verdict.recheck(&a, &inside).unwrap());
        assert_eq!(
            decide_maximal(&a, &inside, &options).unwrap().outcome,
            Outcome::Unknown
        );
    }

    #[test]
    fn quadratic_field_extension_in_characteristic_two() {
        // x^2 + x + 1 is irreducible over GF(2); its companion matrix
        // generates the field with four elements, and every unital
        // functional is maximal on it because the full algebra has no
        // tracial functional in characteristic two.
        let field = gf(2);
        let a = closure(&field, &[Matrix::from_integer_rows(&field, &[&[0, 1], &[1, 1]])]);
        for k_rows in [
            [[1i64, 0], [0, 0]],
            [[0, 0], [0, 1]],
            [[1, 1], [1, 0]],
            [[0, 1], [1, 1]],
        ] {
            let phi = k_form_int(&field, &[&k_rows[0], &k_rows[1]]);
            let c = classify2x2(&a, &phi).unwrap();
            assert_eq!(c.case, CaseLabel::Dim2Irreducible);
            assert_eq!(c.verdict.outcome, Outcome::Maximal, "K = {k_rows:?}");
            assert!(c.verdict.recheck(&a, &phi).unwrap());
        }
    }

    #[test]
    fn triangular_algebra_traciality_is_the_upper_corner() {
        let a = triangular(&qf());

        let violating = k_form_q(&[&["0", "0"], &["1", "1"]]);
        let c = classify2x2(&a, &violating).unwrap();
        assert_eq!(c.case, CaseLabel::Dim3);
        assert_eq!(c.verdict.outcome, Outcome::NotTracial);
        assert!(c.verdict.recheck(&a, &violating).unwrap());

        let half_trace = k_form_q(&[&["1/2", "0"], &["0", "1/2"]]);
        let c = classify2x2(&a, &half_trace).unwrap();
        assert_eq!(c.verdict.outcome, Outcome::NotMaximal);
        assert_eq!(
            c.verdict.certificate,
            Some(Certificate::WitnessExtension {
                witness: Matrix::unit(&qf(), 2, 1, 0)
            })
        );
        assert!(c.verdict.recheck(&a, &half_trace).unwrap());

        let skew = k_form_q(&[&["1", "0"], &["0", "0"]]);
        let c = classify2x2(&a, &skew).unwrap();
        assert_eq!(c.verdict.outcome, Outcome::Maximal);
        assert_eq!(c.verdict.certificate, Some(Certificate::FoesEqualsAlgebra));
        assert!(c.verdict.recheck(&a, &skew).unwrap());
    }

    #[test]
    fn conjugated_triangular_algebra_is_recognized() {
        let field = qf();
        let g = Matrix::from_integer_rows(&field, &[&[2, 1], &[3, 2]]);
        let g_inv = g.inverse().unwrap();
        let generators: Vec<Matrix> = [
            Matrix::from_integer_rows(&field, &[&[1, 0], &[0, 0]]),
            Matrix::from_integer_rows(&field, &[&[0, 1], &[0, 0]]),
        ]
        .iter()
        .map(|m| g.mul(m).mul(&g_inv))
        .collect();
        let a = closure(&field, &generators);
        assert_eq!(a.dim(), 3);

        // The normalized trace is conjugation invariant, so the conjugated
        // triangular algebra is tracial but not maximal for it.
        let half_trace = k_form_q(&[&["1/2", "0"], &["0", "1/2"]]);
        let c = classify2x2(&a, &half_trace).unwrap();
        assert_eq!(c.case, CaseLabel::Dim3);
        assert_eq!(c.verdict.outcome, Outcome::NotMaximal);
        assert!(c.verdict.recheck(&a, &half_trace).unwrap());

        // A functional supported on the conjugated upper corner violates
        // traciality.
        let corner = g
            .mul(&Matrix::from_integer_rows(&field, &[&[0, 0], &[1, 0]]))
            .mul(&g_inv);
        let k_matrix = corner.add(&Matrix::from_integer_rows(&field, &[&[1, 0], &[0, 0]]));
        if let Ok(phi) = Functional::k_form(k_matrix) {
            let c = classify2x2(&a, &phi).unwrap();
            assert_eq!(c.verdict.outcome, Outcome::NotTracial);
        }
    }

    #[test]
    fn triangular_algebra_over_gf2_is_always_decisive() {
        // In characteristic two the normalized trace does not exist, so a
        // tracial functional on the triangular algebra is always maximal.
        let field = gf(2);
        let a = triangular(&field);
        let mut outcomes = Vec::new();
        for entries in 0..16u32 {
            let rows: Vec<i64> = (0..4).map(|i| ((entries >> i) & 1) as i64).collect();
            let k = Matrix::from_integer_rows(&field, &[&rows[0..2], &rows[2..4]]);
            let Ok(phi) = Functional::k_form(k) else { continue };
            let c = classify2x2(&a, &phi).unwrap();
            assert_ne!(c.verdict.outcome, Outcome::NotMaximal);
            assert!(c.verdict.recheck(&a, &phi).unwrap());
            outcomes.push(c.verdict.outcome);
        }
        assert!(outcomes.contains(&Outcome::Maximal));
        assert!(outcomes.contains(&Outcome::NotTracial));
    }

    #[test]
    fn full_algebra_cases() {
        let a = MatrixAlgebra::full(&qf(), 2);
        let half_trace = k_form_q(&[&["1/2", "0"], &["0", "1/2"]]);
        let c = classify2x2(&a, &half_trace).unwrap();
        assert_eq!(c.case, CaseLabel::Dim4);
        assert_eq!(c.verdict.outcome, Outcome::Maximal);
        assert!(c.verdict.recheck(&a, &half_trace).unwrap());

        let skew = k_form_q(&[&["1", "0"], &["0", "0"]]);
        let c = classify2x2(&a, &skew).unwrap();
        assert_eq!(c.verdict.outcome, Outcome::NotTracial);
        assert!(c.verdict.recheck(&a, &skew).unwrap());

        // Characteristic two: never tracial, whatever the functional.
        let field = gf(2);
        let full = MatrixAlgebra::full(&field, 2);
        let phi = k_form_int(&field, &[&[1, 0], &[0, 0]]);
        let c = classify2x2(&full, &phi).unwrap();
        assert_eq!(c.verdict.outcome, Outcome::NotTracial);
    }

    #[test]
    fn rank_one_functionals_are_accepted() {
        let a = diagonal(&qf());
        let x = Vector::from_integers(&qf(), &[1, 1]);
        let alpha = Vector::from_integers(&qf(), &[1, 0]);
        let phi = Functional::rank_one(x, alpha).unwrap();
        // K = x alpha^T = [[1,0],[1,0]]: the value on e21 is K_12 = 0, so a
        // tracial extension by the lower unit exists.
        let c = classify2x2(&a, &phi).unwrap();
        assert_eq!(c.case, CaseLabel::Dim2SplitDistinct);
        assert_eq!(c.verdict.outcome, Outcome::NotMaximal);
        assert!(c.verdict.recheck(&a, &phi).unwrap());
    }

    #[test]
    fn wrong_ambient_size_is_rejected() {
        let a = MatrixAlgebra::full(&qf(), 3);
        let phi = Functional::k_form(Matrix::from_string_rows(
            &qf(),
            &[
                vec!["1/3".into(), "0".into(), "0".into()],
                vec!["0".into(), "1/3".into(), "0".into()],
                vec!["0".into(), "0".into(), "1/3".into()],
            ],
        )
        .unwrap())
        .unwrap();
        assert_eq!(classify2x2(&a, &phi), Err(Error::WrongDimension(3)));
    }

    #[test]
    fn classification_agrees_with_the_general_procedure_over_gf3() {
        // Exhaustive agreement on a sample of algebras over GF(3): wherever
        // the general cascade is decisive, the classification matches it.
        let field = gf(3);
        let algebras = [
            scalars(&field),
            diagonal(&field),
            jordan_line(&field),
            rotation(&field), // x^2 + 1 is irreducible over GF(3)
            triangular(&field),
            MatrixAlgebra::full(&field, 2),
        ];
        let options = DecisionOptions { budget: 100_000, seed: 7 };
        let mut checked = 0usize;
        for a in &algebras {
            for entries in 0..81u32 {
                let rows: Vec<i64> = (0..4).map(|i| ((entries / 3u32.pow(i)) % 3) as i64).collect();
                let k = Matrix::from_integer_rows(&field, &[&rows[0..2], &rows[2..4]]);
                let Ok(phi) = Functional::k_form(k) else { continue };
                let c = classify2x2(a, &phi).unwrap();
                assert!(c.verdict.recheck(a, &phi).unwrap());
                let general = decide_maximal(a, &phi, &options).unwrap();
                assert_ne!(general.outcome, Outcome::Unknown, "finite fields are decisive");
                assert_eq!(c.verdict.outcome, general.outcome, "algebra dim {}", a.dim());
                checked += 1;
            }
        }
        // 27 unital functionals per algebra, six algebras.
        assert_eq!(checked, 27 * 6);
    }
}
