//! Shipping gate.  Each test pins one acceptance criterion end to end and
//! prints an `ACCEPTANCE n: PASS` / `ACCEPTANCE n: FAIL` line before
//! asserting, so the full scoreboard is visible with
//! `cargo test -p tracial-cli --test acceptance -- --nocapture`.

use std::fmt::Display;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tracial_core::oracle::{enumerate_unital_functionals, enumerate_unital_subalgebras};
use tracial_core::scenarios::{diagonal_scenario, left_regular_scenario};
use tracial_core::tracial::{foes, is_tracial, rank_one_criterion, verify_extension_witness};
use tracial_core::{
    brute_maximal, classify2x2, decide_maximal, verify_classification, BruteVerdict, CaseLabel,
    Certificate, DecisionOptions, FieldSpec, Functional, Matrix, MatrixAlgebra, Outcome, Scalar,
    Subspace, Vector,
};

type Check = std::result::Result<(), String>;

fn report(n: u32, outcome: Check) {
    match &outcome {
        Ok(()) => println!("ACCEPTANCE {n}: PASS"),
        Err(detail) => println!("ACCEPTANCE {n}: FAIL ({detail})"),
    }
    if let Err(detail) = outcome {
        panic!("acceptance criterion {n} failed: {detail}");
    }
}

fn err(e: impl Display) -> String {
    e.to_string()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).expect("catalogue primes are prime")
}

fn mat(field: &FieldSpec, rows: &[&[&str]]) -> Matrix {
    let k = rows.len();
    Matrix::from_fn(field, k, |i, j| {
        Scalar::parse(rows[i][j], field).expect("scalar literal")
    })
}

fn closure(field: &FieldSpec, k: usize, generators: &[Matrix]) -> Result<MatrixAlgebra, String> {
    MatrixAlgebra::unital_closure(field, k, generators).map_err(err)
}

fn random_vector<R: Rng>(field: &FieldSpec, k: usize, rng: &mut R) -> Vector {
    let entries = (0..k)
        .map(|_| tracial_core::field::random_scalar(field, rng))
        .collect();
    Vector::new(field.clone(), entries).expect("entries match the field")
}

/// A random pair (x, alpha) with <x, alpha> = 1, obtained by rescaling.
fn random_unital_pair<R: Rng>(field: &FieldSpec, k: usize, rng: &mut R) -> (Vector, Vector) {
    loop {
        let x = random_vector(field, k, rng);
        let alpha = random_vector(field, k, rng);
        let pairing = x.dot(&alpha).expect("equal dimensions");
        if pairing.is_zero() {
            continue;
        }
        let unit = pairing.inv().expect("nonzero scalar");
        return (x, alpha.scale(&unit));
    }
}

/// A random K-matrix with trace one: the (0,0) entry absorbs the defect.
fn random_unital_k<R: Rng>(field: &FieldSpec, k: usize, rng: &mut R) -> Matrix {
    let raw = Matrix::random(field, k, rng);
    let mut rest = Scalar::zero(field);
    for i in 1..k {
        rest = rest.add(raw.entry(i, i));
    }
    let corner = Scalar::one(field).sub(&rest);
    Matrix::from_fn(field, k, |i, j| {
        if (i, j) == (0, 0) {
            corner.clone()
        } else {
            raw.entry(i, j).clone()
        }
    })
}

fn all_matrices(field: &FieldSpec, k: usize) -> Vec<Matrix> {
    Subspace::full(field, k * k)
        .elements()
        .expect("finite field")
        .map(|v| Matrix::unvectorize(&v, k).expect("square dimension"))
        .collect()
}

fn run_binary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tracial"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn vector_strings(v: &Vector) -> Vec<String> {
    v.entries().iter().map(|s| s.to_string()).collect()
}

/// Criterion 1: the full finite-field sweeps over GF(2) and GF(3) compare
/// the 2x2 classification against the brute-force oracle on every pair of a
/// unital subalgebra and a unital functional, with zero mismatches — both
/// in-process and through the shipped binary.
#[test]
fn acceptance_1_finite_field_sweeps_are_clean() {
    report(1, criterion_1());
}

fn criterion_1() -> Check {
    for p in [2u64, 3] {
        let sweep = verify_classification(p).map_err(err)?;
        ensure!(
            sweep.mismatches.is_empty(),
            "GF({p}) sweep found {} mismatches",
            sweep.mismatches.len()
        );
        ensure!(
            sweep.pair_count == sweep.algebra_count * sweep.functional_count,
            "GF({p}) sweep bookkeeping is inconsistent"
        );
        ensure!(sweep.algebra_count > 0, "GF({p}) sweep enumerated no algebras");
    }
    let dir = tempfile::tempdir().map_err(err)?;
    for p in ["2", "3"] {
        let json_path = dir.path().join(format!("sweep-{p}.json"));
        let out = run_binary(&["verify-gf", "--p", p, "--json", json_path.to_str().unwrap()]);
        ensure!(
            out.status.code() == Some(0),
            "verify-gf --p {p} exited {:?}",
            out.status.code()
        );
        let report: Value =
            serde_json::from_str(&std::fs::read_to_string(&json_path).map_err(err)?)
                .map_err(err)?;
        ensure!(
            report["result"]["mismatches"]
                .as_array()
                .is_some_and(|m| m.is_empty()),
            "the binary sweep over GF({p}) reports mismatches"
        );
    }
    Ok(())
}

/// Criterion 2: on abelian algebras with unital rank-one functionals, the
/// structural cyclicity criterion returns exactly the brute-force oracle's
/// verdict — across GF(2), GF(3), GF(5) and both ambient sizes.
#[test]
fn acceptance_2_rank_one_criterion_matches_the_oracle() {
    report(2, criterion_2());
}

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let plan: &[(u64, usize, u32)] = &[(2, 2, 75), (3, 2, 75), (5, 2, 40), (2, 3, 25)];
    let mut checked = 0u32;
    for &(p, k, count) in plan {
        let field = gf(p);
        let budget = (p as u128).pow((k * k) as u32) as u64;
        for _ in 0..count {
            // The unital closure of a single matrix is always abelian.
            let algebra = closure(&field, k, &[Matrix::random(&field, k, &mut rng)])?;
            let (x, alpha) = random_unital_pair(&field, k, &mut rng);
            let phi = Functional::rank_one(x, alpha).map_err(err)?;
            let criterion = rank_one_criterion(&algebra, &phi).map_err(err)?;
            let brute = brute_maximal(&algebra, &phi, budget).map_err(err)?;
            let agree = match &brute {
                BruteVerdict::Maximal => criterion.checklist.all() && criterion.witness.is_none(),
                BruteVerdict::NotMaximal { .. } => {
                    !criterion.checklist.all() && criterion.witness.is_some()
                }
                BruteVerdict::NotTracial => {
                    return Err("an abelian instance cannot be non-tracial".into())
                }
            };
            ensure!(
                agree,
                "criterion and oracle disagree over GF({p}), k={k}: checklist {:?} vs {brute:?}",
                criterion.checklist
            );
            if let Some(witness) = &criterion.witness {
                ensure!(
                    verify_extension_witness(&algebra, &phi, witness).map_err(err)?,
                    "the criterion's witness does not extend tracially"
                );
            }
            checked += 1;
        }
    }
    ensure!(checked >= 200, "only {checked} instances were checked");
    Ok(())
}

/// Criterion 3: the six pinned 2x2 case-table examples classify exactly as
/// recorded, the dead-corner witness is the lower matrix unit, and every
/// returned verdict survives its own recheck.
#[test]
fn acceptance_3_case_table_examples_are_pinned() {
    report(3, criterion_3());
}

fn criterion_3() -> Check {
    let q = FieldSpec::Rationals;
    let diag = mat(&q, &[&["1", "0"], &["0", "-1"]]);
    let cases: Vec<(&str, Vec<Matrix>, Matrix, CaseLabel, Outcome)> = vec![
        (
            "diagonals, both corners alive",
            vec![diag.clone()],
            mat(&q, &[&["1/2", "1"], &["1", "1/2"]]),
            CaseLabel::Dim2SplitDistinct,
            Outcome::Maximal,
        ),
        (
            "diagonals, dead corner",
            vec![diag.clone()],
            mat(&q, &[&["1/2", "0"], &["1", "1/2"]]),
            CaseLabel::Dim2SplitDistinct,
            Outcome::NotMaximal,
        ),
        (
            "repeated-eigenvalue pencil under the normalized trace",
            vec![mat(&q, &[&["0", "1"], &["0", "0"]])],
            mat(&q, &[&["1/2", "0"], &["0", "1/2"]]),
            CaseLabel::Dim2SplitJordan,
            Outcome::NotMaximal,
        ),
        (
            "irreducible rotation algebra",
            vec![mat(&q, &[&["0", "-1"], &["1", "0"]])],
            mat(&q, &[&["1", "0"], &["0", "0"]]),
            CaseLabel::Dim2Irreducible,
            Outcome::Maximal,
        ),
        (
            "upper triangulars with distinct diagonal weights",
            vec![
                mat(&q, &[&["1", "0"], &["0", "0"]]),
                mat(&q, &[&["0", "1"], &["0", "0"]]),
            ],
            mat(&q, &[&["3/4", "2"], &["0", "1/4"]]),
            CaseLabel::Dim3,
            Outcome::Maximal,
        ),
    ];
    for (label, generators, k_matrix, case, outcome) in cases {
        let algebra = closure(&q, 2, &generators)?;
        let phi = Functional::k_form(k_matrix).map_err(err)?;
        let classification = classify2x2(&algebra, &phi).map_err(err)?;
        ensure!(
            classification.case == case,
            "{label}: case {} instead of {case}",
            classification.case
        );
        ensure!(
            classification.verdict.outcome == outcome,
            "{label}: outcome {:?} instead of {outcome:?}",
            classification.verdict.outcome
        );
        ensure!(
            classification.verdict.recheck(&algebra, &phi).map_err(err)?,
            "{label}: the certificate does not recheck"
        );
    }

    // The dead-corner witness is pinned: adjoining the lower matrix unit
    // keeps the functional tracial.
    let algebra = closure(&q, 2, &[diag])?;
    let phi = Functional::k_form(mat(&q, &[&["1/2", "0"], &["1", "1/2"]])).map_err(err)?;
    let verdict = decide_maximal(&algebra, &phi, &DecisionOptions::default()).map_err(err)?;
    ensure!(verdict.outcome == Outcome::NotMaximal, "dead corner must not be maximal");
    match &verdict.certificate {
        Some(Certificate::WitnessExtension { witness }) => {
            let e21 = Matrix::unit(&q, 2, 1, 0);
            ensure!(
                *witness == e21,
                "the dead-corner witness should be the lower matrix unit, got {witness}"
            );
        }
        other => return Err(format!("expected a witness certificate, got {other:?}")),
    }

    // Over GF(2) the full matrix algebra is never tracial, whatever the
    // unital functional.
    let g2 = gf(2);
    let full = closure(&g2, 2, &[Matrix::unit(&g2, 2, 0, 1), Matrix::unit(&g2, 2, 1, 0)])?;
    ensure!(full.dim() == 4, "the generators span the full matrix algebra");
    let functionals = enumerate_unital_functionals(2).map_err(err)?;
    ensure!(functionals.len() == 8, "GF(2) has 8 unital functionals");
    for phi in &functionals {
        let classification = classify2x2(&full, phi).map_err(err)?;
        ensure!(
            classification.case == CaseLabel::Dim4,
            "full algebra misclassified as {}",
            classification.case
        );
        ensure!(
            classification.verdict.outcome == Outcome::NotTracial,
            "the full algebra over GF(2) cannot be tracial"
        );
        ensure!(
            classification.verdict.recheck(&full, phi).map_err(err)?,
            "the traciality-violation certificate does not recheck"
        );
    }
    Ok(())
}

/// Criterion 4: traciality and the decided outcome are invariant under the
/// transpose duality (A, phi) -> (A^T, phi^#) on five hundred random
/// decidable instances across the rationals and three finite fields.
#[test]
fn acceptance_4_transpose_duality_preserves_verdicts() {
    report(4, criterion_4());
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let options = DecisionOptions::default();
    let mut checked = 0u32;

    // Finite fields: the procedure enumerates the extension space
    // exhaustively, so every verdict is definite.
    let finite_plan: &[(u64, usize, u32)] = &[(3, 2, 150), (5, 2, 50), (2, 3, 50)];
    for &(p, k, count) in finite_plan {
        let field = gf(p);
        for _ in 0..count {
            let generators: Vec<Matrix> = (0..rng.gen_range(1..=2))
                .map(|_| Matrix::random(&field, k, &mut rng))
                .collect();
            let algebra = closure(&field, k, &generators)?;
            let phi = Functional::k_form(random_unital_k(&field, k, &mut rng)).map_err(err)?;
            check_duality(&algebra, &phi, &options)?;
            checked += 1;
        }
    }

    // Rationals: single-generator (hence abelian) algebras with rank-one
    // functionals keep the procedure inside its complete branches.
    for (k, count) in [(2usize, 150u32), (3, 100)] {
        let field = FieldSpec::Rationals;
        for _ in 0..count {
            let algebra = closure(&field, k, &[Matrix::random(&field, k, &mut rng)])?;
            let (x, alpha) = random_unital_pair(&field, k, &mut rng);
            let phi = Functional::rank_one(x, alpha).map_err(err)?;
            check_duality(&algebra, &phi, &options)?;
            checked += 1;
        }
    }
    ensure!(checked >= 500, "only {checked} instances were checked");
    Ok(())
}

fn check_duality(algebra: &MatrixAlgebra, phi: &Functional, options: &DecisionOptions) -> Check {
    let dual_algebra = algebra.adjoint_algebra();
    let dual_phi = phi.adjoint();
    let tracial = is_tracial(algebra, phi).map_err(err)?;
    let dual_tracial = is_tracial(&dual_algebra, &dual_phi).map_err(err)?;
    ensure!(tracial == dual_tracial, "traciality is not transpose-invariant");
    let verdict = decide_maximal(algebra, phi, options).map_err(err)?;
    let dual_verdict = decide_maximal(&dual_algebra, &dual_phi, options).map_err(err)?;
    ensure!(
        verdict.outcome != Outcome::Unknown,
        "instances were chosen so that the procedure is complete"
    );
    ensure!(
        verdict.outcome == dual_verdict.outcome,
        "outcomes differ under duality: {:?} vs {:?}",
        verdict.outcome,
        dual_verdict.outcome
    );
    Ok(())
}

/// Criterion 5: structural closure properties — adjoining the identity
/// never breaks traciality, every maximality verdict concerns a unital
/// algebra, and increasing chains of tracial algebras have tracial union.
#[test]
fn acceptance_5_structural_closure_properties_hold() {
    report(5, criterion_5());
}

fn pairwise_tracial(mats: &[Matrix], phi: &Functional) -> bool {
    mats.iter().enumerate().all(|(i, a)| {
        mats[i..]
            .iter()
            .all(|b| phi.eval(&a.mul(b)) == phi.eval(&b.mul(a)))
    })
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let q = FieldSpec::Rationals;
    let g3 = gf(3);

    // (1) Adjoining the identity preserves pairwise traciality: 500 random
    // spans, half of them abelian closures so the hypothesis is non-vacuous.
    let mut nonvacuous = 0u32;
    for instance in 0..500u32 {
        let field = if instance % 2 == 0 { &q } else { &g3 };
        let k = 2 + (instance as usize / 2) % 2;
        let structured = instance % 4 < 2;
        let mats: Vec<Matrix> = if structured {
            closure(field, k, &[Matrix::random(field, k, &mut rng)])?.basis_matrices()
        } else {
            (0..rng.gen_range(1..=3))
                .map(|_| Matrix::random(field, k, &mut rng))
                .collect()
        };
        let phi = Functional::k_form(random_unital_k(field, k, &mut rng)).map_err(err)?;
        if pairwise_tracial(&mats, &phi) {
            nonvacuous += 1;
            let mut with_identity = mats.clone();
            with_identity.push(Matrix::identity(field, k));
            ensure!(
                pairwise_tracial(&with_identity, &phi),
                "adjoining the identity broke pairwise traciality"
            );
            // Once closed, adjoining the identity changes nothing at all.
            let algebra = closure(field, k, &mats)?;
            let enlarged = closure(field, k, &with_identity)?;
            ensure!(
                enlarged.basis_space() == algebra.basis_space(),
                "adjoining the identity changed a unital closure"
            );
            ensure!(
                is_tracial(&enlarged, &phi).map_err(err)?
                    == is_tracial(&algebra, &phi).map_err(err)?,
                "traciality changed under an identity adjunction"
            );
        }
    }
    ensure!(nonvacuous >= 200, "only {nonvacuous} non-vacuous identity instances");

    // (2) Every Maximal verdict concerns an algebra containing the identity.
    let mut maximal_seen = 0u32;
    for index in 0..60u32 {
        let generator = if index < 10 {
            mat(&g3, &[&["1", "0"], &["0", "2"]])
        } else {
            Matrix::random(&g3, 2, &mut rng)
        };
        let algebra = closure(&g3, 2, &[generator])?;
        let phi = if index < 10 {
            Functional::k_form(mat(&g3, &[&["2", "1"], &["1", "2"]])).map_err(err)?
        } else {
            Functional::k_form(random_unital_k(&g3, 2, &mut rng)).map_err(err)?
        };
        let verdict = decide_maximal(&algebra, &phi, &DecisionOptions::default()).map_err(err)?;
        if verdict.outcome == Outcome::Maximal {
            maximal_seen += 1;
            ensure!(
                algebra.contains(&Matrix::identity(&g3, 2)).map_err(err)?,
                "a maximal algebra is missing the identity"
            );
        }
    }
    ensure!(maximal_seen >= 10, "no maximal verdicts were sampled");

    // (3) Increasing chains of tracial algebras, grown one verified
    // extension at a time from the scalars, have tracial union.
    let candidates = all_matrices(&g3, 2);
    let mut grew = 0u32;
    for _ in 0..100u32 {
        let phi = Functional::k_form(random_unital_k(&g3, 2, &mut rng)).map_err(err)?;
        let mut chain = vec![closure(&g3, 2, &[Matrix::identity(&g3, 2)])?];
        loop {
            let current = chain.last().expect("chain is non-empty");
            ensure!(
                is_tracial(current, &phi).map_err(err)?,
                "a chain element lost traciality"
            );
            let mut extended = None;
            for t in &candidates {
                if verify_extension_witness(current, &phi, t).map_err(err)? {
                    let mut generators = current.basis_matrices();
                    generators.push(t.clone());
                    extended = Some(closure(&g3, 2, &generators)?);
                    break;
                }
            }
            match extended {
                Some(next) => {
                    ensure!(
                        next.contains_algebra(current) && next.dim() > current.dim(),
                        "the chain must grow strictly"
                    );
                    chain.push(next);
                }
                None => break,
            }
            ensure!(chain.len() <= 5, "a chain in the 2x2 matrices has at most 4 steps");
        }
        // The union of a finite increasing chain is its last element.
        let union = chain.last().expect("chain is non-empty");
        ensure!(
            is_tracial(union, &phi).map_err(err)?,
            "the union of a tracial chain must be tracial"
        );
        if chain.len() >= 2 {
            grew += 1;
        }
    }
    ensure!(grew >= 80, "only {grew} chains grew past the scalars");
    Ok(())
}

/// Criterion 6: the left-multiplication algebra of the 2x2 matrices is
/// maximal tracial under the normalized trace over both the rationals and
/// GF(3); its commutant is exactly the right multiplications; and over
/// GF(3) the collapse of the extension space is confirmed by exhausting it.
#[test]
fn acceptance_6_left_regular_representation_is_maximal() {
    report(6, criterion_6());
}

fn criterion_6() -> Check {
    for field in [FieldSpec::Rationals, gf(3)] {
        let scenario = left_regular_scenario(2, &field).map_err(err)?;
        ensure!(
            scenario.expected == Outcome::Maximal,
            "the left-regular scenario over {field} should expect Maximal"
        );
        let verdict =
            decide_maximal(&scenario.algebra, &scenario.functional, &DecisionOptions::default())
                .map_err(err)?;
        ensure!(verdict.outcome == Outcome::Maximal, "not maximal over {field}");
        ensure!(
            verdict.certificate == Some(Certificate::FoesEqualsAlgebra),
            "the extension space must collapse over {field}"
        );
        ensure!(
            verdict
                .recheck(&scenario.algebra, &scenario.functional)
                .map_err(err)?,
            "the collapse certificate does not recheck over {field}"
        );

        // The commutant of the left multiplications is exactly the algebra
        // of right multiplications, re-derived here from scratch.
        let identity = Matrix::identity(&field, 2);
        let mut right_generators = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                right_generators
                    .push(identity.kronecker(&Matrix::unit(&field, 2, i, j).transpose()));
            }
        }
        let right = closure(&field, 4, &right_generators)?;
        ensure!(
            scenario.algebra.commutant() == right,
            "the commutant is not the right multiplications over {field}"
        );
        ensure!(
            right.commutant() == scenario.algebra,
            "the double commutant does not return over {field}"
        );
    }

    // Exhaustive confirmation over GF(3): every one of the 81 elements of
    // the (collapsed) extension space fails to extend tracially.
    let scenario = left_regular_scenario(2, &gf(3)).map_err(err)?;
    let space = foes(&scenario.algebra, &scenario.functional).map_err(err)?;
    ensure!(
        &space == scenario.algebra.basis_space(),
        "the extension space should equal the algebra"
    );
    let mut tested = 0u32;
    for v in space.elements().expect("finite field") {
        let t = Matrix::unvectorize(&v, 4).map_err(err)?;
        ensure!(
            !verify_extension_witness(&scenario.algebra, &scenario.functional, &t)
                .map_err(err)?,
            "an extension-space element extended tracially"
        );
        tested += 1;
    }
    ensure!(tested == 81, "expected 3^4 = 81 candidates, saw {tested}");
    Ok(())
}

/// Criterion 7: for diagonal algebras with weighted rank-one functionals,
/// maximality holds exactly when neither defining vector has a dead
/// coordinate — on two hundred random (weights, f, h) triples.
#[test]
fn acceptance_7_diagonal_maximality_matches_the_zero_pattern() {
    report(7, criterion_7());
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let q = FieldSpec::Rationals;
    let mut done = 0u32;
    let mut zero_free = 0u32;
    let mut with_zero = 0u32;
    while done < 200 {
        let n = rng.gen_range(2..=4usize);
        let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=5)).collect();
        let total: i64 = raw.iter().sum();
        let weights: Vec<Scalar> = raw
            .iter()
            .map(|w| Scalar::parse(&format!("{w}/{total}"), &q).expect("weight literal"))
            .collect();
        let mut f_entries: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let mut h_entries: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        // Half the time, deliberately kill a coordinate.
        if rng.gen_bool(0.5) {
            if rng.gen_bool(0.5) {
                f_entries[rng.gen_range(0..n)] = 0;
            } else {
                h_entries[rng.gen_range(0..n)] = 0;
            }
        }
        let f = Vector::from_integers(&q, &f_entries);
        let h = Vector::from_integers(&q, &h_entries);
        // The functional pairs f against the weighted h; rescale h so the
        // pairing is one (the rescaling cannot change the zero pattern).
        let mut pairing = Scalar::zero(&q);
        for i in 0..n {
            pairing = pairing.add(&weights[i].mul(f.entry(i)).mul(h.entry(i)));
        }
        if pairing.is_zero() {
            continue;
        }
        let h = h.scale(&pairing.inv().expect("nonzero"));
        let scenario = diagonal_scenario(&weights, &f, &h).map_err(err)?;
        let alive = f_entries.iter().all(|&e| e != 0) && h_entries.iter().all(|&e| e != 0);
        let expected = if alive { Outcome::Maximal } else { Outcome::NotMaximal };
        ensure!(
            scenario.expected == expected,
            "zero pattern predicts {expected:?} but the scenario expects {:?} (f={f_entries:?}, h={h_entries:?})",
            scenario.expected
        );
        let verdict =
            decide_maximal(&scenario.algebra, &scenario.functional, &DecisionOptions::default())
                .map_err(err)?;
        ensure!(
            verdict.outcome == expected,
            "the decision procedure disagrees with the zero pattern"
        );
        if alive {
            zero_free += 1;
        } else {
            with_zero += 1;
        }
        done += 1;
    }
    ensure!(
        zero_free >= 40 && with_zero >= 40,
        "unbalanced sample: {zero_free} alive vs {with_zero} with a dead coordinate"
    );
    Ok(())
}

/// Criterion 8: over GF(2) in the 2x2 matrices, the first-order extension
/// space is sound — every matrix whose adjunction stays tracial lies inside
/// it — verified exhaustively over the full catalogue.
#[test]
fn acceptance_8_extension_space_soundness_is_exhaustive() {
    report(8, criterion_8());
}

fn criterion_8() -> Check {
    let field = gf(2);
    let algebras = enumerate_unital_subalgebras(2).map_err(err)?;
    ensure!(algebras.len() == 12, "the GF(2) catalogue has 12 unital subalgebras");
    let functionals = enumerate_unital_functionals(2).map_err(err)?;
    ensure!(functionals.len() == 8, "GF(2) has 8 unital functionals");
    let candidates = all_matrices(&field, 2);
    let mut extenders = 0u32;
    for algebra in &algebras {
        for phi in &functionals {
            if !is_tracial(algebra, phi).map_err(err)? {
                continue;
            }
            let space = foes(algebra, phi).map_err(err)?;
            ensure!(
                space.contains(algebra.basis_space()),
                "the extension space must contain the algebra"
            );
            for t in &candidates {
                let mut generators = algebra.basis_matrices();
                generators.push(t.clone());
                let extended = closure(&field, 2, &generators)?;
                if is_tracial(&extended, phi).map_err(err)? {
                    ensure!(
                        space.member(&t.vectorize()).map_err(err)?,
                        "a tracial extender escapes the extension space"
                    );
                    extenders += 1;
                }
            }
        }
    }
    ensure!(extenders > 100, "the sweep should exercise many extenders, saw {extenders}");
    Ok(())
}

/// Criterion 9: one hundred recorded verdicts replay cleanly — the binary's
/// `--recheck` re-verifies every certificate, and reports are byte-identical
/// across repeated runs with the same seed.
#[test]
fn acceptance_9_verdicts_replay_and_reports_are_deterministic() {
    report(9, criterion_9());
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let dir = tempfile::tempdir().map_err(err)?;
    let mut plan: Vec<(FieldSpec, bool)> = Vec::new();
    plan.extend(std::iter::repeat_with(|| (gf(2), false)).take(30));
    plan.extend(std::iter::repeat_with(|| (gf(3), false)).take(40));
    plan.extend(std::iter::repeat_with(|| (gf(5), false)).take(10));
    plan.extend(std::iter::repeat_with(|| (FieldSpec::Rationals, true)).take(20));
    let mut replayed = 0u32;
    for (index, (field, rank_one)) in plan.iter().enumerate() {
        let generator = Matrix::random(field, 2, &mut rng);
        let functional = if *rank_one {
            let (x, alpha) = random_unital_pair(field, 2, &mut rng);
            serde_json::json!({
                "kind": "rank1",
                "x": vector_strings(&x),
                "alpha": vector_strings(&alpha),
            })
        } else {
            serde_json::json!({
                "kind": "K",
                "K": random_unital_k(field, 2, &mut rng).to_string_rows(),
            })
        };
        let body = serde_json::json!({
            "field": field.to_string(),
            "k": 2,
            "generators": [generator.to_string_rows()],
            "functional": functional,
        });
        let path = dir.path().join(format!("instance-{index}.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&body).map_err(err)?)
            .map_err(err)?;
        let first = dir.path().join(format!("report-{index}-a.json"));
        let second = dir.path().join(format!("report-{index}-b.json"));
        for target in [&first, &second] {
            let out = run_binary(&[
                "maximal",
                path.to_str().unwrap(),
                "--json",
                target.to_str().unwrap(),
                "--recheck",
                "--seed",
                "11",
            ]);
            ensure!(
                out.status.code() == Some(0),
                "replay {index} exited {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            );
        }
        let a = std::fs::read(&first).map_err(err)?;
        let b = std::fs::read(&second).map_err(err)?;
        ensure!(a == b, "reports for instance {index} differ between identical runs");
        let report: Value = serde_json::from_slice(&a).map_err(err)?;
        ensure!(
            report["recheck"] == Value::Bool(true),
            "instance {index} did not re-verify"
        );
        ensure!(
            report["result"]["outcome"].as_str() != Some("Unknown"),
            "instance {index} should be decidable"
        );
        replayed += 1;
    }
    ensure!(replayed == 100, "expected 100 replayed verdicts, got {replayed}");
    Ok(())
}
