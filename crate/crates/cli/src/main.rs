//! `tracial`: exact decision procedures for traciality and maximal
//! traciality of unital matrix algebras over the rationals and prime
//! fields.
//!
//! Most subcommands read a JSON instance file (see [`instance`]), print a
//! human-readable report to standard output, and optionally write a
//! machine-checkable JSON report with `--json`. Exit codes are scriptable:
//!
//! * 0 — definite favorable outcome (verdict computed, check passed, sweep
//!   clean);
//! * 1 — a violation or mismatch was found (traciality violation, sweep
//!   mismatch, equivalence counterexample, failed `--recheck`);
//! * 2 — input or precondition error;
//! * 3 — the decision procedure returned Unknown.

mod instance;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use tracial_core::scenarios::{
    diagonal_scenario, field_extension_scenario, jordan_shift_scenario, left_regular_scenario,
};
use tracial_core::tracial::{
    cyclicity_necessity_report, foes, rank_one_criterion, traciality_violation,
    verify_extension_witness,
};
use tracial_core::{
    classify2x2, decide_maximal, verify_classification, BruteVerdict, CaseLabel, Certificate,
    DecisionOptions, FieldSpec, Scalar, Scenario, Vector, Verdict,
};

use instance::{load, resolve, ResolvedInstance};
use report::{
    checklist_value, column_space_value, emit, envelope, functional_value, instance_value,
    matrix_list_value, matrix_value, outcome_str, scalar_value, ternary_value, vector_value,
    verdict_value,
};

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

/// A fatal input or precondition problem; always maps to exit code 2.
#[derive(Debug)]
pub struct Failure(pub String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<tracial_core::Error> for Failure {
    fn from(e: tracial_core::Error) -> Self {
        Failure(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "tracial",
    version,
    about = "Exact decisions for tracial functionals on matrix algebras",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the unital closure of the instance's generators.
    Closure(InstanceArgs),
    /// Compute the commutant of the instance's algebra.
    Commutant(InstanceArgs),
    /// Check whether the functional is tracial on the algebra.
    #[command(name = "tracial-check")]
    TracialCheck(InstanceArgs),
    /// Compute the tracial extension space (the first-order necessary
    /// condition for tracial extensions); requires a tracial instance.
    Foes(InstanceArgs),
    /// Decide whether the algebra is maximal tracial for the functional.
    Maximal(InstanceArgs),
    /// Complete case analysis for 2x2 instances; never returns Unknown.
    #[command(name = "classify2x2")]
    Classify2x2(InstanceArgs),
    /// Structural rank-one maximality criterion: maximal abelian, defining
    /// vector cyclic, dual vector cyclic for the transposed algebra.
    Thm10(InstanceArgs),
    /// Cross-check "maximal abelian and transitive" against maximality for
    /// every rank-one functional (exhausted over small prime fields,
    /// sampled otherwise). The instance's own functional is not consulted.
    Thm15(Thm15Args),
    /// Check that maximality forces cyclic vectors, for rank-one
    /// functionals on algebras with a complemented invariant-subspace
    /// lattice.
    Thm30(InstanceArgs),
    /// Sweep every (unital subalgebra, unital functional) pair of the 2x2
    /// matrices over GF(p) and compare the case analysis against the
    /// brute-force oracle.
    #[command(name = "verify-gf")]
    VerifyGf(VerifyGfArgs),
    /// Named example builders with independently derived expected outcomes.
    Scenario(ScenarioArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Path to the JSON instance file.
    instance: PathBuf,
    /// Also write the JSON report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Candidate budget for enumerative searches; overrides the instance
    /// file's options (default 20000000).
    #[arg(long, value_name = "N")]
    budget: Option<u64>,
    /// Seed for pseudo-random sampling; overrides the instance file's
    /// options (default 0).
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Replay the emitted certificate against the domain operations; exit 1
    /// if it fails to re-verify.
    #[arg(long)]
    recheck: bool,
}

#[derive(Args)]
struct Thm15Args {
    #[command(flatten)]
    common: InstanceArgs,
    /// Number of sampled vector pairs when the field is too large to
    /// exhaust.
    #[arg(long, value_name = "N", default_value_t = 20)]
    pairs: u64,
}

#[derive(Args)]
struct VerifyGfArgs {
    /// The sweep prime: 2, 3, or 5.
    #[arg(long)]
    p: u64,
    /// Also write the JSON report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ScenarioArgs {
    #[command(subcommand)]
    action: ScenarioAction,
}

#[derive(Subcommand)]
enum ScenarioAction {
    /// List the available builders and their parameters.
    List,
    /// Build a named scenario, decide it, and compare against its expected
    /// outcome.
    Run(ScenarioRunArgs),
}

#[derive(Args)]
struct ScenarioRunArgs {
    /// Builder name: left-regular | jordan-shift | diagonal |
    /// field-extension.
    name: String,
    /// Ground field descriptor ("Q" or "GF(p)").
    #[arg(long, default_value = "Q")]
    field: String,
    /// left-regular: the algebra multiplies on n-dimensional space, acting
    /// on the n^2-dimensional matrix space.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// jordan-shift: the ambient size.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Comma-separated dual vector (jordan-shift, diagonal); defaults to
    /// all ones.
    #[arg(long, value_name = "SCALARS")]
    h: Option<String>,
    /// diagonal: comma-separated positive rational weights summing to one;
    /// defaults to uniform.
    #[arg(long, value_name = "SCALARS")]
    weights: Option<String>,
    /// diagonal: comma-separated defining vector; defaults to all ones.
    #[arg(long, value_name = "SCALARS")]
    f: Option<String>,
    /// field-extension: linear coefficient of the quadratic x^2 + b x + c.
    #[arg(long, default_value = "0")]
    b: String,
    /// field-extension: constant coefficient of the quadratic.
    #[arg(long, default_value = "1")]
    c: String,
    /// field-extension: comma-separated defining vector.
    #[arg(long, default_value = "1,0")]
    x: String,
    /// field-extension: comma-separated dual vector.
    #[arg(long, default_value = "1,0")]
    alpha: String,
    /// Also write the JSON report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Replay the verdict's certificate; exit 1 if it fails to re-verify.
    #[arg(long)]
    recheck: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Closure(args) => run_closure(&args),
        Command::Commutant(args) => run_commutant(&args),
        Command::TracialCheck(args) => run_tracial_check(&args),
        Command::Foes(args) => run_foes(&args),
        Command::Maximal(args) => run_maximal(&args),
        Command::Classify2x2(args) => run_classify(&args),
        Command::Thm10(args) => run_thm10(&args),
        Command::Thm15(args) => run_thm15(&args),
        Command::Thm30(args) => run_thm30(&args),
        Command::VerifyGf(args) => run_verify_gf(&args),
        Command::Scenario(args) => match args.action {
            ScenarioAction::List => run_scenario_list(),
            ScenarioAction::Run(run_args) => run_scenario(&run_args),
        },
    }
}

fn load_instance(args: &InstanceArgs) -> Result<ResolvedInstance, Failure> {
    let file = load(&args.instance)?;
    resolve(&file, args.budget, args.seed)
}

fn basis_lines(matrices: &[tracial_core::Matrix]) -> String {
    matrices.iter().map(|m| format!("  {m}")).collect::<Vec<_>>().join("\n")
}

fn certificate_summary(verdict: &Verdict) -> String {
    match &verdict.certificate {
        None => "none".to_string(),
        Some(Certificate::FoesEqualsAlgebra) => "FoesEqualsAlgebra".to_string(),
        Some(Certificate::ExhaustiveSearch { enumerated }) => {
            format!("ExhaustiveSearch over {enumerated} candidates")
        }
        Some(Certificate::CyclicityCriterion { .. }) => "CyclicityCriterion".to_string(),
        Some(Certificate::WitnessExtension { witness }) => {
            format!("WitnessExtension {witness}")
        }
        Some(Certificate::TracialityViolation { left, right }) => {
            format!("TracialityViolation on {left} and {right}")
        }
        Some(Certificate::QuadraticFieldObstruction { .. }) => {
            "QuadraticFieldObstruction".to_string()
        }
    }
}

fn run_closure(args: &InstanceArgs) -> Result<u8, Failure> {
    let inst = load_instance(args)?;
    let basis = inst.algebra.basis_matrices();
    let result = json!({ "dim": inst.algebra.dim(), "basis": matrix_list_value(&basis) });
    let text = format!(
        "closure over {}, k = {}: dimension {}\n{}",
        inst.field,
        inst.k,
        inst.algebra.dim(),
        basis_lines(&basis)
    );
    let rep = envelope("closure", instance_value(&inst), result, None);
    emit(&text, &rep, args.json.as_deref())?;
    Ok(EXIT_OK)
}

fn run_commutant(args: &InstanceArgs) -> Result<u8, Failure> {
    let inst = load_instance(args)?;
    let commutant = inst.algebra.commutant();
    let basis = commutant.basis_matrices();
    let result = json!({ "dim": commutant.dim(), "basis": matrix_list_value(&basis) });
    let text = format!(
        "commutant over {}, k = {}: dimension {} (algebra dimension {})\n{}",
        inst.field,
        inst.k,
        commutant.dim(),
        inst.algebra.dim(),
        basis_lines(&basis)
    );
    let rep = envelope("commutant", instance_value(&inst), result, None);
    emit(&text, &rep, args.json.as_deref())?;
    Ok(EXIT_OK)
}

fn run_tracial_check(args: &InstanceArgs) -> Result<u8, Failure> {
    let inst = load_instance(args)?;
    let violation = traciality_violation(&inst.algebra, &inst.functional)?;
    let recheck = if args.recheck {
        Some(match &violation {
            None => traciality_violation(&inst.algebra, &inst.functional)?.is_none(),
            Some((left, right)) => {
                inst.algebra.contains(left)?
                    && inst.algebra.contains(right)?
                    && inst.functional.eval(&left.mul(right))
                        != inst.functional.eval(&right.mul(left))
            }
        })
    } else {
        None
    };
    let (result, text) = match &violation {
        None => (
            json!({ "tracial": true, "violation": Value::Null }),
            "tracial: yes".to_string(),
        ),
        Some((left, right)) => (
            json!({
                "tracial": false,
                "violation": {
                    "left": matrix_value(left),
                    "right": matrix_value(right),
                    "value_left_right": scalar_value(&inst.functional.eval(&left.mul(right))),
                    "value_right_left": scalar_value(&inst.functional.eval(&right.mul(left))),
                },
            }),
            format!("tracial: no\nviolating pair: {left} and {right}"),
        ),
    };
    let rep = envelope("tracial-check", instance_value(&inst), result, recheck);
    emit(&text, &rep, args.json.as_deref())?;
    if recheck == Some(false) {
        return Ok(EXIT_VIOLATION);
    }
    Ok(if violation.is_none() { EXIT_OK } else { EXIT_VIOLATION })
}

fn run_foes(args: &InstanceArgs) -> Result<u8, Failure> {
    let inst = load_instance(args)?;
    let space = foes(&inst.algebra, &inst.functional)?;
    let basis: Vec<tracial_core::Matrix> = space
        .basis()
        .iter()
        .map(|v| tracial_core::Matrix::unvectorize(v, inst.k).expect("ambient k^2"))
        .collect();
    let equals_algebra = &space == inst.algebra.basis_space();
    let result = json!({
        "dim": space.dim(),
        "basis": matrix_list_value(&basis),
        "equals_algebra": equals_algebra,
    });
    let text = format!(
        "tracial extension space: dimension {} (algebra dimension {}){}\n{}",
        space.dim(),
        inst.algebra.dim(),
        if equals_algebra { " — equals the algebra" } else { "" },
        basis_lines(&basis)
    );
    let rep = envelope("foes", instance_value(&inst), result, None);
    emit(&text, &rep, args.json.as_deref())?;
    Ok(EXIT_OK)
}

fn run_maximal(args: &InstanceArgs) -> Result<u8, Failure> {
    let inst = load_instance(args)?;
    let verdict = decide_maximal(&inst.algebra, &inst.functional, &inst.options)?;
    let recheck = if args.recheck {
        Some(verdict.recheck(&inst.algebra, &inst.functional)?)
    } else {
        None
    };
    let text = format!(
        "outcome: {}\ncertificate: {}",
        outcome_str(verdict.outcome),
        certificate_summary(&verdict)
    );
    let rep = envelope("maximal", instance_value(&inst), verdict_value(&verdict), recheck);
    emit(&text, &rep, args.json.as_deref())?;
    if recheck == Some(false) {
        return Ok(EXIT_VIOLATION);
    }
    Ok(match verdict.outcome {
        tracial_core::Outcome::Unknown => EXIT_UNKNOWN,
        _ => EXIT_OK,
    })
}

fn case_id(case: CaseLabel) -> &'static str {
    match case {
        CaseLabel::Dim1 => "Dim1",
        CaseLabel::Dim2SplitDistinct => "Dim2SplitDistinct",
        CaseLabel::Dim2SplitJordan => "Dim2SplitJordan",
        CaseLabel::Dim2Irreducible => "Dim2Irreducible",
        CaseLabel::Dim3 => "Dim3",
        CaseLabel::Dim4 => "Dim4",
    }
}

fn run_classify(args: &InstanceArgs) -> Result<u8, Failure> {
    let inst = load_instance(args)?;
    let classification = classify2x2(&inst.algebra, &inst.functional)?;
    let recheck = if args.recheck {
        Some(classification.verdict.recheck(&inst.algebra, &inst.functional)?)
    } else {
        None
    };
    let result = json!({
        "case": case_id(classification.case),
        "case_description": classification.case.to_string(),
        "frame": classification.frame.as_ref().map_or(Value::Null, matrix_value),
        "verdict": verdict_value(&classification.verdict),
        "explanation": classification.explanation,
    });
    let text = format!(
        "case: {}\noutcome: {}\ncertificate: {}\n{}",
        classification.case,
        outcome_str(classification.verdict.outcome),
        certificate_summary(&classification.verdict),
        classification.explanation
    );
    let rep = envelope("classify2x2", instance_value(&inst), result, recheck);
    emit(&text, &rep, args.json.as_deref())?;
    if recheck == Some(false) {
        return Ok(EXIT_VIOLATION);
    }
    Ok(EXIT_OK)
}

fn run_thm10(args: &InstanceArgs) -> Result<u8, Failure> {
    let inst = load_instance(args)?;
    let report = rank_one_criterion(&inst.algebra, &inst.functional)?;
    let holds = report.checklist.all();
    let recheck = if args.recheck {
        Some(match &report.witness {
            Some(witness) => {
                !holds && verify_extension_witness(&inst.algebra, &inst.functional, witness)?
            }
            None => holds,
        })
    } else {
        None
    };
    let result = json!({
        "criterion_holds": holds,
        "checklist": checklist_value(&report.checklist),
        "witness": report.witness.as_ref().map_or(Value::Null, matrix_value),
    });
    let text = format!(
        "criterion holds: {holds}\nmaximal abelian: {}\nvector cyclic: {}\nadjoint vector cyclic: {}{}",
        report.checklist.maximal_abelian,
        report.checklist.vector_cyclic,
        report.checklist.adjoint_vector_cyclic,
        report
            .witness
            .as_ref()
            .map(|w| format!("\nextension witness: {w}"))
            .unwrap_or_default()
    );
    let rep = envelope("thm10", instance_value(&inst), result, recheck);
    emit(&text, &rep, args.json.as_deref())?;
    if recheck == Some(false) {
        return Ok(EXIT_VIOLATION);
    }
    Ok(EXIT_OK)
}

fn run_thm15(args: &Thm15Args) -> Result<u8, Failure> {
    let inst = load_instance(&args.common)?;
    let report = tracial_core::tracial::transitivity_equivalence_report(
        &inst.algebra,
        &inst.options,
        args.pairs,
    )?;
    let result = json!({
        "maximal_abelian": report.maximal_abelian,
        "transitive": ternary_value(report.transitivity.verdict),
        "invariant_witness": report
            .transitivity
            .invariant_witness
            .as_ref()
            .map_or(Value::Null, column_space_value),
        "left": ternary_value(report.left),
        "right": ternary_value(report.right),
        "pairs_checked": report.pairs_checked,
        "exhaustive": report.exhaustive,
        "failing_pair": report.failing_pair.as_ref().map_or(Value::Null, |pair| json!({
            "x": vector_value(&pair.x),
            "alpha": vector_value(&pair.alpha),
            "verdict": verdict_value(&pair.verdict),
        })),
        "consistent": report.consistent.map_or(Value::Null, Value::Bool),
    });
    let consistency_text = match report.consistent {
        Some(true) => "consistent",
        Some(false) => "INCONSISTENT — counterexample found",
        None => "inconclusive",
    };
    let text = format!(
        "left (maximal abelian and transitive): {:?}\nright (maximal for every rank-one functional): {:?}\npairs checked: {} ({})\nequivalence: {}",
        report.left,
        report.right,
        report.pairs_checked,
        if report.exhaustive { "exhaustive" } else { "sampled" },
        consistency_text
    );
    let rep = envelope("thm15", instance_value(&inst), result, None);
    emit(&text, &rep, args.common.json.as_deref())?;
    Ok(match report.consistent {
        Some(true) => EXIT_OK,
        Some(false) => EXIT_VIOLATION,
        None => EXIT_UNKNOWN,
    })
}

fn run_thm30(args: &InstanceArgs) -> Result<u8, Failure> {
    let inst = load_instance(args)?;
    let report = cyclicity_necessity_report(&inst.algebra, &inst.functional, &inst.options)?;
    let result = json!({
        "lattice": {
            "verdict": ternary_value(report.lattice.verdict),
            "uncomplemented": report
                .lattice
                .uncomplemented
                .as_ref()
                .map_or(Value::Null, column_space_value),
        },
        "maximality": verdict_value(&report.verdict),
        "e_cyclic": report.e_cyclic,
        "f_cyclic_for_adjoint": report.f_cyclic_for_adjoint,
        "implication_holds": report.implication_holds.map_or(Value::Null, Value::Bool),
    });
    let implication_text = match report.implication_holds {
        Some(true) => "holds",
        Some(false) => "VIOLATED",
        None => "undecided (maximality unknown)",
    };
    let text = format!(
        "maximality: {}\ne cyclic: {}\nf cyclic for the transposed algebra: {}\nimplication (maximal => both cyclic): {}",
        outcome_str(report.verdict.outcome),
        report.e_cyclic,
        report.f_cyclic_for_adjoint,
        implication_text
    );
    let rep = envelope("thm30", instance_value(&inst), result, None);
    emit(&text, &rep, args.json.as_deref())?;
    Ok(match report.implication_holds {
        Some(true) => EXIT_OK,
        Some(false) => EXIT_VIOLATION,
        None => EXIT_UNKNOWN,
    })
}

fn brute_verdict_value(verdict: &BruteVerdict) -> Value {
    match verdict {
        BruteVerdict::NotTracial => json!({ "outcome": "NotTracial" }),
        BruteVerdict::Maximal => json!({ "outcome": "Maximal" }),
        BruteVerdict::NotMaximal { witness } => {
            json!({ "outcome": "NotMaximal", "witness": matrix_value(witness) })
        }
    }
}

fn run_verify_gf(args: &VerifyGfArgs) -> Result<u8, Failure> {
    let report = verify_classification(args.p)?;
    let result = json!({
        "field": report.field.to_string(),
        "algebra_count": report.algebra_count,
        "functional_count": report.functional_count,
        "pair_count": report.pair_count,
        "mismatches": Value::Array(
            report
                .mismatches
                .iter()
                .map(|m| json!({
                    "generators": matrix_list_value(&m.generators),
                    "K": matrix_value(&m.k_matrix),
                    "classify_outcome": outcome_str(m.classify_outcome),
                    "brute_verdict": brute_verdict_value(&m.brute_verdict),
                }))
                .collect(),
        ),
    });
    let text = format!(
        "sweep over {}: {} algebras x {} functionals = {} pairs\nmismatches: {}",
        report.field,
        report.algebra_count,
        report.functional_count,
        report.pair_count,
        report.mismatches.len()
    );
    let rep = envelope("verify-gf", json!({ "p": args.p }), result, None);
    emit(&text, &rep, args.json.as_deref())?;
    Ok(if report.mismatches.is_empty() { EXIT_OK } else { EXIT_VIOLATION })
}

fn run_scenario_list() -> Result<u8, Failure> {
    println!(
        "left-regular     --n <N> --field <F>            multiplication operators on n x n matrices\n\
         jordan-shift     --k <N> --field <F> --h <V>    unital closure of a nilpotent shift\n\
         diagonal         --weights <W> --f <V> --h <V>  diagonal algebra with a weighted functional (rationals only)\n\
         field-extension  --b <S> --c <S> --x <V> --alpha <V> --field <F>  quadratic field extension acting irreducibly"
    );
    Ok(EXIT_OK)
}

fn run_scenario(args: &ScenarioRunArgs) -> Result<u8, Failure> {
    let field = FieldSpec::parse(&args.field)
        .map_err(|e| Failure(format!("field {:?}: {e}", args.field)))?;
    let ones = |n: usize| -> Result<Vector, Failure> {
        Vector::new(field.clone(), vec![Scalar::one(&field); n])
            .map_err(|e| Failure(e.to_string()))
    };
    let scenario: Scenario = match args.name.as_str() {
        "left-regular" => left_regular_scenario(args.n, &field)?,
        "jordan-shift" => {
            let h = match &args.h {
                Some(text) => instance::parse_vector_arg(&field, text)?,
                None => ones(args.k)?,
            };
            jordan_shift_scenario(args.k, &field, &h)?
        }
        "diagonal" => {
            let f = match &args.f {
                Some(text) => instance::parse_vector_arg(&field, text)?,
                None => ones(2)?,
            };
            let n = f.dim();
            let h = match &args.h {
                Some(text) => instance::parse_vector_arg(&field, text)?,
                None => ones(n)?,
            };
            let weights = match &args.weights {
                Some(text) => instance::parse_scalar_list(&field, text)?,
                None => {
                    let uniform = Scalar::from_integer(n as i64, &field)
                        .inv()
                        .map_err(|e| Failure(e.to_string()))?;
                    vec![uniform; n]
                }
            };
            diagonal_scenario(&weights, &f, &h)?
        }
        "field-extension" => {
            let b = Scalar::parse(&args.b, &field)
                .map_err(|e| Failure(format!("--b {:?}: {e}", args.b)))?;
            let c = Scalar::parse(&args.c, &field)
                .map_err(|e| Failure(format!("--c {:?}: {e}", args.c)))?;
            let x = instance::parse_vector_arg(&field, &args.x)?;
            let alpha = instance::parse_vector_arg(&field, &args.alpha)?;
            field_extension_scenario(&b, &c, &x, &alpha)?
        }
        other => {
            return Err(Failure(format!(
                "unknown scenario {other:?}; available: left-regular, jordan-shift, diagonal, \
                 field-extension"
            )))
        }
    };

    let verdict =
        decide_maximal(&scenario.algebra, &scenario.functional, &DecisionOptions::default())?;
    let agrees = verdict.outcome == scenario.expected;
    let recheck = if args.recheck {
        Some(verdict.recheck(&scenario.algebra, &scenario.functional)?)
    } else {
        None
    };
    let input = json!({
        "builder": args.name,
        "field": field.to_string(),
        "params": {
            "n": args.n,
            "k": args.k,
            "h": args.h,
            "weights": args.weights,
            "f": args.f,
            "b": args.b,
            "c": args.c,
            "x": args.x,
            "alpha": args.alpha,
        },
    });
    let result = json!({
        "name": scenario.name,
        "provenance": scenario.provenance,
        "field": scenario.algebra.field().to_string(),
        "k": scenario.algebra.k(),
        "algebra": {
            "dim": scenario.algebra.dim(),
            "basis": matrix_list_value(&scenario.algebra.basis_matrices()),
        },
        "functional": functional_value(&scenario.functional),
        "expected": outcome_str(scenario.expected),
        "verdict": verdict_value(&verdict),
        "agrees": agrees,
    });
    let text = format!(
        "scenario: {}\nexpected: {}\ndecided: {} ({})\n{}",
        scenario.name,
        outcome_str(scenario.expected),
        outcome_str(verdict.outcome),
        certificate_summary(&verdict),
        scenario.provenance
    );
    let rep = envelope("scenario", input, result, recheck);
    emit(&text, &rep, args.json.as_deref())?;
    if recheck == Some(false) || !agrees {
        return Ok(EXIT_VIOLATION);
    }
    Ok(EXIT_OK)
}
