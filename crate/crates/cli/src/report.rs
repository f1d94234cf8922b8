//! JSON report assembly.
//!
//! Reports embed the tool version and the fully resolved instance, so a
//! stored report is self-contained: the certificate inside it can be
//! replayed against the echoed instance without the original file.
//! Serialization uses sorted object keys and no timestamps, so identical
//! inputs and seed produce byte-identical reports.

use std::path::Path;

use serde_json::{json, Map, Value};
use tracial_core::tracial::CriterionChecklist;
use tracial_core::{
    Certificate, Functional, Matrix, Outcome, Subspace, Ternary, Vector, Verdict,
};

use crate::instance::ResolvedInstance;
use crate::Failure;

pub fn scalar_value(s: &tracial_core::Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn matrix_value(m: &Matrix) -> Value {
    Value::Array(
        (0..m.k())
            .map(|i| Value::Array((0..m.k()).map(|j| scalar_value(m.entry(i, j))).collect()))
            .collect(),
    )
}

pub fn vector_value(v: &Vector) -> Value {
    Value::Array((0..v.dim()).map(|i| scalar_value(v.entry(i))).collect())
}

pub fn matrix_list_value(ms: &[Matrix]) -> Value {
    Value::Array(ms.iter().map(matrix_value).collect())
}

/// A subspace of column space, rendered as vectors.
pub fn column_space_value(space: &Subspace) -> Value {
    json!({
        "dim": space.dim(),
        "basis": Value::Array(space.basis().iter().map(vector_value).collect()),
    })
}

pub fn functional_value(phi: &Functional) -> Value {
    match phi.rank_one_parts() {
        Some((x, alpha)) => json!({
            "kind": "rank1",
            "x": vector_value(x),
            "alpha": vector_value(alpha),
            "K": matrix_value(&phi.to_k_form()),
        }),
        None => json!({ "kind": "K", "K": matrix_value(&phi.to_k_form()) }),
    }
}

pub fn outcome_str(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Maximal => "Maximal",
        Outcome::NotMaximal => "NotMaximal",
        Outcome::NotTracial => "NotTracial",
        Outcome::Unknown => "Unknown",
    }
}

pub fn ternary_value(t: Ternary) -> Value {
    match t {
        Ternary::True => Value::String("true".to_string()),
        Ternary::False => Value::String("false".to_string()),
        Ternary::Unknown => Value::String("unknown".to_string()),
    }
}

pub fn checklist_value(c: &CriterionChecklist) -> Value {
    json!({
        "maximal_abelian": c.maximal_abelian,
        "vector_cyclic": c.vector_cyclic,
        "adjoint_vector_cyclic": c.adjoint_vector_cyclic,
    })
}

pub fn certificate_value(certificate: &Certificate) -> Value {
    match certificate {
        Certificate::FoesEqualsAlgebra => json!({ "type": "FoesEqualsAlgebra" }),
        Certificate::ExhaustiveSearch { enumerated } => json!({
            "type": "ExhaustiveSearch",
            "enumerated": enumerated.to_string(),
        }),
        Certificate::CyclicityCriterion { checklist } => json!({
            "type": "CyclicityCriterion",
            "checklist": checklist_value(checklist),
        }),
        Certificate::WitnessExtension { witness } => json!({
            "type": "WitnessExtension",
            "witness": matrix_value(witness),
        }),
        Certificate::TracialityViolation { left, right } => json!({
            "type": "TracialityViolation",
            "left": matrix_value(left),
            "right": matrix_value(right),
        }),
        Certificate::QuadraticFieldObstruction { left, right } => json!({
            "type": "QuadraticFieldObstruction",
            "left": matrix_value(left),
            "right": matrix_value(right),
        }),
    }
}

pub fn verdict_value(verdict: &Verdict) -> Value {
    let mut obj = Map::new();
    obj.insert("outcome".to_string(), json!(outcome_str(verdict.outcome)));
    obj.insert(
        "certificate".to_string(),
        verdict.certificate.as_ref().map_or(Value::Null, certificate_value),
    );
    match &verdict.certificate {
        Some(Certificate::WitnessExtension { witness }) => {
            obj.insert("witness".to_string(), matrix_value(witness));
        }
        Some(Certificate::ExhaustiveSearch { enumerated }) => {
            obj.insert("enumerated_count".to_string(), json!(enumerated.to_string()));
        }
        _ => {}
    }
    if let Some(checklist) = &verdict.checklist {
        obj.insert("checklist".to_string(), checklist_value(checklist));
    }
    if let Some(seed) = verdict.seed {
        obj.insert("seed".to_string(), json!(seed));
    }
    Value::Object(obj)
}

/// The fully resolved instance echoed into every instance-driven report.
pub fn instance_value(instance: &ResolvedInstance) -> Value {
    json!({
        "field": instance.field.to_string(),
        "k": instance.k,
        "generators": matrix_list_value(&instance.generators),
        "algebra": {
            "dim": instance.algebra.dim(),
            "basis": matrix_list_value(&instance.algebra.basis_matrices()),
        },
        "functional": functional_value(&instance.functional),
        "options": { "budget": instance.options.budget, "seed": instance.options.seed },
    })
}

/// Wraps a command's payload with the tool version and the echoed input.
pub fn envelope(command: &str, input: Value, result: Value, recheck: Option<bool>) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "tool".to_string(),
        json!({ "name": "tracial", "version": env!("CARGO_PKG_VERSION") }),
    );
    obj.insert("command".to_string(), json!(command));
    obj.insert("instance".to_string(), input);
    obj.insert("result".to_string(), result);
    if let Some(flag) = recheck {
        obj.insert("recheck".to_string(), json!(flag));
    }
    Value::Object(obj)
}

/// Prints the text report to standard output and, when requested, writes
/// the JSON report.
pub fn emit(text: &str, report: &Value, json_path: Option<&Path>) -> Result<(), Failure> {
    println!("{text}");
    if let Some(path) = json_path {
        let mut body = serde_json::to_string_pretty(report)
            .map_err(|e| Failure(format!("serializing report: {e}")))?;
        body.push('\n');
        std::fs::write(path, body)
            .map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}
