//! The JSON instance-file format shared by all subcommands, and its
//! resolution into domain objects.
//!
//! An instance file names a field, an ambient size, algebra generators, and
//! a functional, with optional search options:
//!
//! ```json
//! {
//!   "field": "Q",
//!   "k": 2,
//!   "generators": [[["1", "0"], ["0", "-1"]]],
//!   "functional": { "kind": "K", "K": [["1/2", "1"], ["1", "1/2"]] },
//!   "options": { "budget": 1000, "seed": 0 }
//! }
//! ```
//!
//! Scalars use the field module's text syntax: rationals as `n` or `n/d`
//! with an optional leading minus, prime-field elements as decimal
//! residues. Matrices are arrays of rows; vectors are flat arrays.

use std::path::Path;

use serde::Deserialize;
use tracial_core::{DecisionOptions, FieldSpec, Functional, Matrix, MatrixAlgebra, Scalar, Vector};

use crate::Failure;

/// A parsed instance file, before scalars are interpreted in the field.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    /// Field descriptor: `"Q"` or `"GF(p)"`.
    pub field: String,
    /// Ambient matrix size.
    pub k: usize,
    /// Algebra generators; the instance's algebra is their unital closure.
    pub generators: Vec<Vec<Vec<String>>>,
    pub functional: FunctionalSpec,
    #[serde(default)]
    pub options: OptionsSpec,
}

/// A functional descriptor: either a representing matrix or a rank-one
/// vector pair.
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FunctionalSpec {
    #[serde(rename = "K")]
    KForm {
        #[serde(rename = "K")]
        k_matrix: Vec<Vec<String>>,
    },
    #[serde(rename = "rank1")]
    RankOne { x: Vec<String>, alpha: Vec<String> },
}

/// Optional search options; command-line flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    pub budget: Option<u64>,
    pub seed: Option<u64>,
}

/// An instance file resolved against its field: every scalar parsed, the
/// algebra closed, the functional validated.
pub struct ResolvedInstance {
    pub field: FieldSpec,
    pub k: usize,
    pub generators: Vec<Matrix>,
    pub algebra: MatrixAlgebra,
    pub functional: Functional,
    pub options: DecisionOptions,
}

/// Reads and parses an instance file; JSON syntax errors carry the line and
/// column reported by the parser.
pub fn load(path: &Path) -> Result<InstanceFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// Resolves a parsed file into domain objects. `budget` and `seed` are the
/// command-line overrides; precedence is flag, then file, then default
/// (budget 2*10^7, seed 0).
pub fn resolve(
    file: &InstanceFile,
    budget: Option<u64>,
    seed: Option<u64>,
) -> Result<ResolvedInstance, Failure> {
    let field = FieldSpec::parse(&file.field)
        .map_err(|e| Failure(format!("field {:?}: {e}", file.field)))?;
    if file.k == 0 {
        return Err(Failure("k must be at least 1".to_string()));
    }

    let mut generators = Vec::with_capacity(file.generators.len());
    for (index, rows) in file.generators.iter().enumerate() {
        let m = Matrix::from_string_rows(&field, rows)
            .map_err(|e| Failure(format!("generators[{index}]: {e}")))?;
        if m.k() != file.k {
            return Err(Failure(format!(
                "generators[{index}]: expected a {k} x {k} matrix, got {got} x {got}",
                k = file.k,
                got = m.k()
            )));
        }
        generators.push(m);
    }
    let algebra = MatrixAlgebra::unital_closure(&field, file.k, &generators)
        .map_err(|e| Failure(format!("generators: {e}")))?;

    let functional = match &file.functional {
        FunctionalSpec::KForm { k_matrix } => {
            let m = Matrix::from_string_rows(&field, k_matrix)
                .map_err(|e| Failure(format!("functional.K: {e}")))?;
            if m.k() != file.k {
                return Err(Failure(format!(
                    "functional.K: expected a {k} x {k} matrix, got {got} x {got}",
                    k = file.k,
                    got = m.k()
                )));
            }
            Functional::k_form(m).map_err(|e| Failure(format!("functional.K: {e}")))?
        }
        FunctionalSpec::RankOne { x, alpha } => {
            let x = parse_vector(&field, x).map_err(|e| Failure(format!("functional.x: {e}")))?;
            let alpha = parse_vector(&field, alpha)
                .map_err(|e| Failure(format!("functional.alpha: {e}")))?;
            if x.dim() != file.k || alpha.dim() != file.k {
                return Err(Failure(format!(
                    "functional: expected vectors of length {}, got {} and {}",
                    file.k,
                    x.dim(),
                    alpha.dim()
                )));
            }
            Functional::rank_one(x, alpha).map_err(|e| Failure(format!("functional: {e}")))?
        }
    };

    let defaults = DecisionOptions::default();
    let options = DecisionOptions {
        budget: budget.or(file.options.budget).unwrap_or(defaults.budget),
        seed: seed.or(file.options.seed).unwrap_or(defaults.seed),
    };
    Ok(ResolvedInstance { field, k: file.k, generators, algebra, functional, options })
}

fn parse_vector(field: &FieldSpec, entries: &[String]) -> tracial_core::Result<Vector> {
    let scalars = entries
        .iter()
        .map(|text| Scalar::parse(text, field))
        .collect::<tracial_core::Result<Vec<_>>>()?;
    Vector::new(field.clone(), scalars)
}

/// Parses a comma-separated scalar list, for scenario parameters.
pub fn parse_scalar_list(field: &FieldSpec, text: &str) -> Result<Vec<Scalar>, Failure> {
    text.split(',')
        .map(|part| {
            Scalar::parse(part.trim(), field)
                .map_err(|e| Failure(format!("scalar list {text:?}: {e}")))
        })
        .collect()
}

/// Parses a comma-separated vector, for scenario parameters.
pub fn parse_vector_arg(field: &FieldSpec, text: &str) -> Result<Vector, Failure> {
    let scalars = parse_scalar_list(field, text)?;
    Vector::new(field.clone(), scalars).map_err(|e| Failure(format!("vector {text:?}: {e}")))
}
