//! Exact-arithmetic decision procedures for unital functionals on matrix
//! algebras over the rationals and prime fields.
//!
//! The crate answers two questions about a unital subalgebra A of k-by-k
//! matrices equipped with a unital linear functional phi:
//!
//! 1. Is phi tracial on A (phi(ab) = phi(ba) for all a, b in A)?
//! 2. Is A maximal among phi-tracial subalgebras of the full matrix
//!    algebra?
//!
//! Every verdict carries a certificate that can be replayed independently:
//! a violating pair, an explicit extension witness, an exhausted search
//! space, or a structural criterion checklist. All arithmetic is exact
//! (arbitrary-precision rationals or prime residues), so verdicts are
//! decisions, not approximations, except where a search is explicitly
//! budget-limited and says so.

pub mod algebra;
pub mod classify2x2;
pub mod error;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod scenarios;
pub mod tracial;

pub use algebra::{MatrixAlgebra, Ternary};
pub use classify2x2::{classify2x2, CaseLabel, Classification};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use linalg::{Matrix, Subspace, Vector};
pub use oracle::{brute_maximal, verify_classification, BruteVerdict, SweepReport};
pub use scenarios::Scenario;
pub use tracial::{
    decide_maximal, Certificate, DecisionOptions, Functional, Outcome, Verdict,
};
