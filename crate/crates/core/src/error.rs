//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Error`]. Variants are
//! deliberately fine-grained so that callers (in particular the CLI) can
//! surface the exact precondition that was violated.

use crate::field::FieldSpec;

/// Errors reported by scalar arithmetic, linear algebra and the decision
/// procedures built on top of them.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Division (or inversion) of a zero scalar.
    #[error("division by zero")]
    DivisionByZero,

    /// Arithmetic between scalars of different fields.
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),

    /// The modulus given for a prime field is not prime.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// The modulus given for a prime field does not fit the supported range.
    #[error("prime {0} out of supported range (2 <= p < 2^31)")]
    PrimeOutOfRange(u64),

    /// A scalar, vector or matrix literal could not be parsed.
    #[error("cannot parse scalar {text:?} over {field}")]
    ParseScalar { text: String, field: FieldSpec },

    /// A field descriptor string could not be parsed.
    #[error("cannot parse field descriptor {0:?} (expected \"Q\" or \"GF(p)\")")]
    ParseField(String),

    /// Vector or matrix shapes do not line up.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An operation that needs a 2x2 input got something else.
    #[error("expected a 2x2 matrix, got k = {0}")]
    WrongDimension(usize),

    /// Matrix inversion of a singular matrix.
    #[error("matrix is singular")]
    Singular,

    /// A canonical-form request for a scalar multiple of the identity.
    #[error("scalar matrices have no nonscalar canonical form")]
    ScalarInput,

    /// An enumeration would exceed the caller-supplied budget.
    #[error("enumeration needs {required} candidates, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    /// An operation that only makes sense over a finite field was asked of Q.
    #[error("operation requires a finite field")]
    FiniteFieldRequired,

    /// A subspace offered as an algebra does not contain the identity.
    #[error("subspace does not contain the identity matrix")]
    IdentityMissing,

    /// A subspace offered as an algebra is not closed under products.
    #[error("subspace is not closed under matrix multiplication")]
    NotMultiplicativelyClosed,

    /// A K-form functional whose matrix does not have trace 1.
    #[error("functional is not unital: trace of K is not 1")]
    NotUnitalFunctional,

    /// A rank-one pair (x, alpha) with pairing different from 1.
    #[error("pairing <x, alpha> is not 1")]
    NotUnitalPairing,

    /// A procedure that requires a tracial algebra got a non-tracial one.
    #[error("algebra is not tracial for the functional")]
    NotTracial,

    /// A procedure that requires an abelian algebra got a non-abelian one.
    #[error("algebra is not abelian")]
    NotAbelian,

    /// A procedure that requires a rank-one functional got a K-form one.
    #[error("operation requires a rank-one functional")]
    RankOneRequired,

    /// The invariant-subspace lattice is not complemented, so a necessity
    /// check premised on that property does not apply.
    #[error("invariant subspace lattice is not complemented")]
    LatticeNotComplemented,

    /// Complementedness of the invariant-subspace lattice could not be
    /// decided within the budget (or at all, over Q).
    #[error("complementedness of the invariant subspace lattice is undecided")]
    LatticeUndecided,

    /// Scenario weights must be positive rationals summing to one.
    #[error("weights must be positive rationals summing to 1")]
    InvalidWeights,

    /// A quadratic that must be irreducible splits over the base field.
    #[error("polynomial is reducible over the base field")]
    ReduciblePolynomial,

    /// The field characteristic divides n, so the normalized trace 1/n Tr
    /// does not exist.
    #[error("field characteristic divides n")]
    CharacteristicDividesN,

    /// The oracle sweep is only wired for small prime fields.
    #[error("unsupported sweep field GF({0}) (supported: 2, 3, 5)")]
    UnsupportedSweepField(u64),
}

/// Shorthand result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
