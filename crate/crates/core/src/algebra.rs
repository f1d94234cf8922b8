//! Unital subalgebras of the k-by-k matrix algebra.
//!
//! A [`MatrixAlgebra`] is stored as the canonical echelon subspace of its
//! vectorized elements, so algebra equality, membership, and containment are
//! all syntactic. Algebras are built either by closing a generating set
//! ([`MatrixAlgebra::unital_closure`]) or from a subspace that is verified
//! to contain the identity and be closed under products
//! ([`MatrixAlgebra::from_subspace`]).
//!
//! The module also answers the structural questions the decision procedures
//! need: commutants, maximal-abelianness, cyclic vectors, invariant
//! subspaces (with exhaustive enumeration over prime fields), transitivity,
//! and complementedness of the invariant-subspace lattice.

use num::integer::Integer;
use num::{BigInt, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::{quadratic_roots, FieldSpec, Scalar};
use crate::linalg::{enumerate_subspaces, solve_homogeneous, Matrix, Subspace, Vector};

/// Three-valued answer for questions a budgeted search may leave open.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ternary {
    True,
    False,
    Unknown,
}

impl Ternary {
    pub fn from_bool(b: bool) -> Self {
        if b { Ternary::True } else { Ternary::False }
    }

    pub fn is_true(self) -> bool {
        self == Ternary::True
    }
}

/// A unital subalgebra of M_k(F), canonically represented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixAlgebra {
    field: FieldSpec,
    k: usize,
    basis: Subspace,
}

impl MatrixAlgebra {
    /// The smallest unital algebra containing `generators`: spans of words
    /// in the generators, computed by saturating pairwise products. Each
    /// round either grows the dimension or terminates, so at most k^2
    /// rounds run.
    pub fn unital_closure(field: &FieldSpec, k: usize, generators: &[Matrix]) -> Result<Self> {
        if k == 0 {
            return Err(Error::WrongDimension(0));
        }
        let mut vecs = vec![Matrix::identity(field, k).vectorize()];
        for g in generators {
            if g.field() != *field {
                return Err(Error::FieldMismatch(*field, g.field()));
            }
            if g.k() != k {
                return Err(Error::DimensionMismatch { expected: k, got: g.k() });
            }
            vecs.push(g.vectorize());
        }
        let mut space = Subspace::span(field, k * k, &vecs)?;
        loop {
            let mats: Vec<Matrix> = space
                .basis()
                .iter()
                .map(|v| Matrix::unvectorize(v, k).expect("basis vectors have length k^2"))
                .collect();
            let mut extended = space.basis().to_vec();
            for a in &mats {
                for b in &mats {
                    extended.push(a.mul(b).vectorize());
                }
            }
            let bigger = Subspace::span(field, k * k, &extended)?;
            if bigger.dim() == space.dim() {
                break;
            }
            space = bigger;
        }
        Ok(MatrixAlgebra { field: *field, k, basis: space })
    }

    /// Wraps a subspace of F^(k^2) after verifying it contains the identity
    /// and is closed under matrix products.
    pub fn from_subspace(k: usize, space: Subspace) -> Result<Self> {
        let field = space.field();
        if space.ambient_dim() != k * k {
            return Err(Error::DimensionMismatch { expected: k * k, got: space.ambient_dim() });
        }
        if !space.member(&Matrix::identity(&field, k).vectorize())? {
            return Err(Error::IdentityMissing);
        }
        let mats: Vec<Matrix> = space
            .basis()
            .iter()
            .map(|v| Matrix::unvectorize(v, k).expect("ambient dimension checked"))
            .collect();
        for a in &mats {
            for b in &mats {
                if !space.member(&a.mul(b).vectorize())? {
                    return Err(Error::NotMultiplicativelyClosed);
                }
            }
        }
        Ok(MatrixAlgebra { field, k, basis: space })
    }

    /// The full matrix algebra M_k(F).
    pub fn full(field: &FieldSpec, k: usize) -> Self {
        MatrixAlgebra { field: *field, k, basis: Subspace::full(field, k * k) }
    }

    /// The scalar algebra F * I.
    pub fn scalars(field: &FieldSpec, k: usize) -> Self {
        let space = Subspace::span(field, k * k, &[Matrix::identity(field, k).vectorize()])
            .expect("identity vectorizes into F^(k^2)");
        MatrixAlgebra { field: *field, k, basis: space }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// The canonical echelon basis, as a subspace of F^(k^2).
    pub fn basis_space(&self) -> &Subspace {
        &self.basis
    }

    /// The canonical basis, unvectorized.
    pub fn basis_matrices(&self) -> Vec<Matrix> {
        self.basis
            .basis()
            .iter()
            .map(|v| Matrix::unvectorize(v, self.k).expect("basis vectors have length k^2"))
            .collect()
    }

    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        if m.k() != self.k {
            return Err(Error::DimensionMismatch { expected: self.k, got: m.k() });
        }
        self.basis.member(&m.vectorize())
    }

    pub fn contains_algebra(&self, other: &MatrixAlgebra) -> bool {
        self.basis.contains(&other.basis)
    }

    pub fn is_abelian(&self) -> bool {
        let mats = self.basis_matrices();
        for (i, a) in mats.iter().enumerate() {
            for b in &mats[i + 1..] {
                if !a.commutes_with(b) {
                    return false;
                }
            }
        }
        true
    }

    /// The commutant {T : TB = BT for every B in the algebra}, computed as
    /// the joint kernel of the maps T -> TB - BT over the basis. In the
    /// row-major convention vec(TB) = (I (x) B^T) vec(T) and
    /// vec(BT) = (B (x) I) vec(T).
    pub fn commutant(&self) -> MatrixAlgebra {
        let k = self.k;
        let id = Matrix::identity(&self.field, k);
        let mut constraints = Vec::new();
        for b in self.basis_matrices() {
            let left = id.kronecker(&b.transpose());
            let right = b.kronecker(&id);
            let diff = left.sub(&right);
            for i in 0..k * k {
                let row = Vector::new(
                    self.field,
                    (0..k * k).map(|j| diff.entry(i, j).clone()).collect(),
                )
                .expect("entries share the algebra field");
                constraints.push(row);
            }
        }
        let space = solve_homogeneous(&self.field, k * k, &constraints)
            .expect("constraint rows are well-shaped");
        MatrixAlgebra::from_subspace(k, space).expect("a commutant is a unital algebra")
    }

    /// True iff the algebra is abelian and equals its own commutant, i.e.
    /// is not contained in any strictly larger abelian subalgebra.
    pub fn is_maximal_abelian(&self) -> bool {
        self.is_abelian() && self.commutant().basis == self.basis
    }

    /// The transposed algebra {B^T : B in A}.
    pub fn adjoint_algebra(&self) -> MatrixAlgebra {
        let vecs: Vec<Vector> = self
            .basis_matrices()
            .iter()
            .map(|b| b.transpose().vectorize())
            .collect();
        let space = Subspace::span(&self.field, self.k * self.k, &vecs)
            .expect("transposes stay in F^(k^2)");
        MatrixAlgebra::from_subspace(self.k, space)
            .expect("transposing an algebra yields an algebra")
    }

    /// span {B x : B in A}; always contains x because the algebra is
    /// unital, and is always an invariant subspace.
    pub fn orbit_span(&self, x: &Vector) -> Result<Subspace> {
        if x.dim() != self.k {
            return Err(Error::DimensionMismatch { expected: self.k, got: x.dim() });
        }
        if x.field() != self.field {
            return Err(Error::FieldMismatch(self.field, x.field()));
        }
        let orbit: Vec<Vector> = self.basis_matrices().iter().map(|b| b.apply(x)).collect();
        Subspace::span(&self.field, self.k, &orbit)
    }

    /// True iff the orbit of x spans all of F^k.
    pub fn is_cyclic(&self, x: &Vector) -> Result<bool> {
        Ok(self.orbit_span(x)?.is_full())
    }

    /// True iff A maps the subspace into itself.
    pub fn is_invariant(&self, m: &Subspace) -> bool {
        assert_eq!(m.ambient_dim(), self.k, "invariance is asked in F^k");
        let mats = self.basis_matrices();
        m.basis().iter().all(|v| {
            mats.iter().all(|b| m.member(&b.apply(v)).expect("shapes agree"))
        })
    }

    /// Every invariant subspace, by exhaustive enumeration over a prime
    /// field. Errors with [`Error::BudgetExceeded`] when the subspace count
    /// of F^k exceeds `budget`, or [`Error::FiniteFieldRequired`] over Q.
    pub fn invariant_subspaces(&self, budget: u64) -> Result<Vec<Subspace>> {
        let all = enumerate_subspaces(&self.field, self.k, budget)?;
        Ok(all.into_iter().filter(|m| self.is_invariant(m)).collect())
    }

    /// Decides whether the algebra has no invariant subspace other than 0
    /// and F^k. Exhaustive (hence decisive) over prime fields within
    /// budget; over Q, falls back to orbit probes for refutation and two
    /// sufficient conditions for confirmation: the algebra is all of M_k,
    /// or some element has an irreducible characteristic polynomial of
    /// degree k (checked for k <= 3).
    pub fn is_transitive(&self, budget: u64) -> Transitivity {
        if self.k == 1 {
            return Transitivity { verdict: Ternary::True, invariant_witness: None };
        }
        if self.field.is_finite() {
            match self.invariant_subspaces(budget) {
                Ok(all) => {
                    let proper = all.into_iter().find(|m| !m.is_zero() && !m.is_full());
                    return match proper {
                        Some(m) => {
                            Transitivity { verdict: Ternary::False, invariant_witness: Some(m) }
                        }
                        None => Transitivity { verdict: Ternary::True, invariant_witness: None },
                    };
                }
                Err(Error::BudgetExceeded { .. }) => {
                    // Fall through to the generic probes below.
                }
                Err(e) => unreachable!("finite-field enumeration failed: {e}"),
            }
        }
        // Orbit probes: each orbit span is invariant and nonzero for x != 0.
        let mut probes: Vec<Vector> = (0..self.k)
            .map(|i| Vector::standard_basis(&self.field, self.k, i))
            .collect();
        probes.push(Vector::new(
            self.field,
            vec![Scalar::one(&self.field); self.k],
        )
        .expect("constant vector is well-formed"));
        for x in &probes {
            let m = self.orbit_span(x).expect("probe vectors are well-shaped");
            if !m.is_zero() && !m.is_full() {
                return Transitivity { verdict: Ternary::False, invariant_witness: Some(m) };
            }
        }
        if self.dim() == self.k * self.k {
            return Transitivity { verdict: Ternary::True, invariant_witness: None };
        }
        // An element with irreducible characteristic polynomial of degree k
        // forbids proper invariant subspaces: its restriction to one would
        // have a minimal polynomial of degree < k dividing an irreducible
        // polynomial of degree k.
        for t in self.basis_matrices() {
            if irreducible_char_poly(&t) == Some(true) {
                return Transitivity { verdict: Ternary::True, invariant_witness: None };
            }
        }
        Transitivity { verdict: Ternary::Unknown, invariant_witness: None }
    }

    /// Decides whether every invariant subspace has an invariant direct
    /// complement. Exhaustive over prime fields within budget; over Q the
    /// only confirmations available are k = 1 and definite transitivity
    /// (lattice {0, F^k}), otherwise Unknown.
    pub fn has_complemented_lattice(&self, budget: u64) -> LatticeReport {
        if self.k == 1 {
            return LatticeReport { verdict: Ternary::True, uncomplemented: None };
        }
        if self.field.is_finite() {
            if let Ok(all) = self.invariant_subspaces(budget) {
                for m in &all {
                    if m.is_zero() || m.is_full() {
                        continue;
                    }
                    let complemented = all.iter().any(|n| {
                        n.dim() + m.dim() == self.k
                            && m.sum(n).expect("same ambient space").is_full()
                    });
                    if !complemented {
                        return LatticeReport {
                            verdict: Ternary::False,
                            uncomplemented: Some(m.clone()),
                        };
                    }
                }
                return LatticeReport { verdict: Ternary::True, uncomplemented: None };
            }
            // Budget exceeded: fall through to the transitivity shortcut.
        }
        match self.is_transitive(budget).verdict {
            Ternary::True => LatticeReport { verdict: Ternary::True, uncomplemented: None },
            _ => LatticeReport { verdict: Ternary::Unknown, uncomplemented: None },
        }
    }
}

/// Outcome of a transitivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transitivity {
    pub verdict: Ternary,
    /// A proper nonzero invariant subspace, when one was found.
    pub invariant_witness: Option<Subspace>,
}

/// Outcome of an invariant-lattice complementedness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub verdict: Ternary,
    /// An invariant subspace with no invariant complement, when found.
    pub uncomplemented: Option<Subspace>,
}

/// Canonical 2x2 similarity types for a non-scalar matrix, according to how
/// its characteristic polynomial factors over the base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalForm2x2 {
    /// Two distinct eigenvalues in the field: diag(a, b) with a < b in the
    /// canonical scalar order.
    DiagDistinct(Scalar, Scalar),
    /// A repeated eigenvalue on a non-scalar matrix: the Jordan block
    /// [[a, 1], [0, a]].
    JordanRepeated(Scalar),
    /// Irreducible characteristic polynomial x^2 + b x + c: the companion
    /// matrix [[0, -c], [1, -b]].
    CompanionIrreducible(Scalar, Scalar),
}

impl CanonicalForm2x2 {
    /// The canonical matrix itself.
    pub fn matrix(&self, field: &FieldSpec) -> Matrix {
        match self {
            CanonicalForm2x2::DiagDistinct(a, b) => Matrix::new(
                *field,
                2,
                vec![a.clone(), Scalar::zero(field), Scalar::zero(field), b.clone()],
            )
            .expect("2x2 shape"),
            CanonicalForm2x2::JordanRepeated(a) => Matrix::new(
                *field,
                2,
                vec![a.clone(), Scalar::one(field), Scalar::zero(field), a.clone()],
            )
            .expect("2x2 shape"),
            CanonicalForm2x2::CompanionIrreducible(b, c) => Matrix::new(
                *field,
                2,
                vec![Scalar::zero(field), c.neg(), Scalar::one(field), b.neg()],
            )
            .expect("2x2 shape"),
        }
    }
}

/// Classifies a non-scalar 2x2 matrix up to similarity and returns the
/// change of basis: `(form, s)` with `s^-1 * t * s` equal to the canonical
/// matrix. Errors with [`Error::ScalarInput`] if `t` is a multiple of the
/// identity (every basis is canonical for those) and
/// [`Error::WrongDimension`] off size 2.
pub fn similarity_to_canonical_2x2(t: &Matrix) -> Result<(CanonicalForm2x2, Matrix)> {
    if t.k() != 2 {
        return Err(Error::WrongDimension(t.k()));
    }
    if t.is_scalar() {
        return Err(Error::ScalarInput);
    }
    let field = t.field();
    let tr = t.trace();
    let det = t.determinant_2x2().expect("size checked");
    // Characteristic polynomial: x^2 - tr x + det.
    let roots = quadratic_roots(&tr.neg(), &det)?;
    let (form, s) = if roots.roots.len() == 2 {
        let (a, b) = (roots.roots[0].clone(), roots.roots[1].clone());
        let v_a = eigenvector(t, &a);
        let v_b = eigenvector(t, &b);
        let s = columns_2x2(&field, &v_a, &v_b);
        (CanonicalForm2x2::DiagDistinct(a, b), s)
    } else if roots.roots.len() == 1 {
        let a = roots.roots[0].clone();
        debug_assert!(roots.repeated);
        // t - a I is nonzero (t is not scalar) and squares to zero, so any
        // vector outside its kernel gives a Jordan chain (w, v) with
        // (t - a) v = w and (t - a) w = 0.
        let shifted = t.sub(&Matrix::identity(&field, 2).scale(&a));
        let v = (0..2)
            .map(|i| Vector::standard_basis(&field, 2, i))
            .find(|v| !shifted.apply(v).is_zero())
            .expect("a nonzero matrix moves some basis vector");
        let w = shifted.apply(&v);
        let s = columns_2x2(&field, &w, &v);
        (CanonicalForm2x2::JordanRepeated(a), s)
    } else {
        // Irreducible characteristic polynomial: no eigenvector exists, so
        // {e1, t e1} is a basis and t acts as the companion matrix on it.
        let b = tr.neg();
        let c = det;
        let e1 = Vector::standard_basis(&field, 2, 0);
        let s = columns_2x2(&field, &e1, &t.apply(&e1));
        (CanonicalForm2x2::CompanionIrreducible(b, c), s)
    };
    let s_inv = s.inverse().expect("columns form a basis");
    assert!(
        s_inv.mul(t).mul(&s) == form.matrix(&field),
        "similarity failed verification"
    );
    Ok((form, s))
}

fn eigenvector(t: &Matrix, lambda: &Scalar) -> Vector {
    let field = t.field();
    let shifted = t.sub(&Matrix::identity(&field, t.k()).scale(lambda));
    let rows: Vec<Vector> = (0..t.k())
        .map(|i| {
            Vector::new(field, (0..t.k()).map(|j| shifted.entry(i, j).clone()).collect())
                .expect("entries share the field")
        })
        .collect();
    let kernel = solve_homogeneous(&field, t.k(), &rows).expect("well-shaped rows");
    kernel.basis()[0].clone()
}

pub(crate) fn columns_2x2(field: &FieldSpec, c0: &Vector, c1: &Vector) -> Matrix {
    Matrix::from_fn(field, 2, |i, j| {
        if j == 0 { c0.entry(i).clone() } else { c1.entry(i).clone() }
    })
}

/// Monic characteristic polynomial coefficients `[c_0, ..., c_{k-1}]` of
/// `x^k + c_{k-1} x^{k-1} + ... + c_0`, for k <= 3.
pub fn char_poly_low_degree(t: &Matrix) -> Option<Vec<Scalar>> {
    let field = t.field();
    match t.k() {
        1 => Some(vec![t.entry(0, 0).neg()]),
        2 => {
            let tr = t.trace();
            let det = t.determinant_2x2().expect("size 2");
            Some(vec![det, tr.neg()])
        }
        3 => {
            let tr = t.trace();
            // Sum of principal 2x2 minors.
            let mut minors = Scalar::zero(&field);
            for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                let m = t
                    .entry(i, i)
                    .mul(t.entry(j, j))
                    .sub(&t.entry(i, j).mul(t.entry(j, i)));
                minors = minors.add(&m);
            }
            let det = determinant_3x3(t);
            Some(vec![det.neg(), minors, tr.neg()])
        }
        _ => None,
    }
}

fn determinant_3x3(t: &Matrix) -> Scalar {
    let e = |i: usize, j: usize| t.entry(i, j);
    let m0 = e(1, 1).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 1)));
    let m1 = e(1, 0).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 0)));
    let m2 = e(1, 0).mul(e(2, 1)).sub(&e(1, 1).mul(e(2, 0)));
    e(0, 0).mul(&m0).sub(&e(0, 1).mul(&m1)).add(&e(0, 2).mul(&m2))
}

/// Whether the characteristic polynomial of `t` is irreducible over the
/// base field. `Some(answer)` when decidable with the implemented degree
/// bounds (k <= 3, and root searches feasible), `None` otherwise.
fn irreducible_char_poly(t: &Matrix) -> Option<bool> {
    let field = t.field();
    match t.k() {
        2 => {
            let tr = t.trace();
            let det = t.determinant_2x2().expect("size 2");
            let roots = quadratic_roots(&tr.neg(), &det).ok()?;
            Some(roots.roots.is_empty())
        }
        3 => {
            // A cubic is irreducible iff it has no root in the field.
            let coeffs = char_poly_low_degree(t).expect("size 3");
            cubic_has_root(&field, &coeffs[2], &coeffs[1], &coeffs[0]).map(|has| !has)
        }
        _ => None,
    }
}

/// Whether x^3 + a x^2 + b x + c has a root in the field. Over Q this uses
/// the rational root theorem after clearing denominators; over GF(p) it
/// scans when p is small. `None` when the search bounds are exceeded.
fn cubic_has_root(field: &FieldSpec, a: &Scalar, b: &Scalar, c: &Scalar) -> Option<bool> {
    let eval = |x: &Scalar| -> Scalar {
        x.mul(x).mul(x).add(&a.mul(&x.mul(x))).add(&b.mul(x)).add(c)
    };
    match field {
        FieldSpec::PrimeField(p) => {
            if *p > 10_000 {
                return None;
            }
            for v in 0..*p {
                let x = Scalar::Residue { value: v, modulus: *p };
                if eval(&x).is_zero() {
                    return Some(true);
                }
            }
            Some(false)
        }
        FieldSpec::Rationals => {
            if c.is_zero() {
                return Some(true);
            }
            let (an, ad) = rational_parts(a);
            let (bn, bd) = rational_parts(b);
            let (cn, cd) = rational_parts(c);
            let _ = (an, bn, cn);
            // Substitute x = y / d for a common denominator d: the
            // transformed polynomial y^3 + (a d) y^2 + (b d^2) y + (c d^3)
            // is monic with integer coefficients, so its rational roots are
            // integers dividing the constant term.
            let d = ad.lcm(&bd).lcm(&cd);
            let d_scalar = Scalar::Rational(num::BigRational::from(d.clone()));
            let const_term = match c.mul(&d_scalar.mul(&d_scalar).mul(&d_scalar)) {
                Scalar::Rational(r) => r.to_integer(),
                Scalar::Residue { .. } => unreachable!("rational arithmetic"),
            };
            let magnitude = const_term.abs().to_u64()?;
            if magnitude > 1_000_000_000_000 {
                return None;
            }
            for divisor in divisors(magnitude) {
                for sign in [1i64, -1] {
                    let y = BigInt::from(sign) * BigInt::from(divisor);
                    let x = Scalar::Rational(num::BigRational::new(y, d.clone()));
                    if eval(&x).is_zero() {
                        return Some(true);
                    }
                }
            }
            Some(false)
        }
    }
}

fn rational_parts(s: &Scalar) -> (BigInt, BigInt) {
    match s {
        Scalar::Rational(r) => (r.numer().clone(), r.denom().clone()),
        Scalar::Residue { .. } => unreachable!("rational arithmetic"),
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}
