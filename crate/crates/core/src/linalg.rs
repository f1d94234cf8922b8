//! Exact linear algebra: vectors, square matrices, and canonically
//! represented subspaces of F^n.
//!
//! A [`Subspace`] always stores the unique reduced-row-echelon basis of its
//! row span, so two subspaces are equal iff their representations are equal
//! as data. Everything downstream (algebra closures, commutants, extension
//! spaces) leans on that: set-theoretic questions become syntactic ones.
//!
//! Matrices are identified with vectors of F^(k^2) in row-major order
//! throughout the crate: entry (i, j) sits at index `i * k + j`. Mixing
//! conventions is the classic way to get every adjoint identity silently
//! wrong, so [`Matrix::vectorize`] / [`Matrix::unvectorize`] are the only
//! places where the flattening happens.

use std::fmt;

use num::BigInt;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A dense vector with entries in a single field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Vector {
    /// Builds a vector, checking that every entry lives in `field`.
    pub fn new(field: FieldSpec, entries: Vec<Scalar>) -> Result<Self> {
        for e in &entries {
            if e.field() != field {
                return Err(Error::FieldMismatch(field, e.field()));
            }
        }
        Ok(Vector { field, entries })
    }

    /// Embeds a slice of integers.
    pub fn from_integers(field: &FieldSpec, values: &[i64]) -> Self {
        Vector {
            field: *field,
            entries: values.iter().map(|v| Scalar::from_integer(*v, field)).collect(),
        }
    }

    /// Parses entries in the scalar text syntax of `field`.
    pub fn from_strings(field: &FieldSpec, texts: &[String]) -> Result<Self> {
        let entries = texts
            .iter()
            .map(|t| Scalar::parse(t, field))
            .collect::<Result<Vec<_>>>()?;
        Ok(Vector { field: *field, entries })
    }

    /// The zero vector of the given dimension.
    pub fn zero(field: &FieldSpec, dim: usize) -> Self {
        Vector { field: *field, entries: vec![Scalar::zero(field); dim] }
    }

    /// The standard basis vector e_i (0-indexed).
    pub fn standard_basis(field: &FieldSpec, dim: usize, i: usize) -> Self {
        let mut entries = vec![Scalar::zero(field); dim];
        entries[i] = Scalar::one(field);
        Vector { field: *field, entries }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Index of the first nonzero entry.
    pub fn leading_index(&self) -> Option<usize> {
        self.entries.iter().position(|e| !e.is_zero())
    }

    fn expect_same_shape(&self, other: &Vector) {
        assert_eq!(self.field, other.field, "vector arithmetic across fields");
        assert_eq!(self.dim(), other.dim(), "vector arithmetic across dimensions");
    }

    pub fn add(&self, other: &Vector) -> Vector {
        self.expect_same_shape(other);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Vector { field: self.field, entries }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        self.expect_same_shape(other);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        Vector { field: self.field, entries }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        let entries = self.entries.iter().map(|e| e.mul(c)).collect();
        Vector { field: self.field, entries }
    }

    pub fn neg(&self) -> Vector {
        Vector { field: self.field, entries: self.entries.iter().map(Scalar::neg).collect() }
    }

    /// The bilinear pairing `<self, other> = sum_i self_i * other_i`.
    ///
    /// This unweighted coordinate pairing is the duality used everywhere in
    /// the crate; functionals absorb any weights into their vector.
    pub fn dot(&self, other: &Vector) -> Result<Scalar> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        let mut acc = Scalar::zero(&self.field);
        for (a, b) in self.entries.iter().zip(&other.entries) {
            acc = acc.add(&a.mul(b));
        }
        Ok(acc)
    }

    /// Entries rendered in the scalar text syntax.
    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(Scalar::to_string).collect()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// A square k-by-k matrix over a single field, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: FieldSpec,
    k: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    /// Builds a matrix from `k * k` row-major entries.
    pub fn new(field: FieldSpec, k: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != k * k {
            return Err(Error::DimensionMismatch { expected: k * k, got: entries.len() });
        }
        for e in &entries {
            if e.field() != field {
                return Err(Error::FieldMismatch(field, e.field()));
            }
        }
        Ok(Matrix { field, k, entries })
    }

    /// Builds a matrix from rows of integers (rows must be square).
    pub fn from_integer_rows(field: &FieldSpec, rows: &[&[i64]]) -> Self {
        let k = rows.len();
        let mut entries = Vec::with_capacity(k * k);
        for row in rows {
            assert_eq!(row.len(), k, "integer rows must form a square matrix");
            for v in *row {
                entries.push(Scalar::from_integer(*v, field));
            }
        }
        Matrix { field: *field, k, entries }
    }

    /// Parses rows of scalar strings.
    pub fn from_string_rows(field: &FieldSpec, rows: &[Vec<String>]) -> Result<Self> {
        let k = rows.len();
        let mut entries = Vec::with_capacity(k * k);
        for row in rows {
            if row.len() != k {
                return Err(Error::DimensionMismatch { expected: k, got: row.len() });
            }
            for t in row {
                entries.push(Scalar::parse(t, field)?);
            }
        }
        Matrix::new(*field, k, entries)
    }

    /// Builds entry (i, j) from a closure.
    pub fn from_fn(field: &FieldSpec, k: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                entries.push(f(i, j));
            }
        }
        Matrix { field: *field, k, entries }
    }

    pub fn identity(field: &FieldSpec, k: usize) -> Self {
        Matrix::from_fn(field, k, |i, j| {
            if i == j { Scalar::one(field) } else { Scalar::zero(field) }
        })
    }

    pub fn zero(field: &FieldSpec, k: usize) -> Self {
        Matrix { field: *field, k, entries: vec![Scalar::zero(field); k * k] }
    }

    /// The matrix unit e_{ij} (1-indexed by convention in the doc comments,
    /// 0-indexed here).
    pub fn unit(field: &FieldSpec, k: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zero(field, k);
        m.entries[i * k + j] = Scalar::one(field);
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.k + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// True iff the matrix is a scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        let diag = self.entry(0, 0);
        for i in 0..self.k {
            for j in 0..self.k {
                let want_zero = i != j;
                let e = self.entry(i, j);
                if want_zero && !e.is_zero() {
                    return false;
                }
                if !want_zero && e != diag {
                    return false;
                }
            }
        }
        true
    }

    fn expect_same_shape(&self, other: &Matrix) {
        assert_eq!(self.field, other.field, "matrix arithmetic across fields");
        assert_eq!(self.k, other.k, "matrix arithmetic across sizes");
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.expect_same_shape(other);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Matrix { field: self.field, k: self.k, entries }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.expect_same_shape(other);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        Matrix { field: self.field, k: self.k, entries }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            k: self.k,
            entries: self.entries.iter().map(|e| e.mul(c)).collect(),
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.expect_same_shape(other);
        let k = self.k;
        Matrix::from_fn(&self.field, k, |i, j| {
            let mut acc = Scalar::zero(&self.field);
            for m in 0..k {
                acc = acc.add(&self.entry(i, m).mul(other.entry(m, j)));
            }
            acc
        })
    }

    /// Matrix-vector product `self * v` (v as a column).
    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.field, v.field(), "matrix-vector product across fields");
        assert_eq!(self.k, v.dim(), "matrix-vector product across dimensions");
        let entries = (0..self.k)
            .map(|i| {
                let mut acc = Scalar::zero(&self.field);
                for j in 0..self.k {
                    acc = acc.add(&self.entry(i, j).mul(v.entry(j)));
                }
                acc
            })
            .collect();
        Vector { field: self.field, entries }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.k, |i, j| self.entry(j, i).clone())
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = Scalar::zero(&self.field);
        for i in 0..self.k {
            acc = acc.add(self.entry(i, i));
        }
        acc
    }

    /// ad - bc, for 2x2 matrices only.
    pub fn determinant_2x2(&self) -> Result<Scalar> {
        if self.k != 2 {
            return Err(Error::WrongDimension(self.k));
        }
        let ad = self.entry(0, 0).mul(self.entry(1, 1));
        let bc = self.entry(0, 1).mul(self.entry(1, 0));
        Ok(ad.sub(&bc))
    }

    /// Exact inverse by Gauss-Jordan elimination; the result is verified by
    /// multiplying back to the identity.
    pub fn inverse(&self) -> Result<Matrix> {
        let k = self.k;
        let field = self.field;
        // Augmented rows [self | I].
        let mut rows: Vec<Vec<Scalar>> = (0..k)
            .map(|i| {
                let mut row: Vec<Scalar> =
                    (0..k).map(|j| self.entry(i, j).clone()).collect();
                for j in 0..k {
                    row.push(if i == j { Scalar::one(&field) } else { Scalar::zero(&field) });
                }
                row
            })
            .collect();
        for col in 0..k {
            let pivot = (col..k).find(|&r| !rows[r][col].is_zero()).ok_or(Error::Singular)?;
            rows.swap(col, pivot);
            let inv = rows[col][col].inv().expect("pivot is nonzero");
            for e in rows[col].iter_mut() {
                *e = e.mul(&inv);
            }
            for r in 0..k {
                if r != col && !rows[r][col].is_zero() {
                    let factor = rows[r][col].clone();
                    for j in 0..2 * k {
                        let delta = factor.mul(&rows[col][j]);
                        rows[r][j] = rows[r][j].sub(&delta);
                    }
                }
            }
        }
        let inv = Matrix::from_fn(&field, k, |i, j| rows[i][k + j].clone());
        assert!(
            self.mul(&inv) == Matrix::identity(&field, k),
            "inverse failed verification"
        );
        Ok(inv)
    }

    /// Integer matrix power.
    pub fn pow(&self, mut e: u32) -> Matrix {
        let mut acc = Matrix::identity(&self.field, self.k);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// True iff `self * other == other * self`.
    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Row-major flattening: entry (i, j) goes to coordinate `i * k + j`.
    pub fn vectorize(&self) -> Vector {
        Vector { field: self.field, entries: self.entries.clone() }
    }

    /// Inverse of [`Matrix::vectorize`].
    pub fn unvectorize(v: &Vector, k: usize) -> Result<Matrix> {
        if v.dim() != k * k {
            return Err(Error::DimensionMismatch { expected: k * k, got: v.dim() });
        }
        Matrix::new(v.field(), k, v.entries().to_vec())
    }

    /// Kronecker product (row-major convention): for vectorized X,
    /// `(A (x) B) vec(X) = vec(A X B^T)`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "kronecker across fields");
        let (ka, kb) = (self.k, other.k);
        Matrix::from_fn(&self.field, ka * kb, |i, j| {
            let (ia, ib) = (i / kb, i % kb);
            let (ja, jb) = (j / kb, j % kb);
            self.entry(ia, ja).mul(other.entry(ib, jb))
        })
    }

    /// Rows rendered in the scalar text syntax.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.k)
            .map(|i| (0..self.k).map(|j| self.entry(i, j).to_string()).collect())
            .collect()
    }

    /// A matrix with uniformly random entries (small fractions over Q).
    pub fn random<R: Rng>(field: &FieldSpec, k: usize, rng: &mut R) -> Matrix {
        Matrix::from_fn(field, k, |_, _| crate::field::random_scalar(field, rng))
    }

    /// A random invertible matrix, by rejection sampling.
    pub fn random_invertible<R: Rng>(field: &FieldSpec, k: usize, rng: &mut R) -> Matrix {
        loop {
            let m = Matrix::random(field, k, rng);
            if m.inverse().is_ok() {
                return m;
            }
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_string_rows()
            .into_iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Reduced row echelon form of a list of coefficient rows. Returns the
/// nonzero rows: pivots strictly increasing, pivot entries 1, pivot columns
/// otherwise zero.
fn reduce(field: &FieldSpec, width: usize, input: &[Vector]) -> Vec<Vector> {
    let mut rows: Vec<Vec<Scalar>> = input.iter().map(|v| v.entries().to_vec()).collect();
    let mut r = 0usize;
    for col in 0..width {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        for e in rows[r].iter_mut() {
            *e = e.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in 0..width {
                    let delta = factor.mul(&rows[r][j]);
                    rows[i][j] = rows[i][j].sub(&delta);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows.into_iter()
        .map(|entries| Vector { field: *field, entries })
        .collect()
}

/// A linear subspace of F^n held in canonical reduced-row-echelon form, so
/// that equality of subspaces is equality of representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// The span of `vectors` inside F^ambient_dim.
    pub fn span(field: &FieldSpec, ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        for v in vectors {
            if v.field() != *field {
                return Err(Error::FieldMismatch(*field, v.field()));
            }
            if v.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, got: v.dim() });
            }
        }
        let basis = reduce(field, ambient_dim, vectors);
        Ok(Subspace { field: *field, ambient_dim, basis })
    }

    /// The zero subspace.
    pub fn zero(field: &FieldSpec, ambient_dim: usize) -> Self {
        Subspace { field: *field, ambient_dim, basis: vec![] }
    }

    /// All of F^ambient_dim.
    pub fn full(field: &FieldSpec, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| Vector::standard_basis(field, ambient_dim, i))
            .collect();
        Subspace { field: *field, ambient_dim, basis }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The canonical echelon basis rows.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Pivot column of each basis row (strictly increasing).
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|b| b.leading_index().expect("canonical basis rows are nonzero"))
            .collect()
    }

    /// Residual of `v` after eliminating along the canonical basis; zero iff
    /// `v` is a member.
    pub fn reduce_vector(&self, v: &Vector) -> Result<Vector> {
        if v.field() != self.field {
            return Err(Error::FieldMismatch(self.field, v.field()));
        }
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: v.dim() });
        }
        let mut residual = v.clone();
        for b in &self.basis {
            let pivot = b.leading_index().expect("canonical basis rows are nonzero");
            let coeff = residual.entry(pivot).clone();
            if !coeff.is_zero() {
                residual = residual.sub(&b.scale(&coeff));
            }
        }
        Ok(residual)
    }

    /// Membership test.
    pub fn member(&self, v: &Vector) -> Result<bool> {
        Ok(self.reduce_vector(v)?.is_zero())
    }

    /// True iff `other` is contained in `self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        other
            .basis
            .iter()
            .all(|b| self.member(b).expect("compatible shapes"))
    }

    /// The smallest subspace containing both summands.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(&self.field, self.ambient_dim, &all)
    }

    /// The annihilator `{g : <v, g> = 0 for all v in self}` under the
    /// coordinate pairing.
    pub fn annihilator(&self) -> Subspace {
        solve_homogeneous(&self.field, self.ambient_dim, &self.basis)
            .expect("basis rows are valid constraints")
    }

    /// Rows of `larger`'s canonical basis whose pivots are not pivots of
    /// `self`; together with `self` they span `larger`. Requires
    /// `larger.contains(self)`.
    pub fn complement_rows_within(&self, larger: &Subspace) -> Vec<Vector> {
        debug_assert!(larger.contains(self), "complement requires containment");
        let own = self.pivots();
        larger
            .basis
            .iter()
            .filter(|b| {
                let p = b.leading_index().expect("canonical rows are nonzero");
                !own.contains(&p)
            })
            .cloned()
            .collect()
    }

    /// Number of elements (finite fields); saturates at `u128::MAX`.
    pub fn element_count(&self) -> Option<u128> {
        let p = self.field.order()? as u128;
        let mut total: u128 = 1;
        for _ in 0..self.dim() {
            total = total.checked_mul(p)?;
        }
        Some(total)
    }

    /// Iterates every element of the subspace (finite fields only), starting
    /// from zero, in the canonical odometer order of basis coefficients.
    pub fn elements(&self) -> Option<SubspaceElements<'_>> {
        let p = self.field.order()?;
        Some(SubspaceElements {
            space: self,
            p,
            digits: vec![0; self.dim()],
            current: Vector::zero(&self.field, self.ambient_dim),
            exhausted: false,
        })
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        write!(f, "span{{{}}} in F^{}", rows.join(", "), self.ambient_dim)
    }
}

/// Iterator over all elements of a subspace over GF(p).
///
/// Maintains coefficient digits odometer-style; each step adds one basis
/// vector to the running element (a wrap from p-1 to 0 is the same field
/// update, since p * b = 0).
pub struct SubspaceElements<'a> {
    space: &'a Subspace,
    p: u64,
    digits: Vec<u64>,
    current: Vector,
    exhausted: bool,
}

impl Iterator for SubspaceElements<'_> {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        if self.exhausted {
            return None;
        }
        let out = self.current.clone();
        // Advance the odometer (least significant digit last).
        let mut pos = self.digits.len();
        loop {
            if pos == 0 {
                self.exhausted = true;
                break;
            }
            pos -= 1;
            self.current = self.current.add(&self.space.basis[pos]);
            self.digits[pos] += 1;
            if self.digits[pos] < self.p {
                break;
            }
            self.digits[pos] = 0;
            // Wrapped: p * basis[pos] is already zero in the field, so the
            // `current` update above completed the wrap; carry on leftward.
        }
        Some(out)
    }
}

/// Solution space of the homogeneous system `{<c, x> = 0 for all c in
/// constraints}`.
pub fn solve_homogeneous(
    field: &FieldSpec,
    ambient_dim: usize,
    constraints: &[Vector],
) -> Result<Subspace> {
    for c in constraints {
        if c.field() != *field {
            return Err(Error::FieldMismatch(*field, c.field()));
        }
        if c.dim() != ambient_dim {
            return Err(Error::DimensionMismatch { expected: ambient_dim, got: c.dim() });
        }
    }
    let reduced = reduce(field, ambient_dim, constraints);
    let pivots: Vec<usize> = reduced
        .iter()
        .map(|r| r.leading_index().expect("reduced rows are nonzero"))
        .collect();
    let mut null_basis = Vec::new();
    for free in 0..ambient_dim {
        if pivots.contains(&free) {
            continue;
        }
        let mut entries = vec![Scalar::zero(field); ambient_dim];
        entries[free] = Scalar::one(field);
        for (row, &pivot) in reduced.iter().zip(&pivots) {
            entries[pivot] = row.entry(free).neg();
        }
        null_basis.push(Vector { field: *field, entries });
    }
    // Canonicalize: the free-variable basis is not in echelon form in
    // general.
    Subspace::span(field, ambient_dim, &null_basis)
}

/// Number of subspaces of GF(p)^dim (the Galois number), clamped to
/// `u128::MAX`. Used for budget checks before lattice enumerations.
pub fn count_subspaces(p: u64, dim: usize) -> u128 {
    use num::ToPrimitive;
    let p = BigInt::from(p);
    let mut total = BigInt::from(0);
    for j in 0..=dim {
        // Gaussian binomial [dim choose j]_p.
        let mut g = BigInt::from(1);
        for i in 0..j {
            let numer = pow_big(&p, dim - i) - 1;
            let denom = pow_big(&p, i + 1) - 1;
            g = g * numer / denom;
        }
        total += g;
    }
    total.to_u128().unwrap_or(u128::MAX)
}

fn pow_big(p: &BigInt, e: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for _ in 0..e {
        acc *= p;
    }
    acc
}

/// Every subspace of GF(p)^dim, enumerated once each via reduced-echelon
/// profiles (pivot-column sets plus free entries). Errors with
/// [`Error::BudgetExceeded`] if the Galois number exceeds `budget`, and
/// [`Error::FiniteFieldRequired`] over Q.
pub fn enumerate_subspaces(field: &FieldSpec, dim: usize, budget: u64) -> Result<Vec<Subspace>> {
    let p = field.order().ok_or(Error::FiniteFieldRequired)?;
    let total = count_subspaces(p, dim);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { required: total, budget });
    }
    let mut out = Vec::with_capacity(total as usize);
    for j in 0..=dim {
        // Pivot column choices: bitmask combinations in increasing mask
        // order, filtered to popcount j (dim is small in practice).
        for mask in 0u32..(1 << dim) {
            if mask.count_ones() as usize != j {
                continue;
            }
            let pivots: Vec<usize> = (0..dim).filter(|i| mask & (1 << i) != 0).collect();
            // Free positions: row r, column c with c > pivots[r] and c not a
            // pivot column.
            let mut free_positions = Vec::new();
            for (r, &pc) in pivots.iter().enumerate() {
                for c in (pc + 1)..dim {
                    if !pivots.contains(&c) {
                        free_positions.push((r, c));
                    }
                }
            }
            // Odometer over free entries.
            let mut digits = vec![0u64; free_positions.len()];
            loop {
                let mut rows = Vec::with_capacity(j);
                for (r, &pc) in pivots.iter().enumerate() {
                    let mut entries = vec![Scalar::zero(field); dim];
                    entries[pc] = Scalar::one(field);
                    for (d, &(fr, fc)) in digits.iter().zip(&free_positions) {
                        if fr == r {
                            entries[fc] = Scalar::Residue { value: *d, modulus: p };
                        }
                    }
                    rows.push(Vector { field: *field, entries });
                }
                out.push(Subspace { field: *field, ambient_dim: dim, basis: rows });
                // Advance.
                let mut pos = digits.len();
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] < p {
                        break;
                    }
                    digits[pos] = 0;
                }
                if digits.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
    }
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}
