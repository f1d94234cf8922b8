//! Exact scalar arithmetic over the rationals and over prime fields GF(p).
//!
//! Every computation in this crate is exact: rationals are arbitrary-precision
//! reduced fractions, prime-field elements are canonical residues in `[0, p)`.
//! There is no floating point anywhere, so subspace comparisons made from
//! these scalars are syntactic equalities of canonical forms.
//!
//! Supported moduli are primes `2 <= p < 2^31`; products of two residues then
//! fit in a `u64` without overflow.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported prime modulus (exclusive bound).
pub const MAX_PRIME: u64 = 1 << 31;

/// Below this bound, square roots and quadratic roots over GF(p) are found by
/// exhaustive scan; above it the Euler criterion and Tonelli–Shanks take over.
/// The scan is what keeps characteristic 2 correct, where the discriminant
/// test degenerates.
const EXHAUSTIVE_SCAN_BOUND: u64 = 10_000;

/// The coefficient field: the rationals, or a prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    /// The field of rational numbers.
    Rationals,
    /// The prime field GF(p). The modulus is validated at construction.
    PrimeField(u64),
}

impl FieldSpec {
    /// The rational field Q.
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// GF(p) for a prime `2 <= p < 2^31`.
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..MAX_PRIME).contains(&p) {
            return Err(Error::PrimeOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    /// Characteristic of the field: 0 for Q, p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(*p),
        }
    }

    /// True for GF(p).
    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::PrimeField(_))
    }

    /// All field elements in canonical order, for finite fields.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar> + '_> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => {
                let p = *p;
                Some((0..p).map(move |v| Scalar::Residue { value: v, modulus: p }))
            }
        }
    }

    /// Parses `"Q"` or `"GF(p)"`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(inner) = t.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')) {
            let p: u64 = inner
                .trim()
                .parse()
                .map_err(|_| Error::ParseField(text.to_string()))?;
            return FieldSpec::prime(p);
        }
        Err(Error::ParseField(text.to_string()))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element.
///
/// Residues carry their modulus so that mixed-field arithmetic can be
/// detected; containers ([`crate::linalg::Vector`], [`crate::linalg::Matrix`])
/// enforce a single field at construction, after which the panicking operator
/// impls are safe to use internally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// An arbitrary-precision reduced fraction.
    Rational(BigRational),
    /// A canonical residue `value` in `[0, modulus)`.
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    /// Additive identity of `field`.
    pub fn zero(field: &FieldSpec) -> Self {
        Scalar::from_integer(0, field)
    }

    /// Multiplicative identity of `field`.
    pub fn one(field: &FieldSpec) -> Self {
        Scalar::from_integer(1, field)
    }

    /// Embeds a signed integer into `field`.
    pub fn from_integer(n: i64, field: &FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let p_i = *p as i128;
                let v = ((n as i128 % p_i) + p_i) % p_i;
                Scalar::Residue { value: v as u64, modulus: *p }
            }
        }
    }

    /// The element 1/2 when the characteristic is not 2.
    pub fn half(field: &FieldSpec) -> Option<Self> {
        match field {
            FieldSpec::Rationals => Some(Scalar::Rational(BigRational::new(
                BigInt::from(1),
                BigInt::from(2),
            ))),
            FieldSpec::PrimeField(2) => None,
            FieldSpec::PrimeField(_) => {
                let two = Scalar::from_integer(2, field);
                Some(two.inv().expect("2 is a unit when p is odd"))
            }
        }
    }

    /// The field this scalar lives in.
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    /// True iff this is the zero element.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    /// True iff this is the one element.
    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn expect_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across fields: {} vs {}",
            self.field(),
            other.field()
        );
    }

    /// Sum. Panics on mismatched fields; use [`arith`] at trust boundaries.
    pub fn add(&self, other: &Scalar) -> Scalar {
        self.expect_same_field(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: (a + b) % p, modulus: *p }
            }
            _ => unreachable!(),
        }
    }

    /// Difference. Panics on mismatched fields.
    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.expect_same_field(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: (a + p - b) % p, modulus: *p }
            }
            _ => unreachable!(),
        }
    }

    /// Product. Panics on mismatched fields.
    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.expect_same_field(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                // a, b < 2^31, so the product fits in a u64.
                Scalar::Residue { value: (a * b) % p, modulus: *p }
            }
            _ => unreachable!(),
        }
    }

    /// Additive inverse.
    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Residue { value, modulus } => {
                // Fermat: a^(p-2) inverts a in GF(p).
                Scalar::Residue { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    /// Quotient; errors on division by zero. Panics on mismatched fields.
    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.expect_same_field(other);
        Ok(self.mul(&other.inv()?))
    }

    /// Parses a scalar in the textual syntax of `field`: `"n"` or `"n/d"`
    /// (optional leading minus) over Q, a decimal residue over GF(p).
    pub fn parse(text: &str, field: &FieldSpec) -> Result<Self> {
        let t = text.trim();
        let err = || Error::ParseScalar { text: text.to_string(), field: *field };
        match field {
            FieldSpec::Rationals => {
                let (numer_text, denom_text) = match t.split_once('/') {
                    Some((n, d)) => (n.trim(), Some(d.trim())),
                    None => (t, None),
                };
                let numer: BigInt = numer_text.parse().map_err(|_| err())?;
                let denom: BigInt = match denom_text {
                    Some(d) => d.parse().map_err(|_| err())?,
                    None => BigInt::one(),
                };
                if denom.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(numer, denom)))
            }
            FieldSpec::PrimeField(_) => {
                let v: i64 = t.parse().map_err(|_| err())?;
                Ok(Scalar::from_integer(v, field))
            }
        }
    }

    /// Canonical ordering key used to sort roots and enumeration output.
    fn order_key(&self) -> (u8, Option<&BigRational>, u64) {
        match self {
            Scalar::Rational(r) => (0, Some(r), 0),
            Scalar::Residue { value, .. } => (1, None, *value),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // Ratio prints "n" when the denominator is 1, "n/d" otherwise.
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        let (ta, ra, va) = self.order_key();
        let (tb, rb, vb) = other.order_key();
        ta.cmp(&tb).then_with(|| ra.cmp(&rb)).then_with(|| va.cmp(&vb))
    }
}

/// The four field operations, for the checked entry point [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic: validates that both operands share a field before
/// computing, so it can be driven by unvalidated input.
pub fn arith(a: &Scalar, op: ArithOp, b: &Scalar) -> Result<Scalar> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b)?,
    })
}

/// A square root of `s`, if one exists in the field of `s`.
///
/// Over Q the answer is sign-aware and exact: `n/d` (reduced) is a square iff
/// `n >= 0` and both `n` and `d` are perfect squares. Over GF(p) small fields
/// are scanned; larger ones use the Euler criterion plus Tonelli–Shanks. The
/// returned root is canonical (non-negative over Q, the smaller residue over
/// GF(p)).
pub fn is_square(s: &Scalar) -> Option<Scalar> {
    match s {
        Scalar::Rational(r) => {
            if r.is_negative() {
                return None;
            }
            let numer_root = perfect_sqrt(r.numer())?;
            let denom_root = perfect_sqrt(r.denom())?;
            Some(Scalar::Rational(BigRational::new(numer_root, denom_root)))
        }
        Scalar::Residue { value, modulus } => {
            let p = *modulus;
            if *value == 0 {
                return Some(Scalar::Residue { value: 0, modulus: p });
            }
            if p == 2 {
                // Squaring is the identity on GF(2).
                return Some(s.clone());
            }
            if p <= EXHAUSTIVE_SCAN_BOUND {
                for r in 0..p {
                    if (r * r) % p == *value {
                        return Some(Scalar::Residue { value: r.min(p - r), modulus: p });
                    }
                }
                return None;
            }
            // Euler criterion: nonzero s is a square iff s^((p-1)/2) = 1.
            if pow_mod(*value, (p - 1) / 2, p) != 1 {
                return None;
            }
            let r = tonelli_shanks(*value, p);
            debug_assert_eq!((r as u128 * r as u128 % p as u128) as u64, *value);
            Some(Scalar::Residue { value: r.min(p - r), modulus: p })
        }
    }
}

/// The roots of the monic quadratic `x^2 + b x + c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRoots {
    /// Distinct roots in canonical order (0, 1 or 2 of them; a double root
    /// appears once).
    pub roots: Vec<Scalar>,
    /// True iff the polynomial has a repeated root.
    pub repeated: bool,
}

/// Solves `x^2 + b x + c = 0` exactly over the common field of `b` and `c`.
///
/// Over GF(p) with small p the roots are found by exhaustive evaluation,
/// which stays correct in characteristic 2 where the discriminant test fails;
/// everywhere else the discriminant and [`is_square`] decide.
pub fn quadratic_roots(b: &Scalar, c: &Scalar) -> Result<QuadraticRoots> {
    if b.field() != c.field() {
        return Err(Error::FieldMismatch(b.field(), c.field()));
    }
    let field = b.field();
    if let FieldSpec::PrimeField(p) = field {
        if p <= EXHAUSTIVE_SCAN_BOUND {
            for r in 0..p {
                let root = Scalar::Residue { value: r, modulus: p };
                if root.mul(&root).add(&b.mul(&root)).add(c).is_zero() {
                    // Monic quadratic: the other root is -b - r by Vieta.
                    let other = b.neg().sub(&root);
                    return Ok(collect_roots(root, other));
                }
            }
            return Ok(QuadraticRoots { roots: vec![], repeated: false });
        }
    }
    // Characteristic 0 or an odd prime: the discriminant decides.
    let four = Scalar::from_integer(4, &field);
    let disc = b.mul(b).sub(&four.mul(c));
    match is_square(&disc) {
        None => Ok(QuadraticRoots { roots: vec![], repeated: false }),
        Some(root_of_disc) => {
            let two_inv = Scalar::from_integer(2, &field).inv()?;
            let r1 = b.neg().add(&root_of_disc).mul(&two_inv);
            let r2 = b.neg().sub(&root_of_disc).mul(&two_inv);
            Ok(collect_roots(r1, r2))
        }
    }
}

fn collect_roots(r1: Scalar, r2: Scalar) -> QuadraticRoots {
    if r1 == r2 {
        QuadraticRoots { roots: vec![r1], repeated: true }
    } else {
        let mut roots = vec![r1, r2];
        roots.sort();
        QuadraticRoots { roots, repeated: false }
    }
}

/// A pseudo-random scalar: uniform over GF(p), a small fraction over Q.
/// Used for seeded probing; determinism comes from the caller's RNG.
pub fn random_scalar<R: Rng>(field: &FieldSpec, rng: &mut R) -> Scalar {
    match field {
        FieldSpec::Rationals => {
            let numer = rng.gen_range(-4i64..=4);
            let denom = rng.gen_range(1i64..=3);
            Scalar::Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
        }
        FieldSpec::PrimeField(p) => {
            Scalar::Residue { value: rng.gen_range(0..*p), modulus: *p }
        }
    }
}

/// Exact integer square root if `n` is a perfect square.
fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Deterministic trial-division primality for `n < 2^31`.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Modular exponentiation with u128 intermediates.
fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Tonelli–Shanks square root for an odd prime `p` and quadratic residue `n`.
fn tonelli_shanks(n: u64, p: u64) -> u64 {
    debug_assert!(p > 2 && n % p != 0);
    if p % 4 == 3 {
        return pow_mod(n, (p + 1) / 4, p);
    }
    // Write p - 1 = q * 2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    // Find a quadratic non-residue z.
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) == 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, (q + 1) / 2, p);
    while t != 1 {
        // Least i with t^(2^i) = 1.
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = ((t2 as u128 * t2 as u128) % p as u128) as u64;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = ((b as u128 * b as u128) % p as u128) as u64;
        t = ((t as u128 * c as u128) % p as u128) as u64;
        r = ((r as u128 * b as u128) % p as u128) as u64;
    }
    r
}
