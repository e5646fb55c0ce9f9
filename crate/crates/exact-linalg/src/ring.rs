//! Coefficient rings for exact linear algebra.
//!
//! Every ring here is a Euclidean domain presented through one trait so the
//! matrix and module code can stay generic: the rationals, the integers, and
//! prime fields `F_p`. Fields count as Euclidean domains whose division never
//! leaves a remainder, which lets one Smith-normal-form routine serve all
//! three. No floating point is involved anywhere; equality of elements is
//! exact equality.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::LinalgError;
use crate::rng::SplitMix64;

/// Tag identifying which coefficient ring a piece of serialized data uses.
///
/// The string forms are `"q"`, `"z"` and `"fp:P"` (for example `"fp:5"`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    Rationals,
    Integers,
    PrimeField(u64),
}

impl RingKind {
    pub fn parse(s: &str) -> Result<Self, LinalgError> {
        match s {
            "q" => Ok(RingKind::Rationals),
            "z" => Ok(RingKind::Integers),
            _ => {
                if let Some(p) = s.strip_prefix("fp:") {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| LinalgError::BadRingTag(s.to_string()))?;
                    if !is_prime_u64(p) {
                        return Err(LinalgError::NotPrime(p));
                    }
                    Ok(RingKind::PrimeField(p))
                } else {
                    Err(LinalgError::BadRingTag(s.to_string()))
                }
            }
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Rationals => write!(f, "q"),
            RingKind::Integers => write!(f, "z"),
            RingKind::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

/// A commutative Euclidean domain with decidable equality and exact division.
///
/// The ring is a value (not just a type) so that `F_p` can carry its modulus.
/// All arithmetic goes through the ring value; elements are plain data.
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn kind(&self) -> RingKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// Inverse of a unit. Panics if `a` is not a unit (internal misuse).
    fn unit_inv(&self, a: &Self::Elem) -> Self::Elem;

    /// Euclidean division `a = q*b + r` with `b != 0`.
    ///
    /// Over the integers `0 <= r < |b|`; over a field `r = 0`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Whether `d` divides `a` (with `0 | a` iff `a = 0`).
    fn divides(&self, d: &Self::Elem, a: &Self::Elem) -> bool {
        if self.is_zero(d) {
            return self.is_zero(a);
        }
        let (_, r) = self.div_rem(a, d);
        self.is_zero(&r)
    }

    /// `a / d` when `d` divides `a` exactly, `None` otherwise.
    fn exact_div(&self, a: &Self::Elem, d: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(d) {
            return if self.is_zero(a) { Some(self.zero()) } else { None };
        }
        let (q, r) = self.div_rem(a, d);
        if self.is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }

    /// Extended gcd: `(g, x, y)` with `g = x·a + y·b` and `g` the canonical
    /// associate of `gcd(a, b)` (so `g = 1` over a field when either input
    /// is nonzero). The Bézout pair is what lets elimination replace a whole
    /// quotient-remainder cascade by a single 2×2 unimodular transform.
    fn ext_gcd(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut x0, mut x1) = (self.one(), self.zero());
        let (mut y0, mut y1) = (self.zero(), self.one());
        while !self.is_zero(&r1) {
            let (q, r) = self.div_rem(&r0, &r1);
            let x = self.sub(&x0, &self.mul(&q, &x1));
            let y = self.sub(&y0, &self.mul(&q, &y1));
            r0 = std::mem::replace(&mut r1, r);
            x0 = std::mem::replace(&mut x1, x);
            y0 = std::mem::replace(&mut y1, y);
        }
        let u = self.canonicalizing_unit(&r0);
        (self.mul(&u, &r0), self.mul(&u, &x0), self.mul(&u, &y0))
    }

    /// The unit `u` such that `u * a` is the canonical associate of `a`:
    /// `|a|` over the integers, `1` over a field (and `1` for `a = 0`).
    fn canonicalizing_unit(&self, a: &Self::Elem) -> Self::Elem;

    /// Compare Euclidean size for pivot selection. Over the integers this is
    /// the absolute-value order; over a field all nonzero elements tie.
    /// Only called on nonzero elements.
    fn pivot_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    fn is_field(&self) -> bool;

    /// Render an element in the decimal-string form used by the file formats
    /// (`"3"`, `"-1/2"`, ...).
    fn format(&self, a: &Self::Elem) -> String;

    /// Parse the decimal-string form. Rational entries accept `a/b`; integer
    /// and prime-field entries are plain (optionally signed) integers.
    fn parse(&self, s: &str) -> Result<Self::Elem, LinalgError>;

    /// A small random element for randomized searches (exact, never float).
    fn sample(&self, rng: &mut SplitMix64) -> Self::Elem;
}

/// The field of rational numbers with arbitrary-precision arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> RingKind {
        RingKind::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn unit_inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        assert!(!b.is_zero(), "division by zero");
        (a / b, BigRational::zero())
    }
    fn canonicalizing_unit(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::one()
        } else {
            a.recip()
        }
    }
    fn pivot_cmp(&self, _a: &BigRational, _b: &BigRational) -> Ordering {
        Ordering::Equal
    }
    fn is_field(&self) -> bool {
        true
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigRational, LinalgError> {
        s.parse::<BigRational>()
            .map_err(|_| LinalgError::BadEntry {
                entry: s.to_string(),
                ring: self.kind().to_string(),
            })
    }
    fn sample(&self, rng: &mut SplitMix64) -> BigRational {
        // Small integers with an occasional half; keeps Smith pivots tame.
        let n = rng.below(9) as i64 - 4;
        if rng.below(8) == 0 {
            BigRational::new(BigInt::from(n), BigInt::from(2))
        } else {
            self.from_i64(n)
        }
    }
}

/// The ring of integers with arbitrary-precision arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn kind(&self) -> RingKind {
        RingKind::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn unit_inv(&self, a: &BigInt) -> BigInt {
        assert!(self.is_unit(a), "inverse of non-unit integer {a}");
        a.clone()
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        assert!(!b.is_zero(), "division by zero");
        // Euclidean division: remainder in [0, |b|).
        let (mut q, mut r) = a.div_rem(b);
        if r.is_negative() {
            if b.is_positive() {
                q -= 1;
                r += b;
            } else {
                q += 1;
                r -= b;
            }
        }
        (q, r)
    }
    fn canonicalizing_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            BigInt::from(-1)
        } else {
            BigInt::one()
        }
    }
    fn pivot_cmp(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.abs().cmp(&b.abs())
    }
    fn is_field(&self) -> bool {
        false
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt, LinalgError> {
        s.parse::<BigInt>().map_err(|_| LinalgError::BadEntry {
            entry: s.to_string(),
            ring: self.kind().to_string(),
        })
    }
    fn sample(&self, rng: &mut SplitMix64) -> BigInt {
        BigInt::from(rng.below(7) as i64 - 3)
    }
}

/// The prime field `F_p`, elements stored as canonical residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Build `F_p`, rejecting composite or out-of-range moduli.
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if !is_prime_u64(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, n: i128) -> u64 {
        let p = self.p as i128;
        (n.rem_euclid(p)) as u64
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn kind(&self) -> RingKind {
        RingKind::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i128(n as i128)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn unit_inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        // Fermat: a^(p-2) mod p.
        pow_mod(*a, self.p - 2, self.p)
    }
    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        assert!(*b != 0, "division by zero");
        (self.mul(a, &self.unit_inv(b)), 0)
    }
    fn canonicalizing_unit(&self, a: &u64) -> u64 {
        if *a == 0 {
            self.one()
        } else {
            self.unit_inv(a)
        }
    }
    fn pivot_cmp(&self, _a: &u64, _b: &u64) -> Ordering {
        Ordering::Equal
    }
    fn is_field(&self) -> bool {
        true
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, LinalgError> {
        let n = s.parse::<i128>().map_err(|_| LinalgError::BadEntry {
            entry: s.to_string(),
            ring: self.kind().to_string(),
        })?;
        Ok(self.reduce_i128(n))
    }
    fn sample(&self, rng: &mut SplitMix64) -> u64 {
        // Small representatives, signed, so maps look like their Q/Z cousins.
        self.from_i64(rng.below(7) as i64 - 3)
    }
}

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

/// Deterministic Miller–Rabin, exact for all `u64` inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set decides primality for every 64-bit integer.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_remainder_is_nonnegative_over_z() {
        let z = Integers;
        for a in -12i64..=12 {
            for b in [-5i64, -2, 2, 3, 7] {
                let (q, r) = z.div_rem(&BigInt::from(a), &BigInt::from(b));
                assert_eq!(q * b + &r, BigInt::from(a));
                assert!(r >= BigInt::zero() && r < BigInt::from(b).abs());
            }
        }
    }

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(5).unwrap();
        for a in 1..5u64 {
            assert_eq!(f.mul(&a, &f.unit_inv(&a)), 1);
        }
        assert!(PrimeField::new(6).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn primality_matches_trial_division_up_to_10000() {
        let trial = |n: u64| -> bool {
            if n < 2 {
                return false;
            }
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    return false;
                }
                d += 1;
            }
            true
        };
        for n in 0..10_000u64 {
            assert_eq!(is_prime_u64(n), trial(n), "disagree at {n}");
        }
    }

    #[test]
    fn rational_round_trip_normalizes() {
        let q = Rationals;
        let x = q.parse("2/4").unwrap();
        assert_eq!(q.format(&x), "1/2");
        let y = q.parse("-6/3").unwrap();
        assert_eq!(q.format(&y), "-2");
        assert!(q.parse("1.5").is_err());
    }

    #[test]
    fn ring_tags_round_trip() {
        for s in ["q", "z", "fp:5", "fp:97"] {
            assert_eq!(RingKind::parse(s).unwrap().to_string(), s);
        }
        assert!(RingKind::parse("fp:4").is_err());
        assert!(RingKind::parse("r").is_err());
    }
}
