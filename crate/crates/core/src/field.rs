//! Exact coefficient arithmetic: arbitrary-precision rationals and prime fields.
//!
//! Every computation in this crate is exact; there is no floating point
//! anywhere. The rationals are gcd-reduced `BigRational`s, prime fields use
//! plain modular arithmetic on `u64` residues with `p < 2^31` so that products
//! never overflow.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Runtime description of a coefficient field, as it appears in corpus files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Admits `p` only if it is a prime below `2^31`.
    pub fn prime_field(p: u64) -> Result<FieldSpec> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A computable field of scalars. The field is a value, not just a type, so
/// that prime fields can carry their modulus at runtime; all element
/// operations go through it.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse. Panics on zero; callers guard.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn from_int(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    /// `num/den` with `den > 0`. Fails over `F_p` when `p | den`.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;

    /// 0 for the rationals, `p` for `F_p`.
    fn characteristic(&self) -> u64;

    /// `(negative, magnitude_text)` for the canonical printer. Prime-field
    /// residues are never negative.
    fn display_parts(&self, a: &Self::Elem) -> (bool, String);
}

/// The field of arbitrary-precision rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
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
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::Syntax("zero denominator".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn display_parts(&self, a: &BigRational) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }
}

/// The prime field `F_p`, elements stored as reduced residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        FieldSpec::prime_field(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let mut r = n % &p;
        if r.sign() == num_bigint::Sign::Minus {
            r += &p;
        }
        // r ∈ [0, p), fits in u64
        let (_, digits) = r.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        // p < 2^31 keeps the product below 2^62
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        // extended Euclid on signed 128-bit, safe for p < 2^31
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (self.p as i128, *a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1, "modulus not prime?");
        ((t.rem_euclid(self.p as i128)) as u64) % self.p
    }
    fn from_int(&self, n: i64) -> u64 {
        let m = (n as i128).rem_euclid(self.p as i128);
        m as u64
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.reduce_bigint(n)
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        if den.is_zero() {
            return Err(Error::Syntax("zero denominator".into()));
        }
        let d = self.reduce_bigint(den);
        if d == 0 {
            return Err(Error::NonPrimeCharacteristicLiteral(format!(
                "{num}/{den} over F{}",
                self.p
            )));
        }
        Ok(self.mul(&self.reduce_bigint(num), &self.inv(&d)))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn display_parts(&self, a: &u64) -> (bool, String) {
        (false, a.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(91).is_err()); // 7 * 13
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(2147483647).is_ok()); // 2^31 - 1 is prime
    }

    #[test]
    fn modular_inverse_round_trips() {
        let f = PrimeField::new(10007).unwrap();
        for a in [1u64, 2, 3, 5000, 10006] {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn ratio_literal_over_f5() {
        // 3/2 over F_5: 2^{-1} = 3, so 3 * 3 = 9 = 4
        let f = PrimeField::new(5).unwrap();
        let v = f.from_ratio(&BigInt::from(3), &BigInt::from(2)).unwrap();
        assert_eq!(v, 4);
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(10)).is_err());
    }

    #[test]
    fn rational_display_splits_sign() {
        let q = Rationals;
        let v = q.from_ratio(&BigInt::from(-3), &BigInt::from(2)).unwrap();
        assert_eq!(q.display_parts(&v), (true, "3/2".to_string()));
    }
}
