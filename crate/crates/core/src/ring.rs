//! Coefficient domains.
//!
//! Rings are explicit context objects: every operation goes through the
//! context, so finite fields (whose elements need a modulus) and the integers
//! share one generic polynomial and sequence layer.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{Poly, PolyRing};

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Exact division: `Some(q)` with `q * b == a`, or `None` when no such `q` exists.
    fn try_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Characteristic of the ring, `0` for characteristic zero.
    fn characteristic(&self) -> u64;

    /// Human-readable rendering of an element.
    fn render(&self, a: &Self::Elem) -> String;

    /// Rough storage size of an element in bits, used by growth guards.
    fn size_bits(&self, _a: &Self::Elem) -> u64 {
        0
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `(-1)^e`.
    fn sign_pow(&self, e: u64) -> Self::Elem {
        if e % 2 == 0 {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }
}

/// A field. Provides inversion plus hooks that let domains override the
/// generic polynomial gcd with something better suited to their growth.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Monic gcd of two polynomials, not both zero.
    fn poly_gcd(ring: &PolyRing<Self>, a: &Poly<Self::Elem>, b: &Poly<Self::Elem>) -> Poly<Self::Elem>
    where
        Self: Sized,
    {
        ring.euclid_gcd(a, b)
    }

    /// Whether `a` and `b` are coprime.
    fn poly_coprime(ring: &PolyRing<Self>, a: &Poly<Self::Elem>, b: &Poly<Self::Elem>) -> bool
    where
        Self: Sized,
    {
        Self::poly_gcd(ring, a, b).degree() == Some(0)
    }
}

/// The integers `Z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn pow(&self, a: &BigInt, e: u64) -> BigInt {
        num_traits::Pow::pow(a, e)
    }
    fn try_div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn size_bits(&self, a: &BigInt) -> u64 {
        a.bits()
    }
}

/// The rationals `Q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn try_div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn size_bits(&self, a: &BigRational) -> u64 {
        a.numer().bits() + a.denom().bits()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn poly_gcd(ring: &PolyRing<Self>, a: &Poly<BigRational>, b: &Poly<BigRational>) -> Poly<BigRational> {
        crate::polyring::rational_gcd(ring, a, b)
    }

    fn poly_coprime(ring: &PolyRing<Self>, a: &Poly<BigRational>, b: &Poly<BigRational>) -> bool {
        if crate::polyring::rational_coprime_mod_p(a, b) {
            return true;
        }
        Self::poly_gcd(ring, a, b).degree() == Some(0)
    }
}
