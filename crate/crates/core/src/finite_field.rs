//! Arithmetic in `F_p` and `F_{p^k} = F_p[z]/(m(z))`.
//!
//! Elements are coefficient vectors of length `k` over `F_p`, least
//! significant first. Moduli are validated irreducible with Rabin's test.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{invalid, Error, Result};
use crate::irreducibility::rabin_irreducible;
use crate::polyring::PolyRing;
use crate::ring::{Field, Ring};
use crate::scalars::{divisors, is_prime, mul_mod, pow_mod, prime_divisors};

/// An element of a finite field: `k` residues modulo `p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(SmallVec<[u64; 4]>);

impl FieldElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    /// The residue of a prime-field element (the constant coefficient in general).
    pub fn residue(&self) -> u64 {
        self.0[0]
    }

    /// Whether all non-constant coefficients vanish.
    pub fn in_prime_field(&self) -> bool {
        self.0[1..].iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{:?}", self.0.as_slice())
        }
    }
}

// Prime-field elements serialize as plain integers, extension elements as coefficient lists.
impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.len() == 1 {
            s.serialize_u64(self.0[0])
        } else {
            self.0.as_slice().serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Scalar(u64),
            Vector(Vec<u64>),
        }
        Ok(match Repr::deserialize(d)? {
            Repr::Scalar(v) => FieldElem(SmallVec::from_slice(&[v])),
            Repr::Vector(v) => FieldElem(SmallVec::from_vec(v)),
        })
    }
}

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    p: u64,
    /// Monic modulus of degree `k`, least significant first; `[0, 1]` for prime fields.
    modulus: Vec<u64>,
    q: u128,
}

/// A validated finite field `F_q`, `q = p^k`. Cheap to clone.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField(Arc<Inner>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "F_{}", self.p())
        } else {
            write!(f, "F_{}^{}[{:?}]", self.p(), self.degree(), self.0.modulus)
        }
    }
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        Ok(Self(Arc::new(Inner { p, modulus: vec![0, 1], q: p as u128 })))
    }

    /// `F_p[z]/(modulus)`; the modulus must be monic and irreducible over `F_p`.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Self> {
        let base = Self::prime(p)?;
        let modulus: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        let k = modulus.len().saturating_sub(1);
        if k == 0 || modulus[k] != 1 {
            return invalid("extension modulus must be monic of degree >= 1");
        }
        if k == 1 {
            return Ok(base);
        }
        let ring = PolyRing::new(base.clone());
        let f = ring.from_coeffs(modulus.iter().map(|&c| base.from_u64(c)).collect());
        if !rabin_irreducible(&ring, &f) {
            return invalid(format!("modulus {modulus:?} is reducible over F_{p}"));
        }
        let q = (p as u128)
            .checked_pow(k as u32)
            .filter(|q| q.checked_mul(*q).is_some())
            .ok_or_else(|| Error::InvalidInput(format!("field size {p}^{k} too large")))?;
        Ok(Self(Arc::new(Inner { p, modulus, q })))
    }

    /// `F_{p^k}` with a deterministically chosen modulus: the first irreducible
    /// binomial `z^k - a` (a = 1, 2, ...), else the first irreducible monic in
    /// lexicographic order of coefficients.
    pub fn with_degree(p: u64, k: usize) -> Result<Self> {
        let base = Self::prime(p)?;
        if k == 0 {
            return invalid("extension degree must be >= 1");
        }
        if k == 1 {
            return Ok(base);
        }
        let ring = PolyRing::new(base.clone());
        let is_irred = |coeffs: &[u64]| {
            let f = ring.from_coeffs(coeffs.iter().map(|&c| base.from_u64(c)).collect());
            rabin_irreducible(&ring, &f)
        };
        for a in 1..p {
            let mut m = vec![0u64; k + 1];
            m[0] = p - a;
            m[k] = 1;
            if is_irred(&m) {
                return Self::extension(p, &m);
            }
        }
        let mut m = vec![0u64; k + 1];
        m[k] = 1;
        loop {
            // increment the low k coefficients as a base-p counter
            let mut i = 0;
            while i < k {
                m[i] += 1;
                if m[i] < p {
                    break;
                }
                m[i] = 0;
                i += 1;
            }
            if i == k {
                return invalid(format!("no irreducible polynomial of degree {k} over F_{p}"));
            }
            if is_irred(&m) {
                return Self::extension(p, &m);
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Extension degree `k` over the prime field.
    pub fn degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Field size `q = p^k`.
    pub fn q(&self) -> u128 {
        self.0.q
    }

    /// The prime subfield `F_p`.
    pub fn prime_subfield(&self) -> FiniteField {
        Self::prime(self.p()).expect("validated prime")
    }

    pub fn from_u64(&self, v: u64) -> FieldElem {
        let mut c = SmallVec::from_elem(0, self.degree());
        c[0] = v % self.p();
        FieldElem(c)
    }

    /// Element from a coefficient list (missing high coefficients are zero).
    pub fn elem(&self, coeffs: &[u64]) -> Result<FieldElem> {
        let k = self.degree();
        if coeffs.len() > k {
            return invalid(format!("{} coefficients given for a degree-{k} field", coeffs.len()));
        }
        let mut c = SmallVec::from_elem(0, k);
        for (slot, v) in c.iter_mut().zip(coeffs) {
            *slot = v % self.p();
        }
        Ok(FieldElem(c))
    }

    /// The class of `z` in `F_p[z]/(m)`.
    pub fn generator(&self) -> FieldElem {
        if self.degree() == 1 {
            // F_p[z]/(z): z ≡ 0
            return self.from_u64(0);
        }
        let mut c = SmallVec::from_elem(0, self.degree());
        c[1] = 1;
        FieldElem(c)
    }

    /// The element with base-`p` digit expansion `index` (0 ≤ index < q).
    pub fn elem_from_index(&self, mut index: u128) -> FieldElem {
        let p = self.p() as u128;
        let mut c = SmallVec::from_elem(0, self.degree());
        for slot in c.iter_mut() {
            *slot = (index % p) as u64;
            index /= p;
        }
        FieldElem(c)
    }

    /// Every element, in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q()).map(move |i| self.elem_from_index(i))
    }

    /// Every nonzero element, in index order.
    pub fn units(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (1..self.q()).map(move |i| self.elem_from_index(i))
    }

    fn check(&self, a: &FieldElem) -> bool {
        a.0.len() == self.degree()
    }

    pub fn contains(&self, a: &FieldElem) -> bool {
        self.check(a) && a.0.iter().all(|&c| c < self.p())
    }

    fn reduce_product(&self, prod: &mut Vec<u64>) {
        let p = self.p();
        let k = self.degree();
        let m = &self.0.modulus;
        for i in (k..prod.len()).rev() {
            let lead = prod[i];
            if lead == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let sub = mul_mod(lead, m[j], p);
                let slot = &mut prod[i - k + j];
                *slot = (*slot + p - sub) % p;
            }
        }
        prod.truncate(k);
    }

    pub fn pow_u128(&self, a: &FieldElem, mut e: u128) -> FieldElem {
        if self.degree() == 1 {
            let p = self.p();
            if a.0[0] == 0 {
                return self.from_u64(u64::from(e == 0));
            }
            return self.from_u64(pow_mod(a.0[0], (e % (p as u128 - 1)) as u64, p));
        }
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

    /// Square-and-multiply with an arbitrary-precision exponent.
    pub fn pow_big(&self, a: &FieldElem, e: &BigUint) -> FieldElem {
        if let Some(small) = e.to_u128() {
            return self.pow_u128(a, small);
        }
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The Frobenius automorphism `a ↦ a^p`.
    pub fn frobenius(&self, a: &FieldElem) -> FieldElem {
        self.pow_u128(a, self.p() as u128)
    }

    /// Whether `alpha` is `m`-free: no prime `ℓ | m` has `alpha` as an `ℓ`-th power,
    /// tested as `alpha^((q-1)/ℓ) ≠ 1`.
    pub fn is_m_free(&self, alpha: &FieldElem, m: u64) -> Result<bool> {
        if m == 0 || (self.q() - 1) % m as u128 != 0 {
            return invalid(format!("m = {m} does not divide q - 1 = {}", self.q() - 1));
        }
        if self.is_zero(alpha) {
            return invalid("0 is not in F_q^*");
        }
        let one = self.one();
        Ok(prime_divisors(m)
            .into_iter()
            .all(|l| self.pow_u128(alpha, (self.q() - 1) / l as u128) != one))
    }

    /// The quantifier form of `m`-freeness: `alpha = beta^e` with `e | m` forces `e = 1`.
    /// Enumerates the whole field; meant as an oracle at small `q`.
    pub fn is_m_free_brute(&self, alpha: &FieldElem, m: u64) -> Result<bool> {
        if m == 0 || (self.q() - 1) % m as u128 != 0 {
            return invalid(format!("m = {m} does not divide q - 1 = {}", self.q() - 1));
        }
        if self.is_zero(alpha) {
            return invalid("0 is not in F_q^*");
        }
        for e in divisors(m).into_iter().filter(|&e| e > 1) {
            if self.units().any(|beta| self.pow_u128(&beta, e as u128) == *alpha) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Norm to the prime subfield, `alpha^((q-1)/(p-1))`.
    pub fn ext_norm(&self, alpha: &FieldElem) -> Result<FieldElem> {
        if !self.contains(alpha) {
            return Err(Error::ContextMismatch);
        }
        let p = self.p() as u128;
        let exp = (self.q() - 1) / (p - 1);
        let n = self.pow_u128(alpha, exp);
        assert!(n.in_prime_field(), "norm left the prime field: {n:?}");
        Ok(self.prime_subfield().from_u64(n.residue()))
    }

    /// Norm as the product of the Frobenius conjugates `alpha^(p^i)`, `i < k`.
    pub fn ext_norm_frobenius(&self, alpha: &FieldElem) -> Result<FieldElem> {
        if !self.contains(alpha) {
            return Err(Error::ContextMismatch);
        }
        let mut conj = alpha.clone();
        let mut acc = alpha.clone();
        for _ in 1..self.degree() {
            conj = self.frobenius(&conj);
            acc = self.mul(&acc, &conj);
        }
        assert!(acc.in_prime_field(), "norm left the prime field: {acc:?}");
        Ok(self.prime_subfield().from_u64(acc.residue()))
    }

    /// Embed a prime-field element.
    pub fn embed(&self, a: &FieldElem) -> FieldElem {
        self.from_u64(a.residue())
    }
}

impl Ring for FiniteField {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        FieldElem(SmallVec::from_elem(0, self.degree()))
    }

    fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    fn from_i64(&self, n: i64) -> FieldElem {
        self.from_u64(n.rem_euclid(self.p() as i64) as u64)
    }

    fn is_zero(&self, a: &FieldElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        debug_assert!(self.check(a) && self.check(b));
        let p = self.p();
        FieldElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % p).collect())
    }

    fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.p();
        FieldElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + p - y) % p).collect())
    }

    fn neg(&self, a: &FieldElem) -> FieldElem {
        let p = self.p();
        FieldElem(a.0.iter().map(|&x| (p - x) % p).collect())
    }

    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        debug_assert!(self.check(a) && self.check(b));
        let p = self.p();
        let k = self.degree();
        if k == 1 {
            return FieldElem(SmallVec::from_slice(&[mul_mod(a.0[0], b.0[0], p)]));
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        self.reduce_product(&mut prod);
        FieldElem(SmallVec::from_vec(prod))
    }

    fn pow(&self, a: &FieldElem, e: u64) -> FieldElem {
        self.pow_u128(a, e as u128)
    }

    fn try_div(&self, a: &FieldElem, b: &FieldElem) -> Option<FieldElem> {
        self.div(a, b).ok()
    }

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn render(&self, a: &FieldElem) -> String {
        format!("{a:?}")
    }
}

impl Field for FiniteField {
    fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u128(a, self.q() - 2))
    }
}

impl FiniteField {
    /// Whether `n` divides `q - 1`.
    pub fn divides_q_minus_1(&self, n: u64) -> bool {
        n != 0 && (self.q() - 1) % n as u128 == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_examples() {
        let f5 = FiniteField::prime(5).unwrap();
        assert_eq!(f5.inv(&f5.from_u64(2)).unwrap(), f5.from_u64(3));
        assert_eq!(f5.pow(&f5.from_u64(2), 4), f5.one());
        assert_eq!(f5.inv(&f5.zero()), Err(Error::DivisionByZero));
        assert!(FiniteField::prime(9).is_err());
    }

    #[test]
    fn nine_element_field() {
        let f9 = FiniteField::extension(3, &[1, 0, 1]).unwrap();
        let g = f9.generator();
        assert_eq!(f9.mul(&g, &g), f9.from_i64(-1));
        assert_eq!(f9.q(), 9);
        for a in f9.units() {
            assert_eq!(f9.mul(&a, &f9.inv(&a).unwrap()), f9.one());
        }
        // z^2 + 2 = (z + 1)(z + 2) over F_3
        assert!(FiniteField::extension(3, &[2, 0, 1]).is_err());
        assert_eq!(FiniteField::with_degree(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn big_exponent_agrees() {
        let f = FiniteField::with_degree(5, 3).unwrap();
        let a = f.elem(&[2, 1, 3]).unwrap();
        let e = BigUint::from(123_456_789u64) * BigUint::from(1u128 << 100);
        let reduced = (&e % BigUint::from(f.q() - 1)).to_u128().unwrap();
        assert_eq!(f.pow_big(&a, &e), f.pow_u128(&a, reduced));
    }

    #[test]
    fn m_free_examples() {
        let f5 = FiniteField::prime(5).unwrap();
        assert!(f5.is_m_free(&f5.from_u64(2), 2).unwrap());
        let f17 = FiniteField::prime(17).unwrap();
        assert!(!f17.is_m_free(&f17.from_u64(16), 2).unwrap());
        for a in f17.units() {
            assert!(f17.is_m_free(&a, 1).unwrap());
        }
        assert!(f5.is_m_free(&f5.from_u64(2), 3).is_err());
        assert!(f5.is_m_free(&f5.zero(), 2).is_err());
    }

    #[test]
    fn norm_examples() {
        let f9 = FiniteField::extension(3, &[1, 0, 1]).unwrap();
        let g = f9.generator();
        assert_eq!(f9.ext_norm(&g).unwrap().residue(), 1);
        let one_plus_g = f9.add(&f9.one(), &g);
        assert_eq!(f9.ext_norm(&one_plus_g).unwrap().residue(), 2);
        // base elements: norm is a^k
        let f125 = FiniteField::with_degree(5, 3).unwrap();
        for v in 1..5 {
            let n = f125.ext_norm(&f125.from_u64(v)).unwrap();
            assert_eq!(n.residue(), pow_mod(v, 3, 5));
        }
    }

    #[test]
    fn norm_is_multiplicative_and_matches_conjugates() {
        let f = FiniteField::with_degree(7, 3).unwrap();
        let elems: Vec<_> = f.units().step_by(11).collect();
        let base = f.prime_subfield();
        for a in &elems {
            assert_eq!(f.ext_norm(a).unwrap(), f.ext_norm_frobenius(a).unwrap());
            for b in &elems {
                let lhs = f.ext_norm(&f.mul(a, b)).unwrap();
                let rhs = base.mul(&f.ext_norm(a).unwrap(), &f.ext_norm(b).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn serde_shapes() {
        let f9 = FiniteField::extension(3, &[1, 0, 1]).unwrap();
        let a = f9.elem(&[1, 2]).unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, "[1,2]");
        assert_eq!(serde_json::from_str::<FieldElem>(&json).unwrap(), a);
        let f5 = FiniteField::prime(5).unwrap();
        assert_eq!(serde_json::to_string(&f5.from_u64(3)).unwrap(), "3");
    }
}
