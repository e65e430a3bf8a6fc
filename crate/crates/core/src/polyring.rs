//! Dense univariate polynomials over exact coefficient domains.
//!
//! [`PolyRing`] is itself a [`Ring`], so `Q[t]` is `PolyRing<Rationals>` and
//! polynomials in `z` over `Q[t]` nest one level further.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::finite_field::FiniteField;
use crate::ring::{Field, Rationals, Ring};
use crate::scalars::{is_prime, rat_nth_root};

/// A dense polynomial; `coeffs[i]` is the coefficient of `var^i`.
/// The highest stored coefficient is nonzero; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

/// The polynomial ring `R[var]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<R: Ring> {
    base: R,
    var: &'static str,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        Self { base, var: "z" }
    }

    pub fn with_var(base: R, var: &'static str) -> Self {
        Self { base, var }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(&self, coeffs: &[i64]) -> Poly<R::Elem> {
        self.from_coeffs(coeffs.iter().map(|&c| self.base.from_i64(c)).collect())
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    /// `c * var^n`.
    pub fn monomial(&self, c: R::Elem, n: usize) -> Poly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); n];
        coeffs.push(c);
        self.from_coeffs(coeffs)
    }

    pub fn var_poly(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn add(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        let (long, short) = if a.coeffs.len() >= b.coeffs.len() { (a, b) } else { (b, a) };
        let mut out = long.coeffs.clone();
        for (slot, c) in out.iter_mut().zip(&short.coeffs) {
            *slot = self.base.add(slot, c);
        }
        self.from_coeffs(out)
    }

    pub fn neg(&self, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        Poly { coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    pub fn sub(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly { coeffs: Vec::new() };
        }
        let mut out = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }

    pub fn scale(&self, a: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.base.mul(x, c)).collect())
    }

    pub fn pow(&self, a: &Poly<R::Elem>, mut e: u64) -> Poly<R::Elem> {
        let mut base = a.clone();
        let mut acc = self.constant(self.base.one());
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

    /// `f(g(var))` by Horner's rule.
    pub fn compose(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut acc = Poly { coeffs: Vec::new() };
        for c in f.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, g), &self.constant(c.clone()));
        }
        acc
    }

    pub fn eval(&self, f: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        f.coeffs
            .iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }

    pub fn derivative(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.from_coeffs(
            f.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.base.mul(c, &self.base.from_i64(i as i64)))
                .collect(),
        )
    }

    /// Division with remainder. Each quotient coefficient must divide exactly
    /// by the leading coefficient of `b` (always true over a field).
    pub fn divmod(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Result<(Poly<R::Elem>, Poly<R::Elem>)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lead = b.leading().expect("nonzero");
        let mut rem = a.coeffs.clone();
        let Some(da) = a.degree().filter(|&da| da >= db) else {
            return Ok((Poly { coeffs: Vec::new() }, a.clone()));
        };
        let mut quot = vec![self.base.zero(); da - db + 1];
        for i in (db..=da).rev() {
            if self.base.is_zero(&rem[i]) {
                continue;
            }
            let q = self.base.try_div(&rem[i], lead).ok_or(Error::InexactDivision("polynomial division"))?;
            for (j, bc) in b.coeffs.iter().enumerate() {
                let idx = i - db + j;
                rem[idx] = self.base.sub(&rem[idx], &self.base.mul(&q, bc));
            }
            quot[i - db] = q;
        }
        rem.truncate(db);
        Ok((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    /// `a / b`, failing unless the division is exact.
    pub fn div_exact(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        let (q, r) = self.divmod(a, b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision("polynomial division"))
        }
    }

    pub fn render(&self, f: &Poly<R::Elem>) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in f.coeffs.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, i),
            };
            let cs = self.base.render(c);
            let cs = if cs.contains(' ') || (cs.contains('+') && !mono.is_empty()) {
                format!("({cs})")
            } else {
                cs
            };
            terms.push(match (mono.is_empty(), self.base.is_one(c)) {
                (true, _) => cs,
                (false, true) => mono,
                (false, false) if cs == "-1" => format!("-{mono}"),
                (false, false) => format!("{cs}*{mono}"),
            });
        }
        terms.join(" + ").replace("+ -", "- ")
    }
}

impl<R: Field> PolyRing<R> {
    pub fn monic(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        match f.leading() {
            None => f.clone(),
            Some(lc) => {
                let inv = self.base.inv(lc).expect("nonzero leading coefficient");
                self.scale(f, &inv)
            }
        }
    }

    /// Monic gcd by the plain Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn euclid_gcd(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = self.divmod(&a, &b).expect("field division");
            a = b;
            b = self.monic(&r);
        }
        self.monic(&a)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        if a.is_zero() && b.is_zero() {
            return invalid("gcd(0, 0) is undefined");
        }
        Ok(R::poly_gcd(self, a, b))
    }

    pub fn coprime(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> bool {
        if a.is_zero() || b.is_zero() {
            // gcd(a, 0) = monic(a)
            return a.degree() == Some(0) || b.degree() == Some(0);
        }
        R::poly_coprime(self, a, b)
    }

    /// Yun's squarefree decomposition, valid in characteristic zero.
    pub fn yun_squarefree(&self, f: &Poly<R::Elem>) -> Result<SquarefreeDecomposition<R::Elem>> {
        if f.is_zero() {
            return invalid("squarefree decomposition of the zero polynomial");
        }
        if self.base.characteristic() != 0 {
            return invalid("Yun's algorithm requires characteristic zero");
        }
        let unit = f.leading().expect("nonzero").clone();
        let f = self.monic(f);
        let mut parts = Vec::new();
        if f.degree() == Some(0) {
            return Ok(SquarefreeDecomposition { unit, parts });
        }
        let df = self.derivative(&f);
        let a0 = R::poly_gcd(self, &f, &df);
        let mut b = self.div_exact(&f, &a0)?;
        let c = self.div_exact(&df, &a0)?;
        let mut d = self.sub(&c, &self.derivative(&b));
        let mut i = 1u32;
        while b.degree() != Some(0) {
            let a = R::poly_gcd(self, &b, &d);
            b = self.div_exact(&b, &a)?;
            let c = self.div_exact(&d, &a)?;
            d = self.sub(&c, &self.derivative(&b));
            if a.degree() != Some(0) {
                parts.push((a, i));
            }
            i += 1;
        }
        Ok(SquarefreeDecomposition { unit, parts })
    }

    /// Number of distinct roots in an algebraic closure: `deg(f / gcd(f, f'))`.
    pub fn n0_distinct_roots(&self, f: &Poly<R::Elem>) -> Result<usize> {
        if f.is_zero() {
            return invalid("n0 of the zero polynomial");
        }
        if self.base.characteristic() != 0 {
            return invalid("distinct-root count via f/gcd(f, f') requires characteristic zero");
        }
        let g = R::poly_gcd(self, f, &self.derivative(f));
        Ok(self.div_exact(f, &g)?.degree().unwrap_or(0))
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly { coeffs: Vec::new() }
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        PolyRing::add(self, a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        PolyRing::sub(self, a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        PolyRing::neg(self, a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        PolyRing::mul(self, a, b)
    }
    fn pow(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        PolyRing::pow(self, a, e)
    }
    fn try_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.div_exact(a, b).ok()
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn render(&self, a: &Self::Elem) -> String {
        PolyRing::render(self, a)
    }
    fn size_bits(&self, a: &Self::Elem) -> u64 {
        a.coeffs.iter().map(|c| self.base.size_bits(c).max(1)).sum()
    }
}

/// `f = unit · ∏ part^mult` with monic, squarefree, pairwise coprime parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition<E> {
    pub unit: E,
    pub parts: Vec<(Poly<E>, u32)>,
}

impl<E: Clone> SquarefreeDecomposition<E> {
    pub fn reconstruct<R: Ring<Elem = E>>(&self, ring: &PolyRing<R>) -> Poly<E> {
        self.parts.iter().fold(ring.constant(self.unit.clone()), |acc, (part, m)| {
            ring.mul(&acc, &ring.pow(part, u64::from(*m)))
        })
    }
}

/// `Q[t]`, the ring in which the function-field criteria are evaluated.
pub fn qt_ring() -> PolyRing<Rationals> {
    PolyRing::with_var(Rationals, "t")
}

/// Whether `f = u · g^p` with `u ∈ Q^*` and `g ∈ Q[t]`.
pub fn is_pth_power_up_to_unit_ft(ring: &PolyRing<Rationals>, f: &Poly<BigRational>, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if f.is_zero() {
        return invalid("0 is excluded from the p-th power test");
    }
    let sqf = ring.yun_squarefree(f)?;
    Ok(sqf.parts.iter().all(|(_, m)| u64::from(*m) % p == 0))
}

/// `g ∈ Q[t]` with `g^n = f` exactly (the unit must itself be an `n`-th power in `Q`).
pub fn nth_root_qt(ring: &PolyRing<Rationals>, f: &Poly<BigRational>, n: u32) -> Result<Option<Poly<BigRational>>> {
    if f.is_zero() {
        return invalid("0 is excluded from the root test");
    }
    let sqf = ring.yun_squarefree(f)?;
    if sqf.parts.iter().any(|(_, m)| m % n != 0) {
        return Ok(None);
    }
    let Some(unit_root) = rat_nth_root(&sqf.unit, n) else {
        return Ok(None);
    };
    let root = sqf.parts.iter().fold(ring.constant(unit_root), |acc, (part, m)| {
        ring.mul(&acc, &ring.pow(part, u64::from(m / n)))
    });
    Ok(Some(root))
}

/// Outcome of a Mason–Stothers evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasonStothers {
    pub max_degree: usize,
    pub n0: usize,
    pub holds: bool,
}

impl MasonStothers {
    pub fn is_tight(&self) -> bool {
        self.max_degree + 1 == self.n0
    }
}

/// Evaluate `max(deg a, deg b, deg c) ≤ n0(abc) - 1` for a coprime triple with `a + b = c`.
pub fn mason_stothers_check(
    ring: &PolyRing<Rationals>,
    a: &Poly<BigRational>,
    b: &Poly<BigRational>,
    c: &Poly<BigRational>,
) -> Result<MasonStothers> {
    if ring.add(a, b) != *c {
        return invalid("a + b != c");
    }
    for (x, y, name) in [(a, b, "gcd(a, b) != 1"), (a, c, "gcd(a, c) != 1"), (b, c, "gcd(b, c) != 1")] {
        if !ring.coprime(x, y) {
            return invalid(format!("not pairwise coprime: {name}"));
        }
    }
    let degrees = [a, b, c].map(|x| x.degree().unwrap_or(0));
    if degrees.iter().all(|&d| d == 0) {
        return invalid("all derivatives vanish (a, b, c constant)");
    }
    let n0 = ring.n0_distinct_roots(&ring.mul(&ring.mul(a, b), c))?;
    let max_degree = *degrees.iter().max().expect("three degrees");
    Ok(MasonStothers { max_degree, n0, holds: max_degree < n0 })
}

// --- integer-coefficient helpers for Q[t] -----------------------------------

/// Primitive integer polynomial proportional to `f` (positive leading coefficient).
pub fn primitive_integer_part(f: &Poly<BigRational>) -> Vec<BigInt> {
    if f.is_zero() {
        return Vec::new();
    }
    let lcm = f.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    primitive(ints)
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let Some(last) = v.last() else { return v };
    let mut content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if last.is_negative() {
        content = -content;
    }
    v.iter().map(|c| c / &content).collect()
}

/// Pseudo-remainder of integer polynomials (up to a nonzero integer factor).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let lr = r.last().expect("nonempty").clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Monic gcd over `Q` through the primitive pseudo-remainder sequence.
pub(crate) fn rational_gcd(ring: &PolyRing<Rationals>, a: &Poly<BigRational>, b: &Poly<BigRational>) -> Poly<BigRational> {
    let (mut x, mut y) = (primitive_integer_part(a), primitive_integer_part(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive(pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    ring.monic(&ring.from_coeffs(x.into_iter().map(BigRational::from_integer).collect()))
}

const COPRIME_PRIMES: [u64; 4] = [2_147_483_647, 2_147_483_629, 2_147_483_587, 1_000_000_007];

/// Certify `gcd(a, b) = 1` over `Q` by finding a prime `p ∤ lc(a)` with
/// `gcd(a mod p, b mod p) = 1`. A `false` result is not a proof of a common factor.
pub(crate) fn rational_coprime_mod_p(a: &Poly<BigRational>, b: &Poly<BigRational>) -> bool {
    let (x, y) = (primitive_integer_part(a), primitive_integer_part(b));
    if x.is_empty() || y.is_empty() {
        return false;
    }
    if x.len() == 1 || y.len() == 1 {
        return true;
    }
    for p in COPRIME_PRIMES {
        let field = FiniteField::prime(p).expect("prime");
        let ring = PolyRing::new(field.clone());
        let big_p = BigInt::from(p);
        if (x.last().expect("nonempty") % &big_p).is_zero() {
            continue;
        }
        let reduce = |v: &[BigInt]| {
            ring.from_coeffs(
                v.iter()
                    .map(|c| field.from_u64(c.mod_floor(&big_p).to_u64().expect("reduced")))
                    .collect(),
            )
        };
        if ring.euclid_gcd(&reduce(&x), &reduce(&y)).degree() == Some(0) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;
    use proptest::prelude::*;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> PolyRing<Rationals> {
        PolyRing::new(Rationals)
    }

    fn p(coeffs: &[i64]) -> Poly<BigRational> {
        q().from_i64s(coeffs)
    }

    #[test]
    fn arithmetic_examples() {
        let r = q();
        assert_eq!(r.compose(&p(&[1, 0, 1]), &p(&[1, 1])), p(&[2, 2, 1]));
        let (quot, rem) = r.divmod(&p(&[0, 0, 0, 1]), &p(&[1, 0, 1])).unwrap();
        assert_eq!((quot, rem), (p(&[0, 1]), p(&[0, -1])));
        let f2 = PolyRing::new(FiniteField::prime(2).unwrap());
        let sq = f2.pow(&f2.from_i64s(&[1, 1]), 2);
        assert_eq!(sq, f2.from_i64s(&[1, 0, 1]));
    }

    #[test]
    fn inexact_integer_division() {
        let z = PolyRing::new(Integers);
        let f = z.from_i64s(&[1, 0, 1]);
        let g = z.from_i64s(&[1, 2]);
        assert_eq!(z.divmod(&f, &g), Err(Error::InexactDivision("polynomial division")));
        assert_eq!(z.div_exact(&z.from_i64s(&[2, 6, 4]), &z.from_i64s(&[1, 1])).unwrap(), z.from_i64s(&[2, 4]));
        assert_eq!(z.divmod(&f, &z.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        let r = q();
        assert_eq!(r.gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(r.gcd(&p(&[1, 0, 1]), &p(&[2, 0, 1])).unwrap(), p(&[1]));
        assert!(r.gcd(&r.zero(), &r.zero()).is_err());
        assert_eq!(r.gcd(&p(&[0, 3]), &r.zero()).unwrap(), p(&[0, 1]));
        // generic Euclid agrees with the primitive PRS
        let f = p(&[6, -5, 0, 3, 1]);
        let g = p(&[3, 2, 0, -7]);
        let h = p(&[5, 1, 2]);
        let (fh, gh) = (r.mul(&f, &h), r.mul(&g, &h));
        assert_eq!(r.euclid_gcd(&fh, &gh), r.gcd(&fh, &gh).unwrap());
    }

    #[test]
    fn yun_examples() {
        let r = qt_ring();
        let sqf = r.yun_squarefree(&p(&[0, -1, 0, 1])).unwrap();
        assert_eq!(sqf.unit, BigRational::one());
        assert_eq!(sqf.parts, vec![(p(&[0, -1, 0, 1]), 1)]);

        let nine_sq = r.scale(&r.pow(&p(&[1, 1]), 2), &BigRational::from_integer(9.into()));
        let sqf = r.yun_squarefree(&nine_sq).unwrap();
        assert_eq!(sqf.unit, BigRational::from_integer(9.into()));
        assert_eq!(sqf.parts, vec![(p(&[1, 1]), 2)]);

        let f = r.mul(&r.pow(&p(&[0, 1]), 2), &r.pow(&p(&[1, 1]), 3));
        let sqf = r.yun_squarefree(&f).unwrap();
        assert_eq!(sqf.parts, vec![(p(&[0, 1]), 2), (p(&[1, 1]), 3)]);
        assert!(r.yun_squarefree(&r.zero()).is_err());
        let f5 = PolyRing::new(FiniteField::prime(5).unwrap());
        assert!(f5.yun_squarefree(&f5.from_i64s(&[1, 1])).is_err());
    }

    #[test]
    fn n0_examples() {
        let r = qt_ring();
        let f = r.mul(&r.pow(&p(&[-1, 0, 1]), 2), &p(&[0, 1]));
        assert_eq!(r.n0_distinct_roots(&f).unwrap(), 3);
        assert_eq!(r.n0_distinct_roots(&p(&[0, 0, 0, 0, 1])).unwrap(), 1);
        assert_eq!(r.n0_distinct_roots(&p(&[7])).unwrap(), 0);
        assert!(r.n0_distinct_roots(&r.zero()).is_err());
    }

    #[test]
    fn pth_power_ft_examples() {
        let r = qt_ring();
        let two_sq = r.scale(&r.pow(&p(&[1, 1]), 2), &BigRational::from_integer(2.into()));
        assert!(is_pth_power_up_to_unit_ft(&r, &two_sq, 2).unwrap());
        assert!(!is_pth_power_up_to_unit_ft(&r, &p(&[0, 1, 1]), 2).unwrap());
        assert!(is_pth_power_up_to_unit_ft(&r, &r.pow(&p(&[1, 0, 1]), 3), 3).unwrap());
        assert!(is_pth_power_up_to_unit_ft(&r, &r.zero(), 3).is_err());
        // the unit 2 is not a rational square, so no root exists in Q[t]
        assert_eq!(nth_root_qt(&r, &two_sq, 2).unwrap(), None);
        let four_t2 = p(&[0, 0, 4]);
        assert_eq!(nth_root_qt(&r, &four_t2, 2).unwrap(), Some(p(&[0, 2])));
    }

    #[test]
    fn mason_stothers_examples() {
        let r = qt_ring();
        let ms = mason_stothers_check(&r, &p(&[0, 0, 1]), &p(&[1, 2]), &p(&[1, 2, 1])).unwrap();
        assert_eq!(ms, MasonStothers { max_degree: 2, n0: 3, holds: true });
        assert!(ms.is_tight());
        let ms = mason_stothers_check(&r, &p(&[1]), &p(&[0, 1]), &p(&[1, 1])).unwrap();
        assert!(ms.holds);
        let err = mason_stothers_check(&r, &p(&[0, 1]), &p(&[0, -1]), &r.zero()).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(msg) if msg.contains("coprime")));
        assert!(mason_stothers_check(&r, &p(&[1]), &p(&[2]), &p(&[3])).is_err());
        assert!(mason_stothers_check(&r, &p(&[1]), &p(&[2]), &p(&[4])).is_err());
    }

    #[test]
    fn render_shapes() {
        let r = qt_ring();
        assert_eq!(r.render(&p(&[2, 0, -1, 1])), "t^3 - t^2 + 2");
        assert_eq!(r.render(&p(&[1, 1])), "t + 1");
        let zt = PolyRing::new(r.clone());
        let f = zt.from_coeffs(vec![p(&[0, 1]), r.zero(), r.one()]);
        assert_eq!(zt.render(&f), "z^2 + t");
    }

    fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly<BigRational> {
        let deg = rng.gen_range(0..=max_deg);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-5..=5)).collect();
        if c[deg] == 0 {
            c[deg] = 1;
        }
        p(&c)
    }

    #[test]
    fn yun_reconstructs_random_inputs() {
        let r = qt_ring();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let base = random_poly(&mut rng, 3);
            let other = random_poly(&mut rng, 3);
            let f = r.mul(&r.pow(&base, rng.gen_range(1..=3)), &other);
            if f.is_zero() || f.degree() > Some(12) {
                continue;
            }
            let sqf = r.yun_squarefree(&f).unwrap();
            assert_eq!(sqf.reconstruct(&r), f);
            for (i, (a, _)) in sqf.parts.iter().enumerate() {
                assert_eq!(r.n0_distinct_roots(a).unwrap(), a.degree().unwrap());
                for (b, _) in &sqf.parts[i + 1..] {
                    assert!(r.coprime(a, b));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn n0_additive_on_coprime(a in prop::collection::vec(-4i64..=4, 1..6), b in prop::collection::vec(-4i64..=4, 1..6)) {
            let r = qt_ring();
            let (f, g) = (p(&a), p(&b));
            prop_assume!(!f.is_zero() && !g.is_zero() && r.coprime(&f, &g));
            let fg = r.mul(&f, &g);
            prop_assert_eq!(r.n0_distinct_roots(&fg).unwrap(),
                r.n0_distinct_roots(&f).unwrap() + r.n0_distinct_roots(&g).unwrap());
        }

        #[test]
        fn unit_times_power_detected(g in prop::collection::vec(-4i64..=4, 2..7), u in 1i64..50, pi in 0usize..3, shift in -6i64..6) {
            let r = qt_ring();
            let pr = [2u64, 3, 5][pi];
            let g = p(&g);
            prop_assume!(g.degree().unwrap_or(0) >= 1);
            let f = r.scale(&r.pow(&g, pr), &BigRational::new(u.into(), 7.into()));
            prop_assert!(is_pth_power_up_to_unit_ft(&r, &f, pr).unwrap());
            let lin = p(&[shift, 1]);
            prop_assume!(r.coprime(&lin, &g));
            prop_assert!(!is_pth_power_up_to_unit_ft(&r, &r.mul(&f, &lin), pr).unwrap());
        }

        #[test]
        fn gcd_of_common_multiples(f in prop::collection::vec(-5i64..=5, 1..5), g in prop::collection::vec(-5i64..=5, 1..5), h in prop::collection::vec(-5i64..=5, 2..5)) {
            let r = qt_ring();
            let (f, g, h) = (p(&f), p(&g), p(&h));
            prop_assume!(!f.is_zero() && !g.is_zero() && h.degree().unwrap_or(0) >= 1);
            prop_assume!(r.coprime(&f, &g));
            prop_assert_eq!(r.gcd(&r.mul(&f, &h), &r.mul(&g, &h)).unwrap(), r.monic(&h));
        }
    }
}
