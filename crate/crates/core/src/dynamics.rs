//! Iteration of `Φ(z) = 1/φ(z)`, `φ(z) = z^d + c`, in reduced form, and the
//! forward orbit of `∞` on the projective line.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::finite_field::FiniteField;
use crate::polyring::{Poly, PolyRing};
use crate::ring::{Field, Ring};

/// Roughly 10^6 decimal digits of coefficient data.
pub const DEFAULT_SIZE_LIMIT_BITS: u64 = 3_321_929;

/// `Φ^(n) = f / g` with `gcd(f, g) = 1` and `g` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedIterate<E> {
    pub n: usize,
    pub f: Poly<E>,
    pub g: Poly<E>,
}

/// A point of `P^1`, normalized to `[x : 1]` or `∞ = [1 : 0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProjPoint<E> {
    Affine(E),
    Infinity,
}

pub(crate) fn check_binomial<R: Ring>(ring: &R, d: u64, c: &R::Elem) -> Result<()> {
    if d < 2 {
        return invalid(format!("degree d = {d} < 2"));
    }
    if ring.is_zero(c) {
        return invalid("c = 0: φ = z^d is degenerate");
    }
    let p = ring.characteristic();
    if p != 0 && d % p == 0 {
        return Err(Error::UnsupportedCharacteristic { p, d });
    }
    Ok(())
}

/// Lazily produces `Φ^(1), Φ^(2), ...` in reduced form.
pub struct PhiIterates<F: Field> {
    ring: PolyRing<F>,
    d: u64,
    c: F::Elem,
    current: Option<ReducedIterate<F::Elem>>,
    size_limit_bits: u64,
}

impl<F: Field> PhiIterates<F> {
    pub fn new(field: &F, d: u64, c: &F::Elem) -> Result<Self> {
        check_binomial(field, d, c)?;
        Ok(Self {
            ring: PolyRing::new(field.clone()),
            d,
            c: c.clone(),
            current: None,
            size_limit_bits: DEFAULT_SIZE_LIMIT_BITS,
        })
    }

    pub fn with_size_limit(mut self, bits: u64) -> Self {
        self.size_limit_bits = bits;
        self
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    fn first(&self) -> ReducedIterate<F::Elem> {
        let field = self.ring.base();
        let mut g = vec![field.zero(); self.d as usize + 1];
        g[0] = self.c.clone();
        g[self.d as usize] = field.one();
        ReducedIterate { n: 1, f: self.ring.one(), g: self.ring.from_coeffs(g) }
    }

    fn step(&self, prev: &ReducedIterate<F::Elem>) -> Result<ReducedIterate<F::Elem>> {
        let r = &self.ring;
        let gd = r.pow(&prev.g, self.d);
        let fd = r.pow(&prev.f, self.d);
        let g = r.add(&fd, &r.scale(&gd, &self.c));
        let Some(lc) = g.leading().cloned() else {
            return invalid("denominator vanished");
        };
        let inv = r.base().inv(&lc)?;
        let next = ReducedIterate { n: prev.n + 1, f: r.scale(&gd, &inv), g: r.scale(&g, &inv) };
        assert!(r.coprime(&next.f, &next.g), "reduced iterate {} is not coprime", next.n);
        Ok(next)
    }

    fn size_bits(&self, it: &ReducedIterate<F::Elem>) -> u64 {
        self.ring.size_bits(&it.f) + self.ring.size_bits(&it.g)
    }

    pub fn next_iterate(&mut self) -> Result<ReducedIterate<F::Elem>> {
        let next = match &self.current {
            None => self.first(),
            Some(prev) => self.step(prev)?,
        };
        let bits = self.size_bits(&next);
        if bits > self.size_limit_bits {
            return Err(Error::SizeLimit { index: next.n, what: format!("iterate uses {bits} bits of coefficients") });
        }
        self.current = Some(next.clone());
        Ok(next)
    }
}

/// The reduced iterates `Φ^(1), ..., Φ^(n)`.
pub fn iterates<F: Field>(field: &F, d: u64, c: &F::Elem, n: usize) -> Result<Vec<ReducedIterate<F::Elem>>> {
    let mut it = PhiIterates::new(field, d, c)?;
    (0..n).map(|_| it.next_iterate()).collect()
}

/// The reduced iterate `Φ^(n)`, `n ≥ 1`.
pub fn iterate_phi<F: Field>(field: &F, d: u64, c: &F::Elem, n: usize) -> Result<ReducedIterate<F::Elem>> {
    if n == 0 {
        return invalid("iteration index must be >= 1");
    }
    Ok(iterates(field, d, c, n)?.pop().expect("n >= 1"))
}

/// Homogeneous coordinates `(a_n, b_n)` of `Φ^(n)(∞)` for `n = 1..=count`, unnormalized:
/// `a_1 = 0`, `b_1 = 1`, `a_{n+1} = b_n^d`, `b_{n+1} = a_n^d + c b_n^d`.
pub fn infinity_orbit_raw<R: Ring>(ring: &R, d: u64, c: &R::Elem, count: usize) -> Vec<(R::Elem, R::Elem)> {
    let mut out = Vec::with_capacity(count);
    let (mut a, mut b) = (ring.zero(), ring.one());
    for _ in 0..count {
        out.push((a.clone(), b.clone()));
        let bd = ring.pow(&b, d);
        let next_b = ring.add(&ring.pow(&a, d), &ring.mul(c, &bd));
        a = bd;
        b = next_b;
    }
    out
}

/// `Φ([X : Y]) = [Y^d : X^d + c Y^d]`.
pub fn apply_phi<F: Field>(field: &F, d: u64, c: &F::Elem, point: &ProjPoint<F::Elem>) -> ProjPoint<F::Elem> {
    match point {
        ProjPoint::Infinity => ProjPoint::Affine(field.zero()),
        ProjPoint::Affine(x) => {
            let den = field.add(&field.pow(x, d), c);
            match field.inv(&den) {
                Ok(v) => ProjPoint::Affine(v),
                Err(_) => ProjPoint::Infinity,
            }
        }
    }
}

/// `Φ^(n)(∞)` for `n = 1..=count`, each normalized.
pub fn infinity_orbit<F: Field>(field: &F, d: u64, c: &F::Elem, count: usize) -> Result<Vec<ProjPoint<F::Elem>>> {
    check_binomial(field, d, c)?;
    let mut out = Vec::with_capacity(count);
    let mut point = ProjPoint::Infinity;
    for _ in 0..count {
        point = apply_phi(field, d, c, &point);
        out.push(point.clone());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Periodicity {
    /// The orbit of `∞` enters a cycle that avoids `∞`.
    NotPeriodic { tail: usize, cycle_length: usize },
    Periodic { period: usize },
    CapExceeded { cap: usize },
}

/// Cycle detection for the orbit of `∞` on `P^1(F_q)`. With `cap = None` the
/// cap is `q + 1`, the size of the phase space, so the answer is always decided.
pub fn is_infinity_periodic(field: &FiniteField, d: u64, c: &crate::FieldElem, cap: Option<usize>) -> Result<Periodicity> {
    check_binomial(field, d, c)?;
    let cap = cap.unwrap_or_else(|| usize::try_from(field.q() + 1).unwrap_or(usize::MAX));
    let mut seen: HashMap<ProjPoint<crate::FieldElem>, usize> = HashMap::new();
    let mut point = ProjPoint::Infinity;
    seen.insert(point.clone(), 0);
    for step in 1..=cap {
        point = apply_phi(field, d, c, &point);
        if let Some(&first) = seen.get(&point) {
            return Ok(if point == ProjPoint::Infinity {
                Periodicity::Periodic { period: step }
            } else {
                Periodicity::NotPeriodic { tail: first, cycle_length: step - first }
            });
        }
        seen.insert(point.clone(), step);
    }
    Ok(Periodicity::CapExceeded { cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rationals;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn iterate_examples_over_q() {
        let first = iterate_phi(&Rationals, 2, &q(1), 1).unwrap();
        let r = PolyRing::new(Rationals);
        assert_eq!(first.f, r.from_i64s(&[1]));
        assert_eq!(first.g, r.from_i64s(&[1, 0, 1]));
        let second = iterate_phi(&Rationals, 2, &q(1), 2).unwrap();
        assert_eq!(second.f, r.from_i64s(&[1, 0, 2, 0, 1]));
        assert_eq!(second.g, r.from_i64s(&[2, 0, 2, 0, 1]));
    }

    #[test]
    fn iterate_over_f5_degree() {
        let f5 = FiniteField::prime(5).unwrap();
        let it = iterate_phi(&f5, 2, &f5.from_u64(2), 3).unwrap();
        assert_eq!(it.g.degree(), Some(8));
    }

    #[test]
    fn iterate_errors() {
        let f5 = FiniteField::prime(5).unwrap();
        assert_eq!(
            iterate_phi(&f5, 5, &f5.from_u64(2), 1),
            Err(Error::UnsupportedCharacteristic { p: 5, d: 5 })
        );
        assert!(iterate_phi(&f5, 2, &f5.zero(), 1).is_err());
        assert!(iterate_phi(&Rationals, 2, &q(1), 0).is_err());
        let mut it = PhiIterates::new(&Rationals, 3, &q(2)).unwrap().with_size_limit(200);
        assert!(it.next_iterate().is_ok());
        assert!(matches!(
            (0..4).map(|_| it.next_iterate()).find(Result::is_err),
            Some(Err(Error::SizeLimit { .. }))
        ));
    }

    #[test]
    fn infinity_orbit_examples() {
        let f5 = FiniteField::prime(5).unwrap();
        let one = f5.one();
        let orbit = infinity_orbit(&f5, 2, &one, 4).unwrap();
        assert_eq!(orbit[0], ProjPoint::Affine(f5.zero()));
        // [1 : c] = [1/c : 1]
        assert_eq!(orbit[1], ProjPoint::Affine(f5.inv(&one).unwrap()));
        assert_eq!(orbit[3], ProjPoint::Infinity);
        let raw = infinity_orbit_raw(&f5, 2, &one, 4);
        assert_eq!(raw[3], (f5.from_u64(4), f5.zero()));
        for c in 1..5 {
            let c = f5.from_u64(c);
            let orbit = infinity_orbit(&f5, 2, &c, 2).unwrap();
            assert_eq!(orbit[1], ProjPoint::Affine(f5.inv(&c).unwrap()));
        }
    }

    #[test]
    fn periodicity_examples() {
        let f5 = FiniteField::prime(5).unwrap();
        assert_eq!(is_infinity_periodic(&f5, 2, &f5.from_u64(1), None).unwrap(), Periodicity::Periodic { period: 4 });
        assert!(matches!(
            is_infinity_periodic(&f5, 2, &f5.from_u64(2), None).unwrap(),
            Periodicity::NotPeriodic { .. }
        ));
        assert_eq!(
            is_infinity_periodic(&f5, 2, &f5.from_u64(1), Some(2)).unwrap(),
            Periodicity::CapExceeded { cap: 2 }
        );
    }

    #[test]
    fn structural_identity_and_degree_law() {
        for p in [3u64, 5, 7, 11, 13] {
            let field = FiniteField::prime(p).unwrap();
            for d in [2u64, 3] {
                if d % p == 0 {
                    continue;
                }
                for c in field.units() {
                    let its = iterates(&field, d, &c, 3).unwrap();
                    let ring = PolyRing::new(field.clone());
                    let periodic = matches!(is_infinity_periodic(&field, d, &c, None).unwrap(), Periodicity::Periodic { .. });
                    for w in its.windows(2) {
                        // f_{n+1} is g_n^d scaled by the monic normalization
                        let gd = ring.pow(&w[0].g, d);
                        let ratio = field.div(w[1].f.leading().unwrap(), gd.leading().unwrap()).unwrap();
                        assert_eq!(w[1].f, ring.scale(&gd, &ratio));
                    }
                    if !periodic {
                        for it in &its {
                            assert_eq!(it.g.degree(), Some((d as usize).pow(it.n as u32)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn roots_of_denominator_map_to_infinity() {
        for p in [3u64, 5, 7, 11, 13] {
            let field = FiniteField::prime(p).unwrap();
            let ring = PolyRing::new(field.clone());
            for d in [2u64, 3] {
                if d % p == 0 {
                    continue;
                }
                for c in field.units() {
                    for it in iterates(&field, d, &c, 2).unwrap() {
                        for alpha in field.elements() {
                            let mut point = ProjPoint::Affine(alpha.clone());
                            for _ in 0..it.n {
                                point = apply_phi(&field, d, &c, &point);
                            }
                            let root = field.is_zero(&ring.eval(&it.g, &alpha));
                            assert_eq!(root, point == ProjPoint::Infinity);
                        }
                    }
                }
            }
        }
    }
}
