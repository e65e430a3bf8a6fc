//! Quadratic-character sums over `F_p` and the Fermat-prime enumeration of
//! parameters `c` for which `z^(2^n) + c` is inversely stable.
//!
//! `χ` is the Legendre symbol extended by `χ(0) = 0`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::finite_field::FiniteField;
use crate::polyring::PolyRing;
use crate::scalars::{is_prime, legendre_u64, mul_mod};
use crate::stability::{decide_fq_in, Verdict};
use crate::xseq::xseq_generate;

/// Table of `χ(x)` for `x = 0..p`.
pub fn legendre_table(p: u64) -> Result<Vec<i8>> {
    check_odd_prime(p)?;
    Ok((0..p).map(|x| legendre_u64(x, p)).collect())
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return invalid(format!("{p} is not an odd prime"));
    }
    Ok(())
}

fn eval_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &a| (mul_mod(acc, x, p) + a) % p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicSum {
    pub sum: i64,
    /// `|sum| ≤ 2√p`.
    pub within_weil_bound: bool,
}

/// `Σ_x χ(f(x))` for a cubic `f` (coefficients low to high) with distinct roots.
pub fn cubic_char_sum(p: u64, f: &[i64]) -> Result<CubicSum> {
    check_odd_prime(p)?;
    let f: Vec<u64> = f.iter().map(|&a| a.rem_euclid(p as i64) as u64).collect();
    let field = FiniteField::prime(p)?;
    let ring = PolyRing::new(field.clone());
    let poly = ring.from_coeffs(f.iter().map(|&a| field.from_u64(a)).collect());
    if poly.degree() != Some(3) {
        return invalid("f must be a cubic modulo p");
    }
    if !ring.coprime(&poly, &ring.derivative(&poly)) {
        return invalid("f has a repeated root (gcd(f, f') ≠ 1)");
    }
    let chi = legendre_table(p)?;
    let sum: i64 = (0..p).map(|x| chi[eval_mod(&f, x, p) as usize] as i64).sum();
    Ok(CubicSum { sum, within_weil_bound: (sum * sum) as u128 <= 4 * p as u128 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadSum {
    pub direct: i64,
    pub closed_form: i64,
}

impl QuadSum {
    pub fn agrees(&self) -> bool {
        self.direct == self.closed_form
    }
}

/// `Σ_x χ(ax² + bx + c)`, summed directly and by the closed form
/// `-χ(a)` when `b² - 4ac ≠ 0`, `χ(a)(p - 1)` otherwise.
pub fn quad_char_sum(p: u64, a: i64, b: i64, c: i64) -> Result<QuadSum> {
    check_odd_prime(p)?;
    let r = |v: i64| v.rem_euclid(p as i64) as u64;
    let (a, b, c) = (r(a), r(b), r(c));
    if a == 0 {
        return invalid("a must be nonzero modulo p");
    }
    let chi = legendre_table(p)?;
    let direct = (0..p).map(|x| chi[eval_mod(&[c, b, a], x, p) as usize] as i64).sum();
    let disc = (mul_mod(b, b, p) + p - mul_mod(4 % p, mul_mod(a, c, p), p)) % p;
    let chi_a = chi[a as usize] as i64;
    let closed_form = if disc != 0 { -chi_a } else { chi_a * (p as i64 - 1) };
    Ok(QuadSum { direct, closed_form })
}

/// Check the closed form for every `(a ≠ 0, b, c)` mod `p`; returns the failing triples.
pub fn quad_sum_exhaustive(p: u64) -> Result<Vec<(u64, u64, u64)>> {
    let mut bad = Vec::new();
    for a in 1..p {
        for b in 0..p {
            for c in 0..p {
                if !quad_char_sum(p, a as i64, b as i64, c as i64)?.agrees() {
                    bad.push((a, b, c));
                }
            }
        }
    }
    Ok(bad)
}

/// Counts over every monic distinct-root cubic mod `p`: `(checked, weil_violations)`.
pub fn cubic_weil_exhaustive(p: u64) -> Result<(usize, usize)> {
    check_odd_prime(p)?;
    let (mut checked, mut violations) = (0, 0);
    for a0 in 0..p as i64 {
        for a1 in 0..p as i64 {
            for a2 in 0..p as i64 {
                match cubic_char_sum(p, &[a0, a1, a2, 1]) {
                    Ok(s) => {
                        checked += 1;
                        if !s.within_weil_bound {
                            violations += 1;
                        }
                    }
                    Err(_) => continue,
                }
            }
        }
    }
    Ok((checked, violations))
}

/// Exponent `n` with `p = 2^(n+1) + 1`, `n ≥ 3`, `p` prime.
pub fn fermat_shape(p: u64) -> Result<u32> {
    if p < 17 || !(p - 1).is_power_of_two() || !is_prime(p) {
        return invalid(format!("{p} is not a prime of the form 2^(n+1) + 1 with n >= 3"));
    }
    Ok((p - 1).trailing_zeros() - 1)
}

/// `⌊(√p - 1)² / 8⌋`, exactly.
pub fn cor28_bound(p: u64) -> u64 {
    // Largest b with 8b ≤ p + 1 - 2√p, i.e. 8b ≤ p + 1 and (p + 1 - 8b)² ≥ 4p.
    let mut b = (p + 1) / 8;
    loop {
        let r = (p + 1 - 8 * b) as u128;
        if r * r >= 4 * p as u128 || b == 0 {
            return b;
        }
        b -= 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cor28Row {
    pub c: u64,
    pub legendre_c_minus_1: i8,
    pub legendre_c: i8,
    pub legendre_c_plus_1: i8,
    /// `x_1, ..., x_5` as residues.
    pub x_prefix: Vec<u64>,
    /// Whether `x_1..x_5 = c, 1-c, c+1, 1-c, c+1`.
    pub pattern_ok: bool,
    pub verdict: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cor28Report {
    pub p: u64,
    pub n: u32,
    pub d: u64,
    pub qualifying_c: Vec<u64>,
    #[serde(rename = "S")]
    pub s: usize,
    pub bound: u64,
    pub bound_ok: bool,
    pub cubic_sum: i64,
    /// `8S = p + 1 + cubic_sum`.
    pub identity_ok: bool,
    /// `Σ t(x)` with the indicator expanded in exact rationals.
    pub indicator_sum: String,
    pub indicator_ok: bool,
    pub rows: Vec<Cor28Row>,
}

impl Cor28Report {
    pub fn per_c_verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.rows.iter().filter_map(|r| r.verdict.as_ref())
    }

    pub fn all_stable(&self) -> bool {
        self.rows.iter().all(|r| matches!(r.verdict, Some(Verdict::InverselyStable { .. })))
    }

    pub fn all_ok(&self, verified: bool) -> bool {
        self.identity_ok
            && self.bound_ok
            && self.indicator_ok
            && self.rows.iter().all(|r| r.pattern_ok)
            && (!verified || self.all_stable())
    }
}

/// Enumerate `c ∈ F_p` with `χ(c-1) = 1`, `χ(c) = χ(c+1) = -1` for a Fermat prime
/// `p = 2^(n+1) + 1`, check the counting identity and bound, and optionally decide
/// inverse stability of `z^(2^n) + c` for each such `c`.
pub fn enumerate_cor28(p: u64, verify_stability: bool, step_cap: usize) -> Result<Cor28Report> {
    let n = fermat_shape(p)?;
    let d = 1u64 << n;
    let chi = legendre_table(p)?;
    let chi_at = |x: u64| chi[(x % p) as usize];
    let qualifying_c: Vec<u64> =
        (0..p).filter(|&c| chi_at(c + p - 1) == 1 && chi_at(c) == -1 && chi_at(c + 1) == -1).collect();
    let s = qualifying_c.len();

    let cubic_sum = cubic_char_sum(p, &[0, -1, 0, 1])?.sum;
    let identity_ok = 8 * s as i64 == p as i64 + 1 + cubic_sum;

    let half = BigRational::new(1.into(), 2.into());
    let one = BigRational::one();
    let mut indicator = BigRational::zero();
    for x in 0..p {
        let r = |v: i8| BigRational::from_integer(v.into());
        let t = (r(chi_at(x + p - 1)) + &one) * &half
            * ((&one - r(chi_at(x))) * &half)
            * ((&one - r(chi_at(x + 1))) * &half);
        indicator += t;
    }
    let indicator_ok = indicator.is_integer() && indicator == BigRational::from_integer(s.into());

    let bound = cor28_bound(p);
    let field = FiniteField::prime(p)?;
    let rows = qualifying_c
        .par_iter()
        .map(|&c| {
            let ce = field.from_u64(c);
            let xs: Vec<u64> = xseq_generate(&field, d, &ce, 5)?.iter().map(|x| x.residue()).collect();
            let (a, b) = ((1 + p - c) % p, (c + 1) % p);
            let pattern_ok = xs == [c, a, b, a, b];
            let verdict = verify_stability.then(|| decide_fq_in(&field, d, &ce, step_cap));
            Ok(Cor28Row {
                c,
                legendre_c_minus_1: chi_at(c + p - 1),
                legendre_c: chi_at(c),
                legendre_c_plus_1: chi_at(c + 1),
                x_prefix: xs,
                pattern_ok,
                verdict,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Cor28Report {
        p,
        n,
        d,
        qualifying_c,
        s,
        bound,
        bound_ok: s as u64 >= bound,
        cubic_sum,
        identity_ok,
        indicator_sum: indicator.to_string(),
        indicator_ok,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xseq::DEFAULT_STEP_CAP;

    #[test]
    fn cubic_examples() {
        assert_eq!(cubic_char_sum(17, &[0, -1, 0, 1]).unwrap().sum, -2);
        // x = 2, 3 give 6 ≡ 1 and 24 ≡ 4, both squares mod 5.
        assert_eq!(cubic_char_sum(5, &[0, -1, 0, 1]).unwrap().sum, 2);
        assert!(cubic_char_sum(5, &[0, 0, 0, 1]).is_err());
        assert!(cubic_char_sum(5, &[0, 0, 1]).is_err());
        assert!(cubic_char_sum(9, &[0, -1, 0, 1]).is_err());
    }

    #[test]
    fn quad_examples() {
        assert_eq!(quad_char_sum(5, 1, 0, 1).unwrap(), QuadSum { direct: -1, closed_form: -1 });
        assert_eq!(quad_char_sum(7, 2, 0, 0).unwrap(), QuadSum { direct: 6, closed_form: 6 });
        assert!(quad_char_sum(7, 7, 1, 1).is_err());
    }

    #[test]
    fn small_exhaustive() {
        for p in [3, 5, 7] {
            assert!(quad_sum_exhaustive(p).unwrap().is_empty());
            let (checked, bad) = cubic_weil_exhaustive(p).unwrap();
            assert!(checked > 0 && bad == 0);
        }
    }

    #[test]
    fn bound_values() {
        assert_eq!(cor28_bound(17), 1);
        assert_eq!(cor28_bound(257), 28);
        let p = 65537f64;
        assert_eq!(cor28_bound(65537), ((p.sqrt() - 1.0).powi(2) / 8.0).floor() as u64);
    }

    #[test]
    fn shape_validation() {
        assert_eq!(fermat_shape(17).unwrap(), 3);
        assert_eq!(fermat_shape(257).unwrap(), 7);
        assert_eq!(fermat_shape(65537).unwrap(), 15);
        for p in [5, 19, 33, 1025] {
            assert!(fermat_shape(p).is_err());
        }
    }

    #[test]
    fn p17_report() {
        let r = enumerate_cor28(17, true, DEFAULT_STEP_CAP).unwrap();
        assert_eq!(r.qualifying_c, vec![5, 10]);
        assert_eq!((r.s, r.bound, r.cubic_sum, r.d), (2, 1, -2, 8));
        assert!(r.all_ok(true));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<Cor28Report>(&json).unwrap(), r);
    }

    #[test]
    fn p257_report() {
        let r = enumerate_cor28(257, true, DEFAULT_STEP_CAP).unwrap();
        assert!(r.s >= 28);
        assert!(r.all_ok(true));
    }
}
