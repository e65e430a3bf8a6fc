//! Integer and rational predicates that drive the irreducibility criteria
//! over `Q` and `Z`, plus small-prime utilities shared by the finite-field layer.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors of `n` in increasing order (trial division).
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while f.saturating_mul(f) <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Radical of `n`: the product of its distinct prime divisors.
pub fn rad(n: u64) -> u64 {
    prime_divisors(n).into_iter().product()
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i.saturating_mul(i) <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    (2u64..).filter(|&n| is_prime(n)).take(count).collect()
}

/// Exact `n`-th root of a non-negative integer, if it exists.
pub fn exact_root(x: &BigUint, n: u32) -> Option<BigUint> {
    let r = x.nth_root(n);
    (num_traits::Pow::pow(&r, n) == *x).then_some(r)
}

/// Whether `n = u * m^p` for some `m ∈ Z` and unit `u ∈ {±1}`.
pub fn int_is_pth_power_up_to_unit(n: &BigInt, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if n.is_zero() {
        return invalid("0 is excluded from the p-th power test");
    }
    let Ok(exp) = u32::try_from(p) else {
        // |n| > 1 cannot be a p-th power for astronomically large p.
        return Ok(n.magnitude().is_one());
    };
    Ok(exact_root(n.magnitude(), exp).is_some())
}

/// Exact `n`-th root of a rational number, if one exists in `Q`.
pub fn rat_nth_root(x: &BigRational, n: u32) -> Option<BigRational> {
    if x.is_zero() {
        return Some(BigRational::zero());
    }
    if x.is_negative() && n % 2 == 0 {
        return None;
    }
    let num = exact_root(x.numer().magnitude(), n)?;
    let den = exact_root(x.denom().magnitude(), n)?;
    let sign = if x.is_negative() { Sign::Minus } else { Sign::Plus };
    Some(BigRational::new(BigInt::from_biguint(sign, num), BigInt::from_biguint(Sign::Plus, den)))
}

/// Whether `x = y^p` for some `y ∈ Q`.
pub fn rat_is_pth_power(x: &BigRational, p: u64) -> Result<bool> {
    Ok(rat_pth_root(x, p)?.is_some())
}

/// The rational `p`-th root of `x`, if it exists.
pub fn rat_pth_root(x: &BigRational, p: u64) -> Result<Option<BigRational>> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if x.is_zero() {
        return invalid("0 is excluded from the p-th power test");
    }
    let Ok(exp) = u32::try_from(p) else {
        return Ok((x.numer().magnitude().is_one() && x.denom().is_one())
            .then(|| x.clone())
            .filter(|_| !(x.is_negative() && p == 2)));
    };
    Ok(rat_nth_root(x, exp))
}

/// Whether `x ∈ 4·Q^4`.
pub fn rat_in_4k4(x: &BigRational) -> Result<bool> {
    Ok(rat_4k4_root(x)?.is_some())
}

/// `y` with `x = 4 y^4`, if one exists.
pub fn rat_4k4_root(x: &BigRational) -> Result<Option<BigRational>> {
    if x.is_zero() {
        return invalid("0 is excluded from the 4K^4 test");
    }
    let quarter = x / BigRational::from_integer(BigInt::from(4));
    Ok(rat_nth_root(&quarter, 4))
}

/// Legendre symbol `(a / p)` via Euler's criterion.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return invalid(format!("{p} is not an odd prime"));
    }
    let r = a.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p");
    Ok(legendre_u64(r, p))
}

/// Legendre symbol for a residue `a` modulo an odd prime `p` (unchecked).
pub fn legendre_u64(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Legendre symbol of a signed residue (`a` may be negative).
pub fn legendre_i64(a: i64, p: u64) -> i8 {
    legendre_u64(a.rem_euclid(p as i64) as u64, p)
}
