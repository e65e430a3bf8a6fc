//! The `x_n` sequence attached to `φ(z) = z^d + c`:
//!
//! ```text
//! x_1 = c,  x_2 = (-1)^d (c^(d+1) + 1),  x_{n+2} = (-1)^d c x_{n+1}^d + x_n^(d^2)
//! ```
//!
//! together with the 2×2 matrix recurrence that generates it, and a cycle
//! scanner over `F_q × F_q` that turns "for every n" statements into finite checks.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dynamics::{check_binomial, infinity_orbit_raw, DEFAULT_SIZE_LIMIT_BITS};
use crate::error::{invalid, Error, Result};
use crate::finite_field::{FieldElem, FiniteField};
use crate::ring::{Field, Integers, Ring};
use crate::scalars::{int_is_pth_power_up_to_unit, prime_divisors, rat_is_pth_power};

/// Entries of `A_j = [[x, y], [z, w]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XMatState<E> {
    pub j: usize,
    pub x: E,
    pub y: E,
    pub z: E,
    pub w: E,
}

impl<E: Clone> XMatState<E> {
    /// `A_1 = [[c, -1], [1, 0]]`.
    pub fn initial<R: Ring<Elem = E>>(ring: &R, c: &E) -> Self {
        Self { j: 1, x: c.clone(), y: ring.neg(&ring.one()), z: ring.one(), w: ring.zero() }
    }
}

/// `A_{j+1}` from `A_j`:
/// `x' = (-1)^d c x^d + y^d`, `y' = (-1)^(d+1) x^d`, and likewise for `z, w`.
pub fn xmat_next<R: Ring>(ring: &R, state: &XMatState<R::Elem>, d: u64, c: &R::Elem) -> XMatState<R::Elem> {
    let s = ring.sign_pow(d);
    let sc = ring.mul(&s, c);
    let (xd, zd) = (ring.pow(&state.x, d), ring.pow(&state.z, d));
    XMatState {
        j: state.j + 1,
        x: ring.add(&ring.mul(&sc, &xd), &ring.pow(&state.y, d)),
        y: ring.neg(&ring.mul(&s, &xd)),
        z: ring.add(&ring.mul(&sc, &zd), &ring.pow(&state.w, d)),
        w: ring.neg(&ring.mul(&s, &zd)),
    }
}

/// The first `count` terms `x_1, ..., x_count` (index 0 holds `x_1`).
pub fn xseq_generate<R: Ring>(ring: &R, d: u64, c: &R::Elem, count: usize) -> Result<Vec<R::Elem>> {
    xseq_generate_limited(ring, d, c, count, DEFAULT_SIZE_LIMIT_BITS)
}

pub fn xseq_generate_limited<R: Ring>(ring: &R, d: u64, c: &R::Elem, count: usize, limit_bits: u64) -> Result<Vec<R::Elem>> {
    if count == 0 {
        return invalid("at least one term is required");
    }
    if d < 2 {
        return invalid(format!("degree d = {d} < 2"));
    }
    let s = ring.sign_pow(d);
    let sc = ring.mul(&s, c);
    let mut terms = vec![c.clone()];
    let mut total = ring.size_bits(c);
    while terms.len() < count {
        let next = match terms.len() {
            1 => ring.mul(&s, &ring.add(&ring.pow(c, d + 1), &ring.one())),
            n => {
                let a = ring.pow(&terms[n - 2], d * d);
                ring.add(&ring.mul(&sc, &ring.pow(&terms[n - 1], d)), &a)
            }
        };
        total += ring.size_bits(&next);
        if total > limit_bits {
            return Err(Error::SizeLimit { index: terms.len() + 1, what: format!("x-sequence reached {total} bits") });
        }
        terms.push(next);
    }
    Ok(terms)
}

/// One verified statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub n: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct XSeqReport {
    pub checks: Vec<Check>,
    /// Parts skipped because their hypothesis fails, with the reason.
    pub notes: Vec<String>,
}

impl XSeqReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, n: usize, passed: bool) {
        self.checks.push(Check { name: name.into(), n, passed });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Check the matrix-sequence identities over `Z` for `n = 1..=max_n`.
///
/// Parts that need `c` to be a non-unit, or `c ∉ ±Z^p` for every prime `p | d`,
/// are skipped with a note when the hypothesis fails.
pub fn verify_lemma33(d: u64, c: &BigInt, max_n: usize) -> Result<XSeqReport> {
    check_binomial(&Integers, d, c)?;
    if max_n == 0 {
        return invalid("max_n must be >= 1");
    }
    let zz = Integers;
    let mut report = XSeqReport::default();
    let xs = xseq_generate(&zz, d, c, 2 * max_n + 1)?;
    let x = |n: usize| &xs[n - 1];
    let sign = zz.sign_pow(d);

    // recurrence agreement with the matrix form, coprimality, z_{n+1} = (-1)^d x_n
    let mut mat = XMatState::initial(&zz, c);
    for n in 1..=max_n + 1 {
        report.push("matrix x-entry equals x_n", n, &mat.x == x(n));
        let next = xmat_next(&zz, &mat, d, c);
        if n <= max_n {
            report.push("z_{n+1} = (-1)^d x_n", n, next.z == &sign * x(n));
            report.push("gcd(x_{n+1}, x_n) = 1", n, x(n + 1).gcd(x(n)).is_one());
        }
        mat = next;
    }

    // linkage with the orbit of ∞
    let orbit = infinity_orbit_raw(&zz, d, c, 2 * max_n + 1);
    let b = |n: usize| &orbit[n - 1].1;
    for n in 1..=max_n {
        report.push("x_{2n-1} = b_{2n}", n, x(2 * n - 1) == b(2 * n));
        if 2 * n < orbit.len() {
            report.push("x_{2n} = (-1)^d b_{2n+1}", n, *x(2 * n) == &sign * b(2 * n + 1));
        }
    }

    // divisibility by c
    if c.abs().is_one() {
        report.notes.push(format!("divisibility and non-power checks skipped: c = {c} is a unit of Z"));
        return Ok(report);
    }
    for n in 1..=max_n {
        let odd = x(2 * n - 1);
        report.push("c | x_{2n-1}", n, odd.is_multiple_of(c));
        report.push("c | x_{2n} - (-1)^d", n, (x(2 * n) - &sign).is_multiple_of(c));
        report.push("gcd(x_{2n-1}/c, c) = 1", n, odd.is_multiple_of(c) && (odd / c).gcd(c).is_one());
    }

    // non-power and ratio conditions
    let primes = prime_divisors(d);
    let mut hyp_ok = true;
    for &p in &primes {
        if int_is_pth_power_up_to_unit(c, p)? {
            report.notes.push(format!("non-power and ratio checks skipped: c = {c} is ±(a {p}-th power)"));
            hyp_ok = false;
        }
    }
    if !hyp_ok {
        return Ok(report);
    }
    for n in 1..=max_n {
        let odd = x(2 * n - 1);
        let not_power = !odd.is_zero() && primes.iter().all(|&p| !int_is_pth_power_up_to_unit(odd, p).unwrap_or(true));
        report.push("x_{2n-1} not in uZ^p", n, not_power);
    }
    if xs.iter().any(Zero::is_zero) {
        report.notes.push("ratio check skipped: some x_n = 0 (∞ is periodic)".into());
        return Ok(report);
    }
    for n in 1..=max_n {
        let ratio = BigRational::new(x(n + 1).clone(), x(n).clone());
        let free = primes.iter().all(|&p| {
            !rat_is_pth_power(&ratio, p).unwrap_or(true) && !rat_is_pth_power(&-&ratio, p).unwrap_or(true)
        });
        report.push("x_{n+1}/x_n not in ±Q^p", n, free);
    }
    Ok(report)
}

/// Result of walking `(x_n, x_{n+1})` until the first repeated pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCycle {
    /// Number of states before the cycle.
    pub preperiod: usize,
    pub period: usize,
    /// `(x_n, x_{n+1})` for `n = 1..=preperiod + period`.
    pub states: Vec<(FieldElem, FieldElem)>,
    /// `x_{n+1} / x_n` for the same range of `n`.
    pub ratios: Vec<FieldElem>,
}

impl PairCycle {
    /// Index into `states`/`ratios` describing step `n ≥ 1`.
    pub fn slot(&self, n: usize) -> usize {
        let i = n - 1;
        if i < self.states.len() {
            i
        } else {
            self.preperiod + (i - self.preperiod) % self.period
        }
    }

    /// `x_{n+1} / x_n` for any `n ≥ 1`.
    pub fn ratio_at(&self, n: usize) -> &FieldElem {
        &self.ratios[self.slot(n)]
    }

    /// `x_n` for any `n ≥ 1`.
    pub fn term(&self, n: usize) -> &FieldElem {
        &self.states[self.slot(n)].0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairScan {
    Cycle(PairCycle),
    /// `x_index = 0`, i.e. `∞` is periodic.
    ZeroTerm { index: usize },
    CapExceeded { cap: usize },
}

/// Default state cap for the pair scanner.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;

/// Walk the pair map `(a, b) ↦ (b, (-1)^d c b^d + a^(d^2))` on `F_q^2` from
/// `(x_1, x_2)` until a state repeats.
pub fn pair_cycle_scan(field: &FiniteField, d: u64, c: &FieldElem, step_cap: usize) -> Result<PairScan> {
    if step_cap == 0 {
        return invalid("step cap must be >= 1");
    }
    if d < 2 {
        return invalid(format!("degree d = {d} < 2"));
    }
    let sc = field.mul(&field.sign_pow(d), c);
    let first = xseq_generate(field, d, c, 2)?;
    let mut state = (first[0].clone(), first[1].clone());
    for (i, x) in first.iter().enumerate() {
        if field.is_zero(x) {
            return Ok(PairScan::ZeroTerm { index: i + 1 });
        }
    }
    let mut seen: HashMap<(FieldElem, FieldElem), usize> = HashMap::new();
    let mut states = Vec::new();
    loop {
        if let Some(&start) = seen.get(&state) {
            let ratios = states
                .iter()
                .map(|(a, b): &(FieldElem, FieldElem)| field.div(b, a).expect("nonzero term"))
                .collect();
            return Ok(PairScan::Cycle(PairCycle { preperiod: start, period: states.len() - start, states, ratios }));
        }
        if states.len() >= step_cap {
            return Ok(PairScan::CapExceeded { cap: step_cap });
        }
        seen.insert(state.clone(), states.len());
        let (a, b) = &state;
        let next = field.add(&field.mul(&sc, &field.pow(b, d)), &field.pow(a, d * d));
        if field.is_zero(&next) {
            return Ok(PairScan::ZeroTerm { index: states.len() + 3 });
        }
        let new_state = (b.clone(), next);
        states.push(std::mem::replace(&mut state, new_state));
    }
}
