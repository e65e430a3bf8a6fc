//! Irreducibility criteria.
//!
//! Binomial criteria over `Q`, `Q(t)` and `F_q`, Rabin's test over `F_q`,
//! and a semi-decision certifier over `Q` (Eisenstein, then reduction mod p).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::finite_field::{FieldElem, FiniteField};
use crate::polyring::{nth_root_qt, Poly, PolyRing};
use crate::ring::{Integers, Rationals, Ring};
use crate::scalars::{first_primes, prime_divisors, rad, rat_4k4_root, rat_pth_root};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    BinomialCriterion,
    Rabin,
    ModPReduction(u64),
    Eisenstein(u64),
    Factorization,
}

/// Evidence attached to a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `-a = root^prime` in the coefficient field.
    PthRoot { prime: u64, root: String },
    /// `a = 4 root^4`.
    FourKFour { root: String },
    /// `b` is a `prime`-th power in `F_q`; `root` is given when small enough to find.
    PowerResidue { prime: u64, root: Option<FieldElem> },
    /// A necessary condition of the binomial criterion that fails.
    FailedCondition { condition: String },
    /// A nontrivial factor.
    Factor { factor: String },
    /// The prime at which a reduction or Eisenstein argument certifies.
    Prime { prime: u64 },
}

impl Witness {
    /// One-line human-readable form.
    pub fn describe(&self) -> String {
        match self {
            Witness::PthRoot { prime, root } => format!("-a = ({root})^{prime}"),
            Witness::FourKFour { root } => format!("a = 4 ({root})^4"),
            Witness::PowerResidue { prime, root: Some(root) } => format!("b = {root:?}^{prime}"),
            Witness::PowerResidue { prime, root: None } => format!("b is a {prime}-th power"),
            Witness::FailedCondition { condition } => condition.clone(),
            Witness::Factor { factor } => format!("factor {factor}"),
            Witness::Prime { prime } => format!("prime {prime}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityCertificate {
    pub verdict: Irreducibility,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl IrreducibilityCertificate {
    fn irreducible(method: Method, witness: Option<Witness>) -> Self {
        Self { verdict: Irreducibility::Irreducible, method, witness }
    }

    fn reducible(method: Method, witness: Witness) -> Self {
        Self { verdict: Irreducibility::Reducible, method, witness: Some(witness) }
    }

    pub fn is_irreducible(&self) -> bool {
        self.verdict == Irreducibility::Irreducible
    }

    pub fn is_reducible(&self) -> bool {
        self.verdict == Irreducibility::Reducible
    }
}

/// Binomial criterion for `X^d + a` over `Q`.
pub fn binomial_irred_q(d: u64, a: &BigRational) -> Result<IrreducibilityCertificate> {
    if d < 2 {
        return invalid(format!("binomial degree {d} < 2"));
    }
    if a.is_zero() {
        return Ok(IrreducibilityCertificate::reducible(
            Method::BinomialCriterion,
            Witness::PthRoot { prime: prime_divisors(d)[0], root: "0".into() },
        ));
    }
    let neg = -a;
    for p in prime_divisors(d) {
        if let Some(root) = rat_pth_root(&neg, p)? {
            return Ok(IrreducibilityCertificate::reducible(
                Method::BinomialCriterion,
                Witness::PthRoot { prime: p, root: root.to_string() },
            ));
        }
    }
    if d % 4 == 0 {
        if let Some(root) = rat_4k4_root(a)? {
            return Ok(IrreducibilityCertificate::reducible(
                Method::BinomialCriterion,
                Witness::FourKFour { root: root.to_string() },
            ));
        }
    }
    Ok(IrreducibilityCertificate::irreducible(Method::BinomialCriterion, None))
}

/// Binomial criterion for `X^d + a` over `Q(t)` with `a ∈ Q[t]`.
pub fn binomial_irred_ft(d: u64, a: &Poly<BigRational>) -> Result<IrreducibilityCertificate> {
    if d < 2 {
        return invalid(format!("binomial degree {d} < 2"));
    }
    if a.is_zero() {
        return invalid("a = 0");
    }
    let ring = crate::polyring::qt_ring();
    let neg = ring.neg(a);
    for p in prime_divisors(d) {
        let Ok(exp) = u32::try_from(p) else { continue };
        if let Some(root) = nth_root_qt(&ring, &neg, exp)? {
            return Ok(IrreducibilityCertificate::reducible(
                Method::BinomialCriterion,
                Witness::PthRoot { prime: p, root: ring.render(&root) },
            ));
        }
    }
    if d % 4 == 0 {
        let quarter = ring.scale(a, &BigRational::new(BigInt::one(), BigInt::from(4)));
        if let Some(root) = nth_root_qt(&ring, &quarter, 4)? {
            return Ok(IrreducibilityCertificate::reducible(
                Method::BinomialCriterion,
                Witness::FourKFour { root: ring.render(&root) },
            ));
        }
    }
    Ok(IrreducibilityCertificate::irreducible(Method::BinomialCriterion, None))
}

/// Largest field for which an explicit root is searched by enumeration.
const ROOT_SEARCH_LIMIT: u128 = 1 << 16;

/// Binomial criterion for `x^t - b` over `F_q`: irreducible iff
/// `rad(t) | q - 1`, `b` is `rad(t)`-free, and `q ≡ 1 (mod 4)` when `4 | t`.
pub fn binomial_irred_fq(field: &FiniteField, t: u64, b: &FieldElem) -> Result<IrreducibilityCertificate> {
    if t < 2 {
        return invalid(format!("binomial degree {t} < 2"));
    }
    if !field.contains(b) {
        return Err(crate::Error::ContextMismatch);
    }
    let fail = |condition: String| {
        Ok(IrreducibilityCertificate::reducible(Method::BinomialCriterion, Witness::FailedCondition { condition }))
    };
    if field.is_zero(b) {
        return fail("b = 0".into());
    }
    let r = rad(t);
    if !field.divides_q_minus_1(r) {
        return fail(format!("rad({t}) = {r} does not divide q - 1 = {}", field.q() - 1));
    }
    for l in prime_divisors(t) {
        if !field.is_m_free(b, l)? {
            let root = (field.q() <= ROOT_SEARCH_LIMIT)
                .then(|| field.elements().find(|y| field.pow(y, l) == *b))
                .flatten();
            return Ok(IrreducibilityCertificate::reducible(
                Method::BinomialCriterion,
                Witness::PowerResidue { prime: l, root },
            ));
        }
    }
    if t % 4 == 0 && field.q() % 4 != 1 {
        return fail(format!("4 | {t} but q = {} is not 1 mod 4", field.q()));
    }
    Ok(IrreducibilityCertificate::irreducible(Method::BinomialCriterion, None))
}

fn mul_mod_poly(ring: &PolyRing<FiniteField>, a: &Poly<FieldElem>, b: &Poly<FieldElem>, f: &Poly<FieldElem>) -> Poly<FieldElem> {
    ring.divmod(&ring.mul(a, b), f).expect("nonzero modulus").1
}

fn pow_mod_poly(ring: &PolyRing<FiniteField>, a: &Poly<FieldElem>, mut e: u128, f: &Poly<FieldElem>) -> Poly<FieldElem> {
    let mut base = ring.divmod(a, f).expect("nonzero modulus").1;
    let mut acc = ring.one();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_poly(ring, &acc, &base, f);
        }
        e >>= 1;
        if e > 0 {
            base = mul_mod_poly(ring, &base, &base, f);
        }
    }
    acc
}

/// The `q`-power Frobenius on `F_q[z]/(f)`, stored as the images of `1, z, ..., z^(n-1)`.
struct FrobeniusMatrix {
    columns: Vec<Poly<FieldElem>>,
}

impl FrobeniusMatrix {
    fn new(ring: &PolyRing<FiniteField>, f: &Poly<FieldElem>) -> Self {
        let n = f.degree().expect("nonzero");
        let zq = pow_mod_poly(ring, &ring.var_poly(), ring.base().q(), f);
        let mut columns = Vec::with_capacity(n);
        let mut acc = ring.one();
        for _ in 0..n {
            columns.push(acc.clone());
            acc = mul_mod_poly(ring, &acc, &zq, f);
        }
        Self { columns }
    }

    /// `h^q mod f`; linear because the coefficients are fixed by the `q`-power map.
    fn apply(&self, ring: &PolyRing<FiniteField>, h: &Poly<FieldElem>) -> Poly<FieldElem> {
        let field = ring.base();
        let n = self.columns.len();
        let mut out = vec![field.zero(); n];
        for (hj, col) in h.coeffs().iter().zip(&self.columns) {
            if field.is_zero(hj) {
                continue;
            }
            for (slot, c) in out.iter_mut().zip(col.coeffs()) {
                *slot = field.add(slot, &field.mul(hj, c));
            }
        }
        ring.from_coeffs(out)
    }
}

/// Rabin's irreducibility test over `F_q`.
pub fn rabin_irred_fq(ring: &PolyRing<FiniteField>, f: &Poly<FieldElem>) -> IrreducibilityCertificate {
    let f = ring.monic(f);
    let n = match f.degree() {
        None | Some(0) => {
            return IrreducibilityCertificate::reducible(
                Method::Rabin,
                Witness::FailedCondition { condition: "constant polynomial".into() },
            )
        }
        Some(1) => return IrreducibilityCertificate::irreducible(Method::Rabin, None),
        Some(n) => n,
    };
    let z = ring.var_poly();
    let frob = FrobeniusMatrix::new(ring, &f);
    // powers[i] = z^(q^i) mod f
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(ring.divmod(&z, &f).expect("nonzero").1);
    for i in 1..=n {
        let next = frob.apply(ring, &powers[i - 1]);
        powers.push(next);
    }
    if powers[n] != powers[0] {
        return IrreducibilityCertificate::reducible(
            Method::Rabin,
            Witness::FailedCondition { condition: format!("z^(q^{n}) != z mod f") },
        );
    }
    for l in prime_divisors(n as u64) {
        let h = ring.sub(&powers[n / l as usize], &z);
        let g = ring.gcd(&h, &f).expect("f nonzero");
        if g.degree() != Some(0) {
            return IrreducibilityCertificate::reducible(Method::Rabin, Witness::Factor { factor: ring.render(&g) });
        }
    }
    IrreducibilityCertificate::irreducible(Method::Rabin, None)
}

pub fn rabin_irreducible(ring: &PolyRing<FiniteField>, f: &Poly<FieldElem>) -> bool {
    rabin_irred_fq(ring, f).is_irreducible()
}

/// Reduce an integer polynomial modulo `p`.
pub fn reduce_mod_p(f: &Poly<BigInt>, field: &FiniteField) -> Poly<FieldElem> {
    let p = BigInt::from(field.p());
    PolyRing::new(field.clone()).from_coeffs(
        f.coeffs()
            .iter()
            .map(|c| field.from_u64(c.mod_floor(&p).to_u64().expect("residue below p")))
            .collect(),
    )
}

fn content(f: &Poly<BigInt>) -> BigInt {
    f.coeffs().iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn eisenstein_at(f: &Poly<BigInt>, p: u64) -> bool {
    let p = BigInt::from(p);
    let c = f.coeffs();
    let n = c.len() - 1;
    !(&c[n] % &p).is_zero()
        && c[..n].iter().all(|x| (x % &p).is_zero())
        && !(&c[0] % (&p * &p)).is_zero()
}

/// Whether `f mod p` keeps its degree and stays squarefree.
pub fn is_good_reduction(f: &Poly<BigInt>, p: u64) -> bool {
    let lc = f.leading().expect("nonzero");
    if (lc % BigInt::from(p)).is_zero() {
        return false;
    }
    let field = FiniteField::prime(p).expect("prime");
    let ring = PolyRing::new(field.clone());
    let fp = reduce_mod_p(f, &field);
    ring.coprime(&fp, &ring.derivative(&fp))
}

/// Primes used by [`certify_irred_q_default`]: the first `size` primes of good reduction.
pub fn default_prime_budget(f: &Poly<BigInt>, size: usize) -> Vec<u64> {
    first_primes(size * 20).into_iter().filter(|&p| is_good_reduction(f, p)).take(size).collect()
}

/// Semi-decision for irreducibility over `Q` of a primitive integer polynomial.
/// Returns `Irreducible` (Eisenstein or an irreducible good reduction) or
/// `Inconclusive`; never `Reducible`.
pub fn certify_irred_q(f: &Poly<BigInt>, prime_budget: &[u64]) -> Result<IrreducibilityCertificate> {
    let Some(n) = f.degree() else {
        return invalid("zero polynomial");
    };
    if n == 0 {
        return invalid("constant polynomial");
    }
    if !content(f).abs().is_one() {
        return invalid("polynomial is not primitive");
    }
    let mut eisenstein_candidates = first_primes(25);
    eisenstein_candidates.extend_from_slice(prime_budget);
    eisenstein_candidates.sort_unstable();
    eisenstein_candidates.dedup();
    if let Some(p) = eisenstein_candidates.into_iter().find(|&p| eisenstein_at(f, p)) {
        return Ok(IrreducibilityCertificate::irreducible(Method::Eisenstein(p), Some(Witness::Prime { prime: p })));
    }
    for &p in prime_budget {
        if !crate::scalars::is_prime(p) || !is_good_reduction(f, p) {
            continue;
        }
        let field = FiniteField::prime(p)?;
        let ring = PolyRing::new(field.clone());
        if rabin_irreducible(&ring, &reduce_mod_p(f, &field)) {
            return Ok(IrreducibilityCertificate::irreducible(
                Method::ModPReduction(p),
                Some(Witness::Prime { prime: p }),
            ));
        }
    }
    Ok(IrreducibilityCertificate { verdict: Irreducibility::Inconclusive, method: Method::ModPReduction(0), witness: None })
}

pub fn certify_irred_q_default(f: &Poly<BigInt>, budget_size: usize) -> Result<IrreducibilityCertificate> {
    certify_irred_q(f, &default_prime_budget(f, budget_size))
}

/// Primitive integer polynomial proportional to a rational one.
pub fn to_primitive_integer(f: &Poly<BigRational>) -> Poly<BigInt> {
    PolyRing::new(Integers).from_coeffs(crate::polyring::primitive_integer_part(f))
}

/// Rational polynomial with the given integer coefficients.
pub fn to_rational(f: &Poly<BigInt>) -> Poly<BigRational> {
    PolyRing::new(Rationals).from_coeffs(f.coeffs().iter().cloned().map(BigRational::from_integer).collect())
}
