//! Named verification suites. Each check enumerates a finite family of cases,
//! compares two independent computations, and counts disagreements.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charsums::{cubic_weil_exhaustive, enumerate_cor28, quad_sum_exhaustive};
use crate::dynamics::iterates;
use crate::error::{Error, Result};
use crate::finite_field::FiniteField;
use crate::galois_norm::{first_level_norm_identity, BinomialExtension};
use crate::irreducibility::Irreducibility;
use crate::polyring::{mason_stothers_check, qt_ring, Poly, PolyRing};
use crate::ring::{Rationals, Ring};
use crate::scalars::{divisors, is_prime, rad};
use crate::stability::{
    certify_iterates_q, crossvalidate_fq, guarantee_z, verify_thm24_internals, Verdict, DEFAULT_DEGREE_CEILING,
};
use crate::xseq::{verify_lemma33, DEFAULT_STEP_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemma33,
    Norm,
    Charsum,
    Crossval,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 4] = [Suite::Lemma33, Suite::Norm, Suite::Charsum, Suite::Crossval];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma33 => "lemma33",
            Suite::Norm => "norm",
            Suite::Charsum => "charsum",
            Suite::Crossval => "crossval",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::CONCRETE.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::Lemma33, Suite::Norm, Suite::Charsum, Suite::Crossval, Suite::All]
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

const MAX_DETAILS: usize = 5;

/// Outcome of one named statement over a family of cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfCheck {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// The first few failing cases.
    pub details: Vec<String>,
}

impl SelfCheck {
    fn new(name: &str) -> Self {
        Self { name: name.into(), cases: 0, failures: 0, details: Vec::new() }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.details.len() < MAX_DETAILS {
                self.details.push(case());
            }
        }
    }

    fn merge(&mut self, other: SelfCheck) {
        self.cases += other.cases;
        self.failures += other.failures;
        for d in other.details {
            if self.details.len() < MAX_DETAILS {
                self.details.push(d);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<SelfCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(SelfCheck::passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

pub fn run(suite: Suite, seed: u64) -> Result<SelftestReport> {
    let suites = suite.expand().into_iter().map(|s| run_suite(s, seed)).collect::<Result<_>>()?;
    Ok(SelftestReport { seed, suites })
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Lemma33 => integer_suite(seed)?,
        Suite::Norm => norm_suite(seed)?,
        Suite::Charsum => charsum_suite()?,
        Suite::Crossval => crossval_suite()?,
        Suite::All => unreachable!("expanded by run"),
    };
    Ok(SuiteReport { suite, checks })
}

// --- x-sequence, degree laws, polynomial abc --------------------------------

fn integer_suite(seed: u64) -> Result<Vec<SelfCheck>> {
    Ok(vec![xseq_identities()?, degree_law_q()?, function_field_internals()?, mason_stothers_random(seed, 500)?])
}

pub fn xseq_identities() -> Result<SelfCheck> {
    let mut check = SelfCheck::new("x-sequence identities over Z (d in {2,3}, c in {2,3,5,6,7}, n <= 5)");
    for d in [2u64, 3] {
        for c in [2i64, 3, 5, 6, 7] {
            let report = verify_lemma33(d, &BigInt::from(c), 5)?;
            for item in &report.checks {
                check.record(item.passed, || format!("d={d} c={c} n={}: {}", item.n, item.name));
            }
        }
    }
    Ok(check)
}

/// `deg g_n = d^n` and `f_{n+1} ∝ g_n^d` over `Q`.
pub fn degree_law_q() -> Result<SelfCheck> {
    let mut check = SelfCheck::new("deg g_n = d^n and f_(n+1) = g_n^d up to scaling over Q");
    let ring = PolyRing::new(Rationals);
    for (d, c) in [(2u64, 3i64), (3, 2)] {
        let its = iterates(&Rationals, d, &BigRational::from_integer(c.into()), 4)?;
        for w in its.windows(2) {
            let (prev, next) = (&w[0], &w[1]);
            check.record(prev.g.degree() == Some(d.pow(prev.n as u32) as usize), || {
                format!("d={d} c={c}: deg g_{} = {:?}", prev.n, prev.g.degree())
            });
            let gd = ring.pow(&prev.g, d);
            check.record(ring.monic(&next.f) == ring.monic(&gd), || format!("d={d} c={c}: f_{} vs g_{}^d", next.n, prev.n));
        }
    }
    Ok(check)
}

pub fn function_field_internals() -> Result<SelfCheck> {
    let mut check = SelfCheck::new("x_n over Q[t]: degree law, coprimality, even terms not cubes up to unit (d = 3)");
    let r = qt_ring();
    for c in [r.from_i64s(&[0, 1]), r.from_i64s(&[1, 0, 1])] {
        let report = verify_thm24_internals(3, &c, 4)?;
        for item in &report.checks {
            check.record(item.passed, || format!("c={} n={}: {}", r.render(&c), item.n, item.name));
        }
    }
    Ok(check)
}

fn random_qt(rng: &mut ChaCha8Rng, ring: &PolyRing<Rationals>, max_deg: usize) -> Poly<BigRational> {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs = (0..=deg).map(|_| BigRational::from_integer(rng.gen_range(-6i64..=6).into())).collect();
    ring.from_coeffs(coeffs)
}

/// Polynomial abc inequality on `count` random coprime triples of degree at most 20,
/// plus the tight triple `t^2 + (2t + 1) = (t + 1)^2`.
pub fn mason_stothers_random(seed: u64, count: usize) -> Result<SelfCheck> {
    let mut check = SelfCheck::new("max deg(a, b, c) <= n0(abc) - 1 for coprime a + b = c");
    let ring = qt_ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0usize;
    while check.cases < count {
        attempts += 1;
        if attempts > 100 * count {
            return Err(Error::InvalidInput("could not generate enough coprime triples".into()));
        }
        // Mix generic triples with ones that carry repeated factors.
        let mut a = random_qt(&mut rng, &ring, 20);
        if rng.gen_bool(0.5) {
            let h = random_qt(&mut rng, &ring, 4);
            a = ring.mul(&a, &ring.pow(&h, rng.gen_range(2..=4)));
        }
        let b = random_qt(&mut rng, &ring, 20);
        if a.degree().unwrap_or(0) > 20 {
            continue;
        }
        let c = ring.add(&a, &b);
        if c.degree().unwrap_or(0) > 20 {
            continue;
        }
        let Ok(ms) = mason_stothers_check(&ring, &a, &b, &c) else { continue };
        check.record(ms.holds, || format!("a={} b={}", ring.render(&a), ring.render(&b)));
    }
    let (a, b, c) = (ring.from_i64s(&[0, 0, 1]), ring.from_i64s(&[1, 2]), ring.from_i64s(&[1, 2, 1]));
    let tight = mason_stothers_check(&ring, &a, &b, &c)?;
    check.record(tight.holds && tight.is_tight() && tight.n0 == 3, || "t^2 + (2t+1) = (t+1)^2 not tight".into());
    Ok(check)
}

// --- finite-field norms --------------------------------------------------------

fn norm_suite(seed: u64) -> Result<Vec<SelfCheck>> {
    Ok(vec![
        mobius_norm_exhaustive()?,
        norm_conjugate_product()?,
        m_free_descends()?,
        norm_multiplicative(seed, 200)?,
        first_level_chain()?,
        m_free_vs_quantifier(49)?,
    ])
}

/// Closed form against the conjugate product for every `(a, b, e, t)`, `ae ≠ 0`,
/// over `F_3` and `F_5` with `d ∈ {2, 3}` and every irreducible `z^d + m`.
pub fn mobius_norm_exhaustive() -> Result<SelfCheck> {
    let mut check = SelfCheck::new("norm of (a g + b)/(e g + t) in F_p(g), g^d = -m: closed form vs conjugates");
    for p in [3u64, 5] {
        let f = FiniteField::prime(p)?;
        for d in [2u64, 3] {
            for m in f.units() {
                let Ok(ext) = BinomialExtension::new(&f, &m, d) else { continue };
                for a in f.units() {
                    for e in f.units() {
                        for b in f.elements() {
                            for t in f.elements() {
                                let closed = ext.norm_mobius(&a, &b, &e, &t)?;
                                let frob = ext.norm_mobius_frobenius(&a, &b, &e, &t)?;
                                check.record(closed == frob, || {
                                    format!("p={p} d={d} m={m:?} (a,b,e,t)=({a:?},{b:?},{e:?},{t:?})")
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(check)
}

pub fn norm_conjugate_product() -> Result<SelfCheck> {
    let mut check = SelfCheck::new("alpha^((q-1)/(p-1)) equals the product of conjugates");
    for (p, k) in [(2u64, 3usize), (3, 2), (3, 3), (5, 2), (7, 2)] {
        let f = FiniteField::with_degree(p, k)?;
        for a in f.elements() {
            check.record(f.ext_norm(&a)? == f.ext_norm_frobenius(&a)?, || format!("q={p}^{k} a={a:?}"));
        }
        for x in f.prime_subfield().elements() {
            let base = f.prime_subfield();
            let expected = base.pow(&x, k as u64);
            check.record(f.ext_norm(&f.embed(&x))? == expected, || format!("q={p}^{k}: base element {x:?}"));
        }
    }
    Ok(check)
}

/// `α` is `rad(t)`-free in `F_{q^n}` iff its norm is `rad(t)`-free in `F_q`.
pub fn m_free_descends() -> Result<SelfCheck> {
    let mut check = SelfCheck::new("alpha is m-free in F_(q^n) iff its norm is m-free in F_q");
    for q in [3u64, 5] {
        let base = FiniteField::prime(q)?;
        for n in [2usize, 3] {
            let ext = FiniteField::with_degree(q, n)?;
            for m in divisors(q - 1).into_iter().filter(|&m| m > 1 && rad(m) == m) {
                for a in ext.units() {
                    let lhs = ext.is_m_free(&a, m)?;
                    let rhs = base.is_m_free(&ext.ext_norm(&a)?, m)?;
                    check.record(lhs == rhs, || format!("q={q} n={n} m={m} a={a:?}"));
                }
            }
        }
    }
    Ok(check)
}

pub fn norm_multiplicative(seed: u64, samples: usize) -> Result<SelfCheck> {
    let mut check = SelfCheck::new("norm(ab) = norm(a) norm(b), random samples");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6e6f726d);
    for (p, k) in [(5u64, 3usize), (7, 2), (3, 4)] {
        let f = FiniteField::with_degree(p, k)?;
        let base = f.prime_subfield();
        for _ in 0..samples {
            let a = f.elem_from_index(rng.gen_range(0..f.q()));
            let b = f.elem_from_index(rng.gen_range(0..f.q()));
            let lhs = f.ext_norm(&f.mul(&a, &b))?;
            let rhs = base.mul(&f.ext_norm(&a)?, &f.ext_norm(&b)?);
            check.record(lhs == rhs, || format!("q={p}^{k} a={a:?} b={b:?}"));
        }
    }
    Ok(check)
}

/// `N((cβ - 1)/β) = (-1)^d x_2/x_1` whenever `z^d + c` is irreducible.
pub fn first_level_chain() -> Result<SelfCheck> {
    let mut check = SelfCheck::new("first norm-chain level: N((c b - 1)/b) = (-1)^d x_2/x_1");
    for p in [5u64, 7, 11, 13] {
        let f = FiniteField::prime(p)?;
        for d in [2u64, 3] {
            for c in f.units() {
                match first_level_norm_identity(&f, d, &c) {
                    Ok((norm, expected)) => check.record(norm == expected, || format!("p={p} d={d} c={c:?}")),
                    Err(Error::InvalidInput(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(check)
}

/// Prime powers up to `bound`.
pub fn prime_powers_up_to(bound: u64) -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    for p in (2..=bound).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut k = 1;
        while q <= bound {
            out.push((p, k));
            q *= p;
            k += 1;
        }
    }
    out.sort_by_key(|&(p, k)| p.pow(k as u32));
    out
}

/// The power-residue test against the quantifier definition, every `q ≤ bound`,
/// every `m | q - 1`, every `α ∈ F_q^*`.
pub fn m_free_vs_quantifier(bound: u64) -> Result<SelfCheck> {
    let fields = prime_powers_up_to(bound);
    let parts = fields
        .par_iter()
        .map(|&(p, k)| {
            let mut check = SelfCheck::new("");
            let f = FiniteField::with_degree(p, k)?;
            let q = f.q() as u64;
            for m in divisors(q - 1) {
                for a in f.units() {
                    let ok = f.is_m_free(&a, m)? == f.is_m_free_brute(&a, m)?;
                    check.record(ok, || format!("q={q} m={m} a={a:?}"));
                }
            }
            Ok(check)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut check = SelfCheck::new("m-free by power residues agrees with the quantifier definition, q <= 49");
    parts.into_iter().for_each(|c| check.merge(c));
    Ok(check)
}

// --- character sums ------------------------------------------------------------

fn charsum_suite() -> Result<Vec<SelfCheck>> {
    Ok(vec![quadratic_sums()?, cubic_sums()?, fermat_enumeration(17)?, fermat_enumeration(257)?])
}

pub fn quadratic_sums() -> Result<SelfCheck> {
    let mut check = SelfCheck::new("sum of chi(ax^2+bx+c): direct vs closed form, p <= 13");
    for p in [3u64, 5, 7, 11, 13] {
        let bad = quad_sum_exhaustive(p)?;
        check.cases += ((p - 1) * p * p) as usize;
        for (a, b, c) in bad {
            check.failures += 1;
            if check.details.len() < MAX_DETAILS {
                check.details.push(format!("p={p} (a,b,c)=({a},{b},{c})"));
            }
        }
    }
    Ok(check)
}

pub fn cubic_sums() -> Result<SelfCheck> {
    let mut check = SelfCheck::new("|sum of chi(f(x))| <= 2 sqrt(p) for monic distinct-root cubics, p <= 31");
    for p in (3..=31).filter(|&p| is_prime(p)) {
        let (checked, violations) = cubic_weil_exhaustive(p)?;
        check.cases += checked;
        check.failures += violations;
        if violations > 0 && check.details.len() < MAX_DETAILS {
            check.details.push(format!("p={p}: {violations} violations"));
        }
    }
    Ok(check)
}

pub fn fermat_enumeration(p: u64) -> Result<SelfCheck> {
    let mut check = SelfCheck::new(&format!("Fermat-prime enumeration at p = {p}: identity, bound, stability"));
    let r = enumerate_cor28(p, true, DEFAULT_STEP_CAP)?;
    check.record(r.identity_ok, || format!("8S = {} but p + 1 + sum = {}", 8 * r.s, p as i64 + 1 + r.cubic_sum));
    check.record(r.indicator_ok, || format!("indicator sum {} vs S = {}", r.indicator_sum, r.s));
    check.record(r.bound_ok, || format!("S = {} below bound {}", r.s, r.bound));
    for row in &r.rows {
        check.record(row.pattern_ok, || format!("c={}: x prefix {:?}", row.c, row.x_prefix));
        let stable = matches!(row.verdict, Some(Verdict::InverselyStable { .. }));
        check.record(stable, || format!("c={}: {:?}", row.c, row.verdict.as_ref().map(Verdict::name)));
    }
    if p == 17 {
        check.record(r.qualifying_c == [5, 10] && r.cubic_sum == -2 && r.bound == 1, || format!("{r:?}"));
    }
    Ok(check)
}

// --- cross-validation ------------------------------------------------------------

fn crossval_suite() -> Result<Vec<SelfCheck>> {
    let (agree, degrees) = crossval_grid(3)?;
    Ok(vec![agree, degrees, guarantee_certification(3, 25)?])
}

/// The grid `q ∈ {5, 7, 9, 13, 17}`, `d ∈ {2, 3, 4}` with `rad(d) | q - 1`.
pub fn crossval_grid_points() -> Vec<(u64, usize, u64)> {
    let mut out = Vec::new();
    for (p, k) in [(5u64, 1usize), (7, 1), (3, 2), (13, 1), (17, 1)] {
        let q = p.pow(k as u32);
        for d in [2u64, 3, 4] {
            if (q - 1) % rad(d) == 0 {
                out.push((p, k, d));
            }
        }
    }
    out
}

/// Decision vs Rabin on `g_1..g_depth` and the degree law, over the whole grid.
pub fn crossval_grid(depth: usize) -> Result<(SelfCheck, SelfCheck)> {
    let mut cases = Vec::new();
    for (p, k, d) in crossval_grid_points() {
        let f = FiniteField::with_degree(p, k)?;
        for c in f.units() {
            cases.push((f.clone(), d, c));
        }
    }
    let parts = cases
        .par_iter()
        .map(|(f, d, c)| {
            let cv = crossvalidate_fq(f, *d, c, depth, DEFAULT_DEGREE_CEILING, DEFAULT_STEP_CAP)?;
            let mut agree = SelfCheck::new("");
            let mut degrees = SelfCheck::new("");
            let label = || format!("q={} d={d} c={c:?}", f.q());
            agree.record(!cv.truncated && cv.depths.len() == depth, || format!("{}: truncated", label()));
            for row in &cv.depths {
                agree.record(row.agrees(), || {
                    format!("{} n={}: {} vs rabin prefix {}", label(), row.n, cv.verdict.name(), row.rabin_prefix_irreducible)
                });
                // With φ reducible the degree can collapse when ∞ is periodic.
                if !matches!(cv.verdict, Verdict::PhiReducible { .. }) {
                    degrees.record(row.degree as u64 == d.pow(row.n as u32), || {
                        format!("{} deg g_{} = {}", label(), row.n, row.degree)
                    });
                }
            }
            Ok((agree, degrees))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut agree = SelfCheck::new("finite-field decision agrees with Rabin on g_1..g_3 over the grid");
    let mut degrees = SelfCheck::new("deg g_n = d^n over the grid when phi is irreducible");
    for (a, d) in parts {
        agree.merge(a);
        degrees.merge(d);
    }
    Ok((agree, degrees))
}

/// Guaranteed inputs over `Z` must never have a reducible `g_n`, `n ≤ depth`.
pub fn guarantee_certification(depth: usize, budget: usize) -> Result<SelfCheck> {
    let mut check = SelfCheck::new("guaranteed binomials over Z: g_n never refuted, n <= 3");
    for (d, c) in [(3u64, 2i64), (2, 3), (5, 3), (3, -4)] {
        let c = BigInt::from(c);
        let v = guarantee_z(d, &c);
        check.record(matches!(v, Verdict::Guaranteed { .. }), || format!("d={d} c={c}: {}", v.name()));
        for (i, cert) in certify_iterates_q(d, &c, depth, budget)?.iter().enumerate() {
            check.record(cert.verdict != Irreducibility::Reducible, || format!("d={d} c={c}: g_{} refuted", i + 1));
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Lemma33, Suite::Norm, Suite::Charsum, Suite::Crossval, Suite::All] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn prime_powers() {
        let qs: Vec<u64> = prime_powers_up_to(16).iter().map(|&(p, k)| p.pow(k as u32)).collect();
        assert_eq!(qs, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]);
    }

    #[test]
    fn quick_suites_pass() {
        assert!(xseq_identities().unwrap().passed());
        assert!(mason_stothers_random(1, 50).unwrap().passed());
        assert!(m_free_vs_quantifier(16).unwrap().passed());
        assert!(first_level_chain().unwrap().passed());
    }

    #[test]
    fn same_seed_same_report() {
        assert_eq!(mason_stothers_random(9, 30).unwrap(), mason_stothers_random(9, 30).unwrap());
    }
}
