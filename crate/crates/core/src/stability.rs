//! Verdict engines.
//!
//! Over `F_q` the decision is total: irreducibility of `φ` by the binomial
//! criterion, then every ratio `x_{n+1}/x_n` must be `rad(d)`-free, where the
//! infinitely many `n` collapse to the finite cycle of the pair scanner.
//! Over `Z` and `Q[t]` the positive verdicts are guarantees from sufficient
//! conditions; failure of a hypothesis never yields a negative verdict.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dynamics::iterates;
use crate::error::{invalid, Error, Result};
use crate::finite_field::{FieldElem, FiniteField};
use crate::irreducibility::{
    binomial_irred_fq, binomial_irred_ft, binomial_irred_q, certify_irred_q_default, rabin_irreducible,
    to_primitive_integer, IrreducibilityCertificate,
};
use crate::polyring::{is_pth_power_up_to_unit_ft, qt_ring, Poly, PolyRing};
use crate::ring::{Rationals, Ring};
use crate::scalars::{int_is_pth_power_up_to_unit, prime_divisors, rad};
use crate::xseq::{pair_cycle_scan, xseq_generate, Check, PairCycle, PairScan};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    /// Every `g_n` is irreducible; the pair cycle is the finite certificate.
    InverselyStable { certificate: PairCycle },
    /// `g_{failing_n}` is reducible because `x_{ratio_index+1}/x_{ratio_index}` is not `rad(d)`-free.
    NotInverselyStable { failing_n: usize, ratio_index: usize, ratio: FieldElem, certificate: PairCycle },
    PhiReducible { reason: String, certificate: Option<IrreducibilityCertificate> },
    /// `x_index = 0`: `∞` is periodic under `1/φ`.
    InfinityPeriodic { index: usize },
    /// The sufficient conditions hold; `hypotheses` lists what was verified.
    Guaranteed { route: String, hypotheses: Vec<String> },
    /// Some hypothesis of the sufficient condition fails; nothing is claimed.
    NotApplicable { violations: Vec<String> },
    Inconclusive { reason: String },
    InvalidInput { message: String },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::InverselyStable { .. } => "InverselyStable",
            Verdict::NotInverselyStable { .. } => "NotInverselyStable",
            Verdict::PhiReducible { .. } => "PhiReducible",
            Verdict::InfinityPeriodic { .. } => "InfinityPeriodic",
            Verdict::Guaranteed { .. } => "Guaranteed",
            Verdict::NotApplicable { .. } => "NotApplicable",
            Verdict::Inconclusive { .. } => "Inconclusive",
            Verdict::InvalidInput { .. } => "InvalidInput",
        }
    }

    /// 0 on a positive verdict, 1 on a negative or non-applicable one,
    /// 2 when undecided, 64 on invalid input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::InverselyStable { .. } | Verdict::Guaranteed { .. } => 0,
            Verdict::NotInverselyStable { .. }
            | Verdict::PhiReducible { .. }
            | Verdict::InfinityPeriodic { .. }
            | Verdict::NotApplicable { .. } => 1,
            Verdict::Inconclusive { .. } => 2,
            Verdict::InvalidInput { .. } => 64,
        }
    }

    pub fn certificate(&self) -> Option<&PairCycle> {
        match self {
            Verdict::InverselyStable { certificate } | Verdict::NotInverselyStable { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    /// Predicted irreducibility of all of `g_1, ..., g_n` over `F_q`, when the
    /// verdict determines it.
    pub fn predicts_prefix_irreducible(&self, n: usize) -> Option<bool> {
        match self {
            Verdict::InverselyStable { .. } => Some(true),
            // g_1..g_n are irreducible iff the ratios for indices 1..n-1 are all free.
            Verdict::NotInverselyStable { failing_n, .. } => Some(n < *failing_n),
            Verdict::PhiReducible { .. } => Some(false),
            _ => None,
        }
    }
}

fn binomial_reason(over: &str, cert: &IrreducibilityCertificate) -> String {
    match &cert.witness {
        Some(w) => format!("z^d + c fails the binomial criterion{over}: {}", w.describe()),
        None => format!("z^d + c fails the binomial criterion{over}"),
    }
}

fn invalid_verdict(e: Error) -> Verdict {
    Verdict::InvalidInput { message: e.to_string() }
}

/// Decide inverse stability of `z^d + c` over `F_{p^k}`; `c` is a coefficient list
/// over the deterministic modulus chosen by [`FiniteField::with_degree`].
pub fn decide_fq(p: u64, k: usize, d: u64, c: &[u64], step_cap: usize) -> Verdict {
    let field = match FiniteField::with_degree(p, k) {
        Ok(f) => f,
        Err(e) => return invalid_verdict(e),
    };
    match field.elem(c) {
        Ok(c) => decide_fq_in(&field, d, &c, step_cap),
        Err(e) => invalid_verdict(e),
    }
}

pub fn decide_fq_in(field: &FiniteField, d: u64, c: &FieldElem, step_cap: usize) -> Verdict {
    if d < 2 {
        return Verdict::InvalidInput { message: format!("degree d = {d} < 2") };
    }
    if !field.contains(c) {
        return invalid_verdict(Error::ContextMismatch);
    }
    let p = field.p();
    if d % p == 0 {
        return Verdict::PhiReducible { reason: format!("characteristic {p} divides d = {d}"), certificate: None };
    }
    let cert = match binomial_irred_fq(field, d, &field.neg(c)) {
        Ok(cert) => cert,
        Err(e) => return invalid_verdict(e),
    };
    if !cert.is_irreducible() {
        return Verdict::PhiReducible { reason: binomial_reason("", &cert), certificate: Some(cert) };
    }
    let cycle = match pair_cycle_scan(field, d, c, step_cap) {
        Ok(PairScan::Cycle(cycle)) => cycle,
        Ok(PairScan::ZeroTerm { index }) => return Verdict::InfinityPeriodic { index },
        Ok(PairScan::CapExceeded { cap }) => {
            return Verdict::Inconclusive { reason: format!("pair-state cap of {cap} states exceeded") }
        }
        Err(e) => return invalid_verdict(e),
    };
    let m = rad(d);
    for (i, ratio) in cycle.ratios.iter().enumerate() {
        match field.is_m_free(ratio, m) {
            Ok(true) => {}
            Ok(false) => {
                let n = i + 1;
                return Verdict::NotInverselyStable {
                    failing_n: n + 1,
                    ratio_index: n,
                    ratio: ratio.clone(),
                    certificate: cycle,
                };
            }
            Err(e) => return invalid_verdict(e),
        }
    }
    Verdict::InverselyStable { certificate: cycle }
}

/// Sufficient condition over `Z`: `z^d + c` irreducible and `c ∉ ±Z^p` for every prime `p | d`.
pub fn guarantee_z(d: u64, c: &BigInt) -> Verdict {
    if d < 2 {
        return Verdict::InvalidInput { message: format!("degree d = {d} < 2") };
    }
    if c.is_zero() {
        return Verdict::InvalidInput { message: "c = 0".into() };
    }
    if c.abs() == BigInt::from(1) {
        return Verdict::NotApplicable { violations: vec![format!("c = {c} is a unit, so c ∈ uZ^p for every p")] };
    }
    let cert = match binomial_irred_q(d, &BigRational::from_integer(c.clone())) {
        Ok(cert) => cert,
        Err(e) => return invalid_verdict(e),
    };
    if !cert.is_irreducible() {
        return Verdict::PhiReducible { reason: binomial_reason(" over Q", &cert), certificate: Some(cert) };
    }
    let mut violations = Vec::new();
    let mut hypotheses = vec![format!("z^{d} + {c} is irreducible over Q")];
    for p in prime_divisors(d) {
        match int_is_pth_power_up_to_unit(c, p) {
            Ok(true) => violations.push(format!("c = {c} ∈ uZ^{p}")),
            Ok(false) => hypotheses.push(format!("c ∉ uZ^{p}")),
            Err(e) => return invalid_verdict(e),
        }
    }
    if !violations.is_empty() {
        return Verdict::NotApplicable { violations };
    }
    let route = if d % 2 == 1 { "odd degree, irreducible" } else { "even degree, c not a square" };
    Verdict::Guaranteed { route: route.into(), hypotheses }
}

/// Sufficient condition over `Q(t)`: `d ≥ 3`, `c ∈ Q[t]` nonconstant, `z^d + c` irreducible.
pub fn guarantee_ft(d: u64, c: &Poly<BigRational>) -> Verdict {
    if d < 3 {
        return Verdict::InvalidInput { message: format!("the function-field guarantee requires d >= 3, got {d}") };
    }
    if c.degree().unwrap_or(0) == 0 {
        return Verdict::InvalidInput { message: "c must be a nonconstant polynomial in t".into() };
    }
    match binomial_irred_ft(d, c) {
        Err(e) => invalid_verdict(e),
        Ok(cert) if !cert.is_irreducible() => {
            Verdict::PhiReducible { reason: binomial_reason(" over Q(t)", &cert), certificate: Some(cert) }
        }
        Ok(_) => Verdict::Guaranteed {
            route: "function field, d >= 3, c nonconstant".into(),
            hypotheses: vec![format!("z^{d} + ({}) is irreducible over Q(t)", qt_ring().render(c))],
        },
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionFieldReport {
    pub checks: Vec<Check>,
    pub degrees: Vec<usize>,
    pub notes: Vec<String>,
}

impl FunctionFieldReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: String, n: usize, passed: bool) {
        self.checks.push(Check { name, n, passed });
    }
}

/// Checks behind the function-field guarantee for `x_1, ..., x_max_n` over `Q[t]`:
/// the degree law `deg x_n = (d^n - 1)/(d - 1) · deg c`, `gcd(x_{2k}, c) = 1`,
/// `gcd(x_{2k}, x_{2k+1}) = 1`, and `x_{2k} ∉ uR^p` for primes `p | d`.
pub fn verify_thm24_internals(d: u64, c: &Poly<BigRational>, max_n: usize) -> Result<FunctionFieldReport> {
    if d < 3 {
        return invalid(format!("requires d >= 3, got {d}"));
    }
    let Some(deg_c) = c.degree().filter(|&k| k > 0) else {
        return invalid("c must be a nonconstant polynomial in t");
    };
    let ring = qt_ring();
    let mut report = FunctionFieldReport::default();
    let xs = match xseq_generate(&ring, d, c, max_n) {
        Ok(xs) => xs,
        Err(Error::SizeLimit { index, what }) => {
            report.notes.push(format!("size guard stopped generation at x_{index}: {what}"));
            let mut partial = Vec::new();
            for n in 1..index {
                partial = xseq_generate(&ring, d, c, n)?;
            }
            partial
        }
        Err(e) => return Err(e),
    };
    let primes = prime_divisors(d);
    for &p in &primes {
        if is_pth_power_up_to_unit_ft(&ring, c, p)? {
            report.notes.push(format!(
                "c ∈ uR^{p}: the odd-index claim does not apply; only the even-index claim is checked"
            ));
        }
    }
    for (i, x) in xs.iter().enumerate() {
        let n = i + 1;
        let expected = (d.pow(n as u32) - 1) / (d - 1) * deg_c as u64;
        let deg = x.degree().unwrap_or(0);
        report.degrees.push(deg);
        report.push("deg x_n = (d^n - 1)/(d - 1) deg c".into(), n, deg as u64 == expected);
    }
    for n in (2..=xs.len()).step_by(2) {
        let x = &xs[n - 1];
        report.push("gcd(x_n, c) = 1 for even n".into(), n, ring.coprime(x, c));
        if n < xs.len() {
            report.push("gcd(x_n, x_{n+1}) = 1 for even n".into(), n, ring.coprime(x, &xs[n]));
        }
        for &p in &primes {
            report.push(format!("x_n ∉ uR^{p} for even n"), n, !is_pth_power_up_to_unit_ft(&ring, x, p)?);
        }
    }
    Ok(report)
}

/// One row of a cross-validation table. The comparison is on prefixes: once
/// `φ` is reducible and `∞` is periodic, a single later `g_n` of collapsed degree
/// can be irreducible on its own, yet `g_1, ..., g_n` are not all irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthComparison {
    pub n: usize,
    pub degree: usize,
    pub rabin_irreducible: bool,
    /// Rabin's test accepts every `g_1, ..., g_n`.
    pub rabin_prefix_irreducible: bool,
    pub predicted_prefix_irreducible: Option<bool>,
}

impl DepthComparison {
    pub fn agrees(&self) -> bool {
        self.predicted_prefix_irreducible == Some(self.rabin_prefix_irreducible)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub verdict: Verdict,
    pub depths: Vec<DepthComparison>,
    pub truncated: bool,
}

impl CrossValidation {
    pub fn agrees(&self) -> bool {
        self.depths.iter().all(DepthComparison::agrees)
    }
}

pub const DEFAULT_DEGREE_CEILING: usize = 2000;

/// Compare the decision with Rabin's test on `g_1, ..., g_max_depth`.
pub fn crossvalidate_fq(
    field: &FiniteField,
    d: u64,
    c: &FieldElem,
    max_depth: usize,
    degree_ceiling: usize,
    step_cap: usize,
) -> Result<CrossValidation> {
    let verdict = decide_fq_in(field, d, c, step_cap);
    if let Verdict::InvalidInput { message } = &verdict {
        return invalid(message.clone());
    }
    let ring = PolyRing::new(field.clone());
    let mut depths = Vec::new();
    let mut truncated = false;
    let reachable = (1..=max_depth)
        .take_while(|&n| (d as usize).checked_pow(n as u32).is_some_and(|deg| deg <= degree_ceiling))
        .count();
    if reachable < max_depth {
        truncated = true;
    }
    if d % field.p() == 0 {
        // Only g_1 = z^d + c is available when the characteristic divides d.
        let mut g1 = vec![field.zero(); d as usize + 1];
        g1[0] = c.clone();
        g1[d as usize] = field.one();
        let g1 = ring.from_coeffs(g1);
        if reachable >= 1 {
            let irreducible = rabin_irreducible(&ring, &g1);
            depths.push(DepthComparison {
                n: 1,
                degree: d as usize,
                rabin_irreducible: irreducible,
                rabin_prefix_irreducible: irreducible,
                predicted_prefix_irreducible: verdict.predicts_prefix_irreducible(1),
            });
        }
        return Ok(CrossValidation { verdict, depths, truncated: truncated || max_depth > 1 });
    }
    let mut prefix = true;
    for it in iterates(field, d, c, reachable)? {
        let irreducible = rabin_irreducible(&ring, &it.g);
        prefix &= irreducible;
        depths.push(DepthComparison {
            n: it.n,
            degree: it.g.degree().unwrap_or(0),
            rabin_irreducible: irreducible,
            rabin_prefix_irreducible: prefix,
            predicted_prefix_irreducible: verdict.predicts_prefix_irreducible(it.n),
        });
    }
    Ok(CrossValidation { verdict, depths, truncated })
}

/// Certify `g_1, ..., g_depth` irreducible over `Q` (Eisenstein or a good
/// reduction); `Inconclusive` entries mean no certificate was found.
pub fn certify_iterates_q(d: u64, c: &BigInt, depth: usize, budget_size: usize) -> Result<Vec<IrreducibilityCertificate>> {
    let c = BigRational::from_integer(c.clone());
    iterates(&Rationals, d, &c, depth)?
        .iter()
        .map(|it| certify_irred_q_default(&to_primitive_integer(&it.g), budget_size))
        .collect()
}
