//! `invstab`: decide, certify and self-check inverse stability of `z^d + c`.
//!
//! Exit codes: 0 positive verdict or passing run, 1 negative verdict or failing
//! check, 2 inconclusive, 64 usage error.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use invstab_core::charsums::{enumerate_cor28, Cor28Report};
use invstab_core::parse::parse_qt;
use invstab_core::polyring::qt_ring;
use invstab_core::selftest::{self, SelftestReport, Suite};
use invstab_core::stability::{certify_iterates_q, decide_fq, guarantee_ft, guarantee_z, verify_thm24_internals};
use invstab_core::{BigInt, FiniteField, Verdict};

const SCHEMA_VERSION: u32 = 1;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "invstab", version, about = "Inverse stability of z^d + c over finite fields, Z and Q[t]")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RingArg {
    Z,
    Ft,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide inverse stability over F_{p^k}.
    DecideFq {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        d: u64,
        /// An integer, or comma-separated coefficients (low degree first) when k > 1.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Maximum number of pair states visited.
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Check the sufficient conditions over Z or Q[t].
    Guarantee {
        #[arg(long, value_enum)]
        ring: RingArg,
        #[arg(long)]
        d: u64,
        /// An integer for --ring z, a polynomial in t for --ring ft (e.g. "t^2+1").
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Over Z: try to certify g_1..g_depth irreducible. Over Q[t]: check x_1..x_depth.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        /// Also run the bounded-depth certification (z) or internal checks (ft).
        #[arg(long)]
        internals: bool,
        /// Number of primes tried by the certification.
        #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Enumerate the qualifying c for a Fermat prime p = 2^(n+1) + 1.
    EnumerateCor28 {
        #[arg(long)]
        p: u64,
        /// Decide each qualifying c with decide-fq.
        #[arg(long)]
        verify_stability: bool,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Run the verification suites.
    Selftest {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Lemma33,
    Norm,
    Charsum,
    Crossval,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Lemma33 => Suite::Lemma33,
            SuiteArg::Norm => Suite::Norm,
            SuiteArg::Charsum => Suite::Charsum,
            SuiteArg::Crossval => Suite::Crossval,
            SuiteArg::All => Suite::All,
        }
    }
}

/// Rendered output plus exit code.
struct Output {
    body: String,
    code: u8,
}

fn usage(msg: impl std::fmt::Display) -> Output {
    eprintln!("error: {msg}");
    Output { body: String::new(), code: EXIT_USAGE }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    if !out.body.is_empty() {
        if let Err(e) = write_output(cli.out.as_ref(), &out.body) {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(out.code)
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("INVSTAB_THREADS") else { return Ok(()) };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| format!("INVSTAB_THREADS={raw:?} is not a positive integer"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn write_output(path: Option<&PathBuf>, body: &str) -> anyhow::Result<()> {
    match path {
        Some(path) => {
            let mut f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            f.write_all(body.as_bytes())?;
        }
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.command {
        Command::DecideFq { p, k, d, c, cap } => cmd_decide_fq(cli.format, *p, *k, *d, c, *cap as usize),
        Command::Guarantee { ring, d, c, depth, internals, budget } => {
            cmd_guarantee(cli.format, *ring, *d, c, *depth as usize, *internals, *budget as usize)
        }
        Command::EnumerateCor28 { p, verify_stability, cap } => {
            cmd_enumerate(cli.format, *p, *verify_stability, *cap as usize)
        }
        Command::Selftest { suite, seed } => cmd_selftest(cli.format, (*suite).into(), *seed),
    }
}

fn json_body(mut value: Value) -> anyhow::Result<String> {
    if let Value::Object(map) = &mut value {
        let mut with_version = Map::new();
        with_version.insert("schema_version".into(), json!(SCHEMA_VERSION));
        with_version.append(map);
        value = Value::Object(with_version);
    }
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

fn csv_body<F>(header: &[&str], fill: F) -> anyhow::Result<String>
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    fill(&mut w)?;
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Parse `--c` for `decide-fq`: one residue, or `k` comma-separated coefficients.
fn parse_fq_c(raw: &str, p: u64) -> Result<Vec<u64>, String> {
    raw.split(',')
        .map(|part| {
            let v: i128 = part.trim().parse().map_err(|_| format!("--c: {part:?} is not an integer"))?;
            Ok(v.rem_euclid(p as i128) as u64)
        })
        .collect()
}

/// Witness payload: the verdict without the cycle certificate, which is reported separately.
fn witness(v: &Verdict) -> anyhow::Result<Value> {
    let mut value = serde_json::to_value(v)?;
    if let Value::Object(map) = &mut value {
        map.remove("verdict");
        map.remove("certificate");
        if map.is_empty() {
            return Ok(Value::Null);
        }
        if let Verdict::PhiReducible { certificate: Some(cert), .. } = v {
            map.insert("certificate".into(), serde_json::to_value(cert)?);
        }
    }
    Ok(value)
}

fn cmd_decide_fq(format: Format, p: u64, k: usize, d: u64, raw_c: &str, cap: usize) -> anyhow::Result<Output> {
    if p < 2 {
        return Ok(usage(format!("--p {p} is not prime")));
    }
    let c = match parse_fq_c(raw_c, p) {
        Ok(c) => c,
        Err(msg) => return Ok(usage(msg)),
    };
    let verdict = decide_fq(p, k, d, &c, cap);
    let code = verdict.exit_code() as u8;
    if let Verdict::InvalidInput { message } = &verdict {
        return Ok(usage(message));
    }
    let modulus = FiniteField::with_degree(p, k)?.modulus().to_vec();
    let c_json = if k == 1 && c.len() == 1 { json!(c[0]) } else { json!(c) };
    let cert = verdict.certificate();
    let body = match format {
        Format::Json => json_body(json!({
            "field": {"p": p, "k": k, "modulus": modulus},
            "d": d,
            "c": c_json,
            "verdict": verdict.name(),
            "preperiod": cert.map(|c| c.preperiod),
            "period": cert.map(|c| c.period),
            "ratios": cert.map(|c| &c.ratios),
            "witness": witness(&verdict)?,
        }))?,
        Format::Csv => csv_body(&["p", "k", "d", "c", "verdict", "preperiod", "period", "failing_n"], |w| {
            let failing = match &verdict {
                Verdict::NotInverselyStable { failing_n, .. } => failing_n.to_string(),
                _ => String::new(),
            };
            w.write_record([
                p.to_string(),
                k.to_string(),
                d.to_string(),
                raw_c.to_string(),
                verdict.name().to_string(),
                cert.map(|c| c.preperiod.to_string()).unwrap_or_default(),
                cert.map(|c| c.period.to_string()).unwrap_or_default(),
                failing,
            ])
        })?,
        Format::Text => {
            let mut s = format!("z^{d} + {raw_c} over F_{p}^{k}: {}\n", verdict.name());
            if let Some(cert) = cert {
                s += &format!("preperiod {}, period {}\n", cert.preperiod, cert.period);
            }
            match &verdict {
                Verdict::NotInverselyStable { failing_n, ratio_index, ratio, .. } => {
                    s += &format!("g_{failing_n} is reducible: x_{}/x_{ratio_index} = {ratio:?} is not rad(d)-free\n", ratio_index + 1)
                }
                Verdict::PhiReducible { reason, .. } | Verdict::Inconclusive { reason } => s += &format!("{reason}\n"),
                _ => {}
            }
            s
        }
    };
    Ok(Output { body, code })
}

fn cmd_guarantee(
    format: Format,
    ring: RingArg,
    d: u64,
    raw_c: &str,
    depth: usize,
    internals: bool,
    budget: usize,
) -> anyhow::Result<Output> {
    let mut extra = Map::new();
    let (verdict, c_render) = match ring {
        RingArg::Z => {
            let Ok(c) = raw_c.trim().parse::<BigInt>() else {
                return Ok(usage(format!("--c: {raw_c:?} is not an integer")));
            };
            let verdict = guarantee_z(d, &c);
            if internals && matches!(verdict, Verdict::Guaranteed { .. }) {
                let certs = certify_iterates_q(d, &c, depth, budget)?;
                extra.insert("certificates".into(), serde_json::to_value(certs)?);
            }
            (verdict, c.to_string())
        }
        RingArg::Ft => {
            let c = match parse_qt(raw_c) {
                Ok(c) => c,
                Err(e) => return Ok(usage(format!("--c: {e}"))),
            };
            let verdict = guarantee_ft(d, &c);
            if internals && matches!(verdict, Verdict::Guaranteed { .. }) {
                let report = verify_thm24_internals(d, &c, depth)?;
                extra.insert("internals".into(), serde_json::to_value(report)?);
            }
            (verdict, qt_ring().render(&c))
        }
    };
    if let Verdict::InvalidInput { message } = &verdict {
        return Ok(usage(message));
    }
    let code = verdict.exit_code() as u8;
    let ring_name = if ring == RingArg::Z { "z" } else { "ft" };
    let body = match format {
        Format::Json => {
            let mut value = json!({
                "ring": ring_name,
                "d": d,
                "c": c_render,
                "verdict": verdict.name(),
                "witness": witness(&verdict)?,
            });
            value.as_object_mut().expect("object").append(&mut extra);
            json_body(value)?
        }
        Format::Csv => csv_body(&["ring", "d", "c", "verdict"], |w| {
            w.write_record([ring_name, &d.to_string(), &c_render, verdict.name()])
        })?,
        Format::Text => {
            let mut s = format!("z^{d} + ({c_render}) over {}: {}\n", if ring == RingArg::Z { "Q" } else { "Q(t)" }, verdict.name());
            match &verdict {
                Verdict::Guaranteed { route, hypotheses } => {
                    s += &format!("route: {route}\n");
                    hypotheses.iter().for_each(|h| s += &format!("  holds: {h}\n"));
                }
                Verdict::NotApplicable { violations } => violations.iter().for_each(|v| s += &format!("  fails: {v}\n")),
                Verdict::PhiReducible { reason, .. } => s += &format!("{reason}\n"),
                _ => {}
            }
            s
        }
    };
    Ok(Output { body, code })
}

fn cmd_enumerate(format: Format, p: u64, verify: bool, cap: usize) -> anyhow::Result<Output> {
    let report: Cor28Report = match enumerate_cor28(p, verify, cap) {
        Ok(r) => r,
        Err(e) => return Ok(usage(e)),
    };
    let code = if report.all_ok(verify) { 0 } else { 1 };
    let body = match format {
        Format::Json => json_body(serde_json::to_value(&report)?)?,
        Format::Csv => csv_body(&["c", "legendre(c-1)", "legendre(c)", "legendre(c+1)", "verdict"], |w| {
            for row in &report.rows {
                w.write_record([
                    row.c.to_string(),
                    row.legendre_c_minus_1.to_string(),
                    row.legendre_c.to_string(),
                    row.legendre_c_plus_1.to_string(),
                    row.verdict.as_ref().map(|v| v.name().to_string()).unwrap_or_default(),
                ])?;
            }
            Ok(())
        })?,
        Format::Text => {
            let mut s = format!(
                "p = {}, d = 2^{} = {}\nS = {} (bound {}), cubic sum {}, identity {}\nqualifying c: {:?}\n",
                report.p,
                report.n,
                report.d,
                report.s,
                report.bound,
                report.cubic_sum,
                if report.identity_ok { "holds" } else { "FAILS" },
                report.qualifying_c
            );
            if verify {
                let stable = report.per_c_verdicts().filter(|v| matches!(v, Verdict::InverselyStable { .. })).count();
                s += &format!("InverselyStable: {stable} of {}\n", report.s);
            }
            s
        }
    };
    Ok(Output { body, code })
}

fn cmd_selftest(format: Format, suite: Suite, seed: u64) -> anyhow::Result<Output> {
    let report: SelftestReport = selftest::run(suite, seed)?;
    let code = if report.passed() { 0 } else { 1 };
    let body = match format {
        Format::Json => json_body(json!({"passed": report.passed(), "report": report}))?,
        Format::Csv => csv_body(&["suite", "check", "cases", "failures"], |w| {
            for s in &report.suites {
                for c in &s.checks {
                    w.write_record([s.suite.name(), &c.name, &c.cases.to_string(), &c.failures.to_string()])?;
                }
            }
            Ok(())
        })?,
        Format::Text => {
            let mut s = String::new();
            for suite in &report.suites {
                s += &format!("[{}]\n", suite.suite);
                for c in &suite.checks {
                    let mark = if c.passed() { "PASS" } else { "FAIL" };
                    s += &format!("  {mark} {} ({} cases, {} failures)\n", c.name, c.cases, c.failures);
                    c.details.iter().for_each(|d| s += &format!("       {d}\n"));
                }
            }
            s += &format!("{}\n", if report.passed() { "all checks passed" } else { "some checks FAILED" });
            s
        }
    };
    Ok(Output { body, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fq_c_parsing() {
        assert_eq!(parse_fq_c("2", 5).unwrap(), vec![2]);
        assert_eq!(parse_fq_c("-3", 5).unwrap(), vec![2]);
        assert_eq!(parse_fq_c("1, 2", 3).unwrap(), vec![1, 2]);
        assert!(parse_fq_c("1;2", 3).is_err());
    }

    #[test]
    fn witness_drops_cycle_data() {
        let v = decide_fq(7, 1, 3, &[3], 1000);
        let w = witness(&v).unwrap();
        assert!(w.get("certificate").is_none());
        assert_eq!(w["failing_n"], 4);
        assert_eq!(witness(&decide_fq(5, 1, 2, &[2], 1000)).unwrap(), Value::Null);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
