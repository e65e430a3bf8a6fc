use invstab_core::charsums::{enumerate_cor28, quad_char_sum};
use invstab_core::dynamics::iterates;
use invstab_core::irreducibility::rabin_irreducible;
use invstab_core::parse::parse_qt;
use invstab_core::scalars::{is_prime, rad};
use invstab_core::selftest::{crossval_grid_points, guarantee_certification, m_free_descends};
use invstab_core::stability::{crossvalidate_fq, decide_fq, decide_fq_in, guarantee_ft, DEFAULT_DEGREE_CEILING};
use invstab_core::xseq::DEFAULT_STEP_CAP;
use invstab_core::{FiniteField, PolyRing, Verdict};
use proptest::prelude::*;

#[test]
fn decision_soundness_on_grid() {
    for (p, k, d) in crossval_grid_points() {
        let f = FiniteField::with_degree(p, k).unwrap();
        let ring = PolyRing::new(f.clone());
        for c in f.units() {
            let v = decide_fq_in(&f, d, &c, DEFAULT_STEP_CAP);
            let gs = iterates(&f, d, &c, 3).unwrap();
            let irreducible: Vec<bool> = gs.iter().map(|it| rabin_irreducible(&ring, &it.g)).collect();
            match v {
                Verdict::InverselyStable { .. } => assert!(irreducible.iter().all(|&b| b), "q={p}^{k} d={d} c={c:?}"),
                Verdict::NotInverselyStable { failing_n, .. } if failing_n <= 3 => {
                    assert!(!irreducible[failing_n - 1], "q={p}^{k} d={d} c={c:?} n={failing_n}");
                    assert!(irreducible[..failing_n - 1].iter().all(|&b| b));
                }
                Verdict::NotInverselyStable { .. } => {}
                // g_1 = φ.
                Verdict::PhiReducible { .. } => assert!(!irreducible[0]),
                other => panic!("unexpected verdict {other:?}"),
            }
            assert_eq!(matches!(v, Verdict::PhiReducible { .. }), !irreducible[0]);
        }
    }
}

#[test]
fn guarantees_never_refuted() {
    let check = guarantee_certification(3, 25).unwrap();
    assert!(check.passed(), "{:?}", check.details);
}

#[test]
fn m_free_descends_through_norm() {
    let check = m_free_descends().unwrap();
    assert!(check.passed() && check.cases > 0, "{:?}", check.details);
}

#[test]
fn largest_fermat_prime_identity() {
    let r = enumerate_cor28(65537, false, DEFAULT_STEP_CAP).unwrap();
    assert!(r.identity_ok && r.indicator_ok && r.bound_ok);
    assert!(r.rows.iter().all(|row| row.pattern_ok));
    assert_eq!(r.d, 1 << 15);
}

#[test]
fn largest_fermat_prime_sample_decisions() {
    let r = enumerate_cor28(65537, false, DEFAULT_STEP_CAP).unwrap();
    for &c in r.qualifying_c.iter().take(20) {
        let v = decide_fq(65537, 1, 1 << 15, &[c], DEFAULT_STEP_CAP);
        assert!(matches!(v, Verdict::InverselyStable { .. }), "c = {c}: {v:?}");
    }
}

#[test]
fn parsed_function_field_inputs() {
    assert!(matches!(guarantee_ft(3, &parse_qt("t").unwrap()), Verdict::Guaranteed { .. }));
    assert!(matches!(guarantee_ft(3, &parse_qt("t^2 + 1").unwrap()), Verdict::Guaranteed { .. }));
    assert!(matches!(guarantee_ft(3, &parse_qt("t^3").unwrap()), Verdict::PhiReducible { .. }));
    assert!(matches!(guarantee_ft(4, &parse_qt("t^2").unwrap()), Verdict::Guaranteed { .. }));
    assert!(matches!(guarantee_ft(4, &parse_qt("-4t^4").unwrap()), Verdict::PhiReducible { .. }));
}

#[test]
fn verdict_json_round_trips() {
    for c in 1..17 {
        let v = decide_fq(17, 1, 4, &[c], DEFAULT_STEP_CAP);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<Verdict>(&json).unwrap(), v);
    }
}

fn small_prime() -> impl Strategy<Value = u64> {
    (3u64..120).prop_filter("prime", |&p| is_prime(p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decision_matches_rabin_at_depth_two(p in small_prime(), d in 2u64..7, c in 1u64..1000) {
        let f = FiniteField::prime(p).unwrap();
        let c = f.from_u64(c % p);
        prop_assume!(c.residue() != 0 && d % p != 0 && (p - 1) % rad(d) == 0);
        let cv = crossvalidate_fq(&f, d, &c, 2, DEFAULT_DEGREE_CEILING, DEFAULT_STEP_CAP).unwrap();
        prop_assert!(cv.agrees(), "{:?}", cv);
    }

    #[test]
    fn quadratic_closed_form(p in small_prime(), a in 1i64..500, b in -500i64..500, c in -500i64..500) {
        prop_assume!(a % p as i64 != 0);
        let s = quad_char_sum(p, a, b, c).unwrap();
        prop_assert_eq!(s.direct, s.closed_form);
    }

    #[test]
    fn decision_is_deterministic(p in small_prime(), d in 2u64..9, c in 1u64..1000) {
        prop_assert_eq!(decide_fq(p, 1, d, &[c % p], 10_000), decide_fq(p, 1, d, &[c % p], 10_000));
    }
}
