//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Every criterion runs even when an earlier one fails.

use std::io::Write as _;
use std::time::{Duration, Instant};

use holoproof_cli::run;
use holoproof_core::exact::{Polynomial, Rational, RationalFunction};
use holoproof_core::oeis::{
    a001711_recurrence, builtin_case, egf_bracket_a045406, egf_bracket_denominator,
    mathar_recurrence, mathar_reduced_lhs, parse_bfile, BFile,
};
use holoproof_core::recurrence::{guess, sweep, PRecurrence};
use holoproof_core::series::{
    build_f, closed_form_a001711, closed_form_a001711_table, closed_form_a045406,
    closed_form_a045406_table, egf_coefficients, factorial, stirling_cycle_column, Provenance,
    SequenceTable,
};
use holoproof_core::symbolic::HarmonicAffineExpr;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const PROPERTY_CASES: u32 = 512;
const SEED: u64 = 0x5eed_2021;
const A045406_BFILE: &str = include_str!("../../core/fixtures/b045406.txt");
const A001711_BFILE: &str = include_str!("../../core/fixtures/b001711.txt");

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn a045406(hi: i64) -> SequenceTable {
    let mut values = vec![BigInt::one()];
    values.extend(
        closed_form_a045406_table(3, hi)
            .unwrap()
            .values()
            .iter()
            .cloned(),
    );
    SequenceTable::new(2, values, Provenance::ClosedForm)
}

fn value_reproduction() -> Outcome {
    let start = Instant::now();
    let printed = ints(&[1, 3, -1, 0, 4, -28, 188, -1368, 11016, -98208]);
    let closed: Vec<BigInt> = (3..=11).map(|n| closed_form_a045406(n).unwrap()).collect();
    check(closed == printed[1..], || {
        format!("closed form 3..11 = {closed:?}")
    })?;
    let egf = egf_coefficients(&build_f(11).unwrap(), 2).unwrap();
    check(egf.values() == printed, || {
        format!("egf 2..11 = {:?}", egf.values())
    })?;
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "a(2..11) reproduced exactly in {:.3} s",
        elapsed.as_secs_f64()
    ))
}

fn bracket_reduction() -> Outcome {
    let cleared = egf_bracket_a045406().scale(&egf_bracket_denominator());
    let (alpha, beta) = cleared.reduce_to_alpha_beta(-3);
    let (two, minus_three) = (
        RationalFunction::from_int(2),
        RationalFunction::from_int(-3),
    );
    check(alpha == two && beta == minus_three, || {
        format!("got ({alpha}, {beta})")
    })?;
    Ok(format!("(alpha, beta) = ({alpha}, {beta})"))
}

fn mathar_reduction() -> Outcome {
    let e = mathar_reduced_lhs();
    for anchor in -6..=-2 {
        let (alpha, beta) = e.reduce_to_alpha_beta(anchor);
        check(alpha.is_zero() && beta.is_zero(), || {
            format!("anchor {anchor}: ({alpha}, {beta})")
        })?;
    }
    Ok("(alpha, beta) = (0, 0) at anchors -6..-2".into())
}

fn mathar_sweep() -> Outcome {
    let start = Instant::now();
    let seq = a045406(5000);
    let report = sweep(&mathar_recurrence(), &seq, 5, 5000).map_err(|e| e.to_string())?;
    check(report.passed(), || {
        format!(
            "nonzero residuals: {:?}",
            &report.failures[..report.failures.len().min(3)]
        )
    })?;
    let mut rng = StdRng::seed_from_u64(SEED);
    for _ in 0..50 {
        let n = rng.random_range(5..=5000i64);
        check(
            seq.get(n).unwrap() == &closed_form_a045406(n).unwrap(),
            || format!("spot check n = {n}"),
        )?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "residual 0 for n = 5..5000, 50 spot checks agree, {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn twin() -> Outcome {
    let seq = closed_form_a001711_table(0, 2000).map_err(|e| e.to_string())?;
    check(
        seq.len() == 2001 && seq.values().iter().all(|v| v.is_positive()),
        || "non-positive value".into(),
    )?;
    for n in [0, 1, 2, 1000, 2000] {
        check(
            seq.get(n).unwrap() == &closed_form_a001711(n).unwrap(),
            || format!("n = {n}"),
        )?;
    }
    let report = sweep(&a001711_recurrence(), &seq, 2, 2000).map_err(|e| e.to_string())?;
    check(report.passed(), || {
        format!("nonzero residuals: {:?}", report.failures.first())
    })?;
    Ok("positive integers on 0..2000, residual 0 on 2..2000".into())
}

fn stirling_bridge() -> Outcome {
    let column = stirling_cycle_column(300, 2);
    let mut h = Rational::zero();
    for n in 2..=300i64 {
        h += &Rational::new(1, n - 1).unwrap();
        let rhs = Rational::from(factorial(n - 1).unwrap()) * h.clone();
        check(rhs == Rational::from(column[n as usize].clone()), || {
            format!("n = {n}")
        })?;
    }
    Ok("c(n,2) = (n-1)! H(n-1) for n = 2..300".into())
}

fn egf_equivalence() -> Outcome {
    let table = egf_coefficients(&build_f(200).unwrap(), 2).map_err(|e| e.to_string())?;
    let closed = closed_form_a045406_table(3, 200).map_err(|e| e.to_string())?;
    for (n, v) in closed.iter() {
        check(table.get(n).unwrap() == v, || format!("n = {n}"))?;
        check(&closed_form_a045406(n).unwrap() == v, || {
            format!("direct n = {n}")
        })?;
    }
    Ok("n! [x^n] F = closed form for n = 3..200".into())
}

fn guesser_recovery() -> Outcome {
    let cases: [(&str, &str, PRecurrence); 2] = [
        ("A045406", A045406_BFILE, mathar_recurrence()),
        ("A001711", A001711_BFILE, a001711_recurrence()),
    ];
    let mut shown = Vec::new();
    for (id, text, expected) in cases {
        let seq = parse_bfile(text.as_bytes())
            .unwrap()
            .to_table()
            .take_first(25);
        let found = guess(&seq, 2, 2).map_err(|e| format!("{id}: {e}"))?;
        check(found.first() == Some(&expected), || {
            format!("{id}: got {found:?}")
        })?;
        for rec in &found {
            for n in rec.valid_from()..=seq.last_index() {
                let r = rec.residual(&seq, n).map_err(|e| e.to_string())?;
                check(r.is_zero(), || format!("{id}: candidate fails at n = {n}"))?;
            }
        }
        shown.push(format!("{id}: {}", found[0]));
    }
    Ok(shown.join(" | "))
}

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: PROPERTY_CASES,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (-60i64..60, 1i64..40).prop_map(|(n, d)| Rational::new(n, d).unwrap()),
        (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::new(n, d).unwrap()),
    ]
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-9i64..10, 1i64..5), 0..5).prop_map(|cs| {
        Polynomial::new(
            cs.into_iter()
                .map(|(n, d)| Rational::new(n, d).unwrap())
                .collect(),
        )
    })
}

fn hexpr() -> impl Strategy<Value = HarmonicAffineExpr> {
    let coeff = (-5i64..6, -5i64..6, -4i64..4).prop_map(|(a, b, root)| {
        RationalFunction::new(
            Polynomial::from_ints(&[a, b]),
            Polynomial::shifted_var(root),
        )
        .unwrap()
    });
    (
        prop::collection::vec((coeff.clone(), -4i64..3), 0..4),
        coeff,
    )
        .prop_map(|(terms, rem)| {
            terms
                .into_iter()
                .fold(HarmonicAffineExpr::constant(rem), |acc, (c, s)| {
                    acc.add(&HarmonicAffineExpr::term(c, s))
                })
        })
}

/// A fault applied to the A045406 fixture before `verify --bfile`.
#[derive(Debug, Clone)]
enum Fault {
    None,
    /// Add `delta` to a(n).
    Alter {
        n: i64,
        delta: i64,
    },
    /// Drop an interior line, leaving a gap.
    Drop {
        n: i64,
    },
    /// Repeat a line.
    Duplicate {
        n: i64,
    },
    Garbage,
}

fn fault() -> impl Strategy<Value = Fault> {
    let nonzero = prop_oneof![-1000i64..0, 1i64..1000];
    prop_oneof![
        Just(Fault::None),
        (2i64..=80, nonzero).prop_map(|(n, delta)| Fault::Alter { n, delta }),
        (3i64..80).prop_map(|n| Fault::Drop { n }),
        (2i64..=80).prop_map(|n| Fault::Duplicate { n }),
        Just(Fault::Garbage),
    ]
}

fn apply(fault: &Fault) -> String {
    let entries = parse_bfile(A045406_BFILE.as_bytes()).unwrap();
    let mut lines: Vec<String> = entries.render().lines().map(str::to_string).collect();
    let at = |n: i64| (n - 2) as usize;
    match *fault {
        Fault::None => {}
        Fault::Alter { n, delta } => {
            let v = &entries.entries()[at(n)].1 + delta;
            lines[at(n)] = format!("{n} {v}");
        }
        Fault::Drop { n } => {
            lines.remove(at(n));
        }
        Fault::Duplicate { n } => {
            let line = lines[at(n)].clone();
            lines.insert(at(n), line);
        }
        Fault::Garbage => lines.insert(5, "seven 7".into()),
    }
    lines.join("\n") + "\n"
}

fn exit_code_contract(runner: &mut TestRunner) -> Result<(), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("b045406.txt");
    runner
        .run(&(fault(), 5i64..40), |(fault, to)| {
            std::fs::write(&path, apply(&fault)).unwrap();
            let args = [
                "holoproof",
                "verify",
                "A045406",
                "--json",
                "--to",
                &to.to_string(),
                "--bfile",
            ];
            let mut out = Vec::new();
            let mut err = Vec::new();
            let code = run(
                args.iter()
                    .map(|s| s.to_string())
                    .chain([path.display().to_string()]),
                &mut out,
                &mut err,
            );
            let expected = match fault {
                Fault::None => 0,
                Fault::Alter { .. } => 1,
                _ => 2,
            };
            prop_assert_eq!(
                code,
                expected,
                "{:?}: {}",
                fault,
                String::from_utf8_lossy(&err)
            );
            if code == 2 {
                prop_assert!(out.is_empty() && !err.is_empty());
                return Ok(());
            }
            let report: serde_json::Value = serde_json::from_slice(&out)
                .map_err(|e| TestCaseError::fail(format!("bad JSON: {e}")))?;
            let passes = report["passes"].as_array().unwrap();
            let failed: Vec<&serde_json::Value> =
                passes.iter().filter(|p| p["status"] == "fail").collect();
            prop_assert_eq!(report["exit_code"].as_i64(), Some(code as i64));
            prop_assert_eq!(code == 0, failed.is_empty());
            if let Fault::Alter { n, .. } = fault {
                let needle = format!("n = {n}:");
                prop_assert!(
                    failed
                        .iter()
                        .any(|p| p["detail"].as_str().unwrap().contains(&needle)),
                    "no failing pass names n = {}",
                    n
                );
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn property_suites() -> Outcome {
    let mut laws: Vec<(&str, Result<(), String>)> = Vec::new();
    let mut r = runner();
    laws.push((
        "rational field",
        r.run(&(rational(), rational(), rational()), |(a, b, c)| {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.recip().unwrap()).is_one());
            }
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));
    let mut r = runner();
    laws.push((
        "polynomial ring",
        r.run(&(poly(), poly(), poly()), |(p, q, s)| {
            prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
            prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
            prop_assert_eq!(&p * &q, &q * &p);
            if !p.is_zero() && !q.is_zero() {
                prop_assert_eq!(
                    (&p * &q).degree(),
                    Some(p.degree().unwrap() + q.degree().unwrap())
                );
            }
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));
    let mut r = runner();
    laws.push((
        "normalize idempotent",
        r.run(&(hexpr(), -5i64..3), |(e, a)| {
            let once = e.normalize(a);
            prop_assert_eq!(once.normalize(a), once);
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));
    let mut r = runner();
    laws.push((
        "normalize preserves value",
        r.run(&(hexpr(), -5i64..3, 8i64..40), |(e, a, n)| {
            if let Ok(v) = e.eval(n) {
                prop_assert_eq!(e.normalize(a).eval(n).unwrap(), v);
            }
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));
    let mut r = runner();
    laws.push((
        "b-file round trip",
        r.run(
            &(-5i64..100, prop::collection::vec(any::<i128>(), 0..40)),
            |(offset, values)| {
                let text: String = values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| format!("{} {v}\n", offset + i as i64))
                    .collect();
                let parsed: BFile = parse_bfile(text.as_bytes()).unwrap();
                prop_assert_eq!(parsed.render(), text);
                Ok(())
            },
        )
        .map_err(|e| e.to_string()),
    ));
    let mut r = runner();
    laws.push((
        "CLI exit codes under fault injection",
        exit_code_contract(&mut r),
    ));

    let failed: Vec<String> = laws
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    check(failed.is_empty(), || failed.join("; "))?;
    Ok(format!(
        "{} laws x {PROPERTY_CASES} seeded cases",
        laws.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("value reproduction", value_reproduction),
        ("e.g.f. bracket reduces to (2, -3)", bracket_reduction),
        ("Mathar expression reduces to (0, 0)", mathar_reduction),
        ("sweep n = 5..5000", mathar_sweep),
        ("A001711 twin", twin),
        ("Stirling/harmonic bridge", stirling_bridge),
        ("e.g.f./closed-form equivalence", egf_equivalence),
        ("guesser recovery", guesser_recovery),
        ("property suites", property_suites),
    ];
    assert!(builtin_case("A045406").is_some());
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  [{}] {name}: {detail} ({secs:.2} s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL  [{}] {name}: {detail} ({secs:.2} s)", i + 1);
            }
        }
        let _ = std::io::stdout().flush();
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
