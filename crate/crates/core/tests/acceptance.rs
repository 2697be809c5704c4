//! Acceptance criteria 1-11. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::time::Instant;

use lt_core::arith::{is_square, sieve_primes, FundamentalDiscriminant};
use lt_core::chebotarev::{
    all_classes_occur, asymptote_fit, bound_profile, class_frequencies, count_de, count_pea,
    count_pek, make_window, mixed_frobenius_check, pi_tilde_c, smoothed_count, BoundMode,
    Predicate, WindowKind,
};
use lt_core::elliptic::{ap, ap_by_enumeration, ap_table, ApTable, EllipticCurve};
use lt_core::groups::{mixed_group, set_ccal};
use lt_core::verify::{borel_checks, mixed_checks, run_suite, Suite, VerifyOptions};

const X_MAX: u64 = 1_000_000;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn tail(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!(": {}", bad.join("; "))
    }
}

fn c1_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for (a, b) in [(1, 1), (0, 1), (-1, 0), (2, 3), (-4, 4)] {
        let e = EllipticCurve::new(a, b).unwrap();
        for p in sieve_primes(2000)
            .unwrap()
            .iter()
            .filter(|&p| e.is_counted_prime(p))
        {
            checked += 1;
            let fast = ap(&e, p).unwrap();
            let slow = ap_by_enumeration(&e, p);
            if fast != slow {
                mismatches.push(format!("({a},{b}) p={p}: {fast} vs {slow}"));
            }
        }
        // the table engine must agree with the Legendre sum
        for r in &ap_table(&e, 2000).records {
            if r.a != ap(&e, r.p).unwrap() {
                mismatches.push(format!("({a},{b}) table p={}", r.p));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        mismatches.is_empty() && secs < 60.0,
        format!(
            "{checked} (curve, p) pairs, {} mismatches, {secs:.2} s",
            mismatches.len()
        ),
    )
}

fn c2_hasse(table: &ApTable) -> Outcome {
    let mut bad = 0;
    for r in &table.records {
        let hasse = (r.a as i128).pow(2) < 4 * r.p as i128;
        let disc = r.a * r.a - 4 * r.p as i64;
        let d = r.fund.get();
        let divides = disc % d == 0 && is_square((disc / d) as u64);
        if !(hasse && divides && disc == r.disc) {
            bad += 1;
        }
    }
    outcome(
        bad == 0,
        format!("{} primes <= 10^6, {bad} violations", table.len()),
    )
}

fn c3_borel() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for ell in [5, 7, 11, 13] {
        for (what, got, want) in borel_checks(ell).unwrap() {
            n += 1;
            if got != want {
                bad.push(format!("ℓ={ell} {what}: {got} != {want}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{n} exact cardinalities for ℓ in 5,7,11,13{}", tail(&bad)),
    )
}

fn c4_mixed() -> Outcome {
    let mut bad = Vec::new();
    for (d, ell) in [(-4, 5), (-4, 13), (-7, 11)] {
        match mixed_checks(d, ell) {
            Ok(rows) => {
                for (what, got, want) in rows {
                    if got != want {
                        bad.push(format!("({d},{ell}) {what}: {got} != {want}"));
                    }
                }
            }
            Err(e) => bad.push(format!("({d},{ell}): {e}")),
        }
    }
    let g = mixed_group(FundamentalDiscriminant::new(-4).unwrap(), 5).unwrap();
    let s = set_ccal(&g).unwrap();
    let stable = s.ucal.iter().all(|u| {
        s.ccal_cap_b
            .iter()
            .all(|x| s.ccal_cap_b.contains(g.mul(u, x)))
    });
    outcome(
        bad.is_empty() && stable,
        format!("(d,ℓ) in (-4,5),(-4,13),(-7,11){}", tail(&bad)),
    )
}

fn c5_functoriality() -> Outcome {
    let start = Instant::now();
    let opts = VerifyOptions {
        samples: Some(100),
        ..Default::default()
    };
    let o = run_suite(Suite::Functoriality, &opts).unwrap();
    let secs = start.elapsed().as_secs_f64();
    outcome(
        o.passed && secs < 120.0,
        format!(
            "{} exact checks, {} failures, {secs:.2} s",
            o.checks,
            o.failures.len()
        ),
    )
}

fn c6_ray_class() -> Outcome {
    let o = run_suite(Suite::RayClass, &VerifyOptions::default()).unwrap();
    outcome(
        o.passed,
        format!("{} (d, m) pairs, {} mismatches", o.checks, o.failures.len()),
    )
}

fn c7_frobenius_field(table: &ApTable) -> Outcome {
    let d = FundamentalDiscriminant::new(-4).unwrap();
    let x = 100_000;
    match (
        mixed_frobenius_check(table, d, 13, x),
        count_pek(table, d, x),
    ) {
        (Ok(m), Ok(pek)) => {
            let nonprincipal = pek.extra["non_principal"].as_u64().unwrap();
            outcome(
                m.checked > 0 && m.violations() == 0 && nonprincipal == 0,
                format!(
                    "{} ordinary primes with d=-4, {} trace / {} norm violations, {nonprincipal} non-principal",
                    m.checked, m.trace_violations, m.norm_violations
                ),
            )
        }
        (Err(e), _) | (_, Err(e)) => outcome(false, e.to_string()),
    }
}

fn c8_equidistribution(table: &ApTable) -> Outcome {
    let candidates = [(1, 1), (-1, 1), (2, 3), (1, 2), (-2, 5)];
    let mut chosen = None;
    for (a, b) in candidates {
        let e = EllipticCurve::new(a, b).unwrap();
        let t = if (a, b) == (1, 1) {
            table.clone()
        } else {
            ap_table(&e, 10_000)
        };
        if all_classes_occur(&t, 5, 10_000).unwrap() {
            chosen = Some(((a, b), t));
            break;
        }
    }
    let Some(((a, b), small)) = chosen else {
        return outcome(false, "no candidate curve hits every mod-5 class by 10^4");
    };
    let full = if small.covers(X_MAX) {
        small
    } else {
        ap_table(&EllipticCurve::new(a, b).unwrap(), X_MAX)
    };
    let pi_x = sieve_primes(X_MAX).unwrap().len() as f64;
    let tol = 5.0 / pi_x.sqrt();
    let freqs = class_frequencies(&full, 5, X_MAX).unwrap();
    let worst = freqs
        .iter()
        .map(|f| (f.observed_fraction - f.expected_fraction).abs())
        .fold(0.0, f64::max);
    outcome(
        worst <= tol,
        format!(
            "curve ({a},{b}), {} classes, max deviation {worst:.5} vs tolerance {tol:.5}",
            freqs.len()
        ),
    )
}

fn c9_smoothed(table: &ApTable) -> Outcome {
    let w = make_window(WindowKind::Bump, 0.5, 1.0).unwrap();
    let r = smoothed_count(table, 5, &Predicate::All, &w, X_MAX).unwrap();
    let ratio = r.observed / (X_MAX as f64 * w.integral);
    outcome(
        (0.95..=1.05).contains(&ratio),
        format!("observed / (x ∫f) = {ratio:.5}"),
    )
}

fn c10_prime_powers(table: &ApTable) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for x in [10_000u64, 100_000, 1_000_000] {
        let r = pi_tilde_c(table, 5, x, &Predicate::All).unwrap();
        let diff = r.extra["difference"].as_f64().unwrap();
        let xf = x as f64;
        let bound = 2.0 * xf.sqrt() / xf.ln() + 10.0;
        ok &= (0.0..=bound).contains(&diff);
        parts.push(format!("x={x}: {diff:.2} <= {bound:.2}"));
    }
    outcome(ok, parts.join(", "))
}

fn c11_diagnostics(table: &ApTable) -> Outcome {
    let xs = [1e4, 1e5, 1e6, 1e7, 1e8];
    let mut ok = true;
    let mut parts = Vec::new();
    for e in [0.8, 0.75, 2.0 / 7.0] {
        let pts: Vec<_> = xs.iter().map(|&x: &f64| (x, 3.0 * x.powf(e))).collect();
        let got = asymptote_fit(&pts).unwrap().exponent;
        ok &= ((got - e) / e).abs() < 0.01;
        parts.push(format!("exponent {e:.4} -> {got:.4}"));
    }
    let pts: Vec<_> = xs
        .iter()
        .map(|&x: &f64| (x, 2.0 * x.sqrt() / x.ln()))
        .collect();
    let c = asymptote_fit(&pts).unwrap().constant;
    ok &= ((c - 2.0) / 2.0).abs() < 0.01;
    parts.push(format!("constant 2 -> {c:.4}"));

    for x in [10_000u64, 100_000, 1_000_000] {
        let xf = x as f64;
        let p0 = count_pea(table, 0, x, None).unwrap().observed;
        let b0 = bound_profile(xf, 1, BoundMode::AZero).unwrap();
        let p1 = count_pea(table, 1, x, None).unwrap().observed;
        let b1 = bound_profile(xf, 1, BoundMode::AGeneric).unwrap();
        let de = count_de(table, x).unwrap();
        println!(
            "    x={x:>8}  P_0={p0:>4} (bound {:.1}, ratio {:.4})  P_1={p1:>4} (bound {:.1}, ratio {:.4})  D_E={} (target ratio {:.2})",
            b0.bound,
            p0 / b0.bound,
            b1.bound,
            p1 / b1.bound,
            de.observed,
            de.extra["ratio"].as_f64().unwrap()
        );
    }
    let pts: Vec<_> = [10_000u64, 100_000, 1_000_000]
        .iter()
        .map(|&x| (x as f64, count_pea(table, 0, x, None).unwrap().observed))
        .collect();
    match asymptote_fit(&pts) {
        Ok(f) => println!(
            "    supersingular counts: C = {:.3} under x^(1/2)/log x, pure-power exponent {:.3}",
            f.constant, f.exponent
        ),
        Err(e) => println!("    supersingular fit unavailable: {e}"),
    }
    outcome(ok, format!("synthetic recovery: {}", parts.join(", ")))
}

fn main() {
    let curve = EllipticCurve::new(1, 1).unwrap();
    let start = Instant::now();
    let table = ap_table(&curve, X_MAX);
    println!(
        "a_p table for {curve} up to 10^6: {} primes in {:.2} s",
        table.len(),
        start.elapsed().as_secs_f64()
    );

    let criteria: Vec<Criterion> = vec![
        (
            "a_p Legendre sum equals point enumeration",
            Box::new(c1_oracle_equivalence),
        ),
        (
            "Hasse bound and Frobenius field discriminants",
            Box::new(|| c2_hasse(&table)),
        ),
        ("GL_2 Borel cardinalities", Box::new(c3_borel)),
        ("mixed group cardinalities", Box::new(c4_mixed)),
        (
            "induction and centralizer indices",
            Box::new(c5_functoriality),
        ),
        ("ray class orders", Box::new(c6_ray_class)),
        (
            "live Frobenius generator check",
            Box::new(|| c7_frobenius_field(&table)),
        ),
        (
            "mod-5 class equidistribution",
            Box::new(|| c8_equidistribution(&table)),
        ),
        ("smoothed count main term", Box::new(|| c9_smoothed(&table))),
        (
            "prime powers in the weighted count",
            Box::new(|| c10_prime_powers(&table)),
        ),
        (
            "asymptotic diagnostics",
            Box::new(|| c11_diagnostics(&table)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
