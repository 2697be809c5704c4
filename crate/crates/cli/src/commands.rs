use std::io::Write;

use serde_json::json;

use lt_core::arith::FundamentalDiscriminant;
use lt_core::chebotarev::{
    asymptote_fit, bound_profile, class_frequencies, count_de, count_pea, count_pek, make_window,
    pi_c, pi_tilde_c, smoothed_count, write_sweep_csv, BoundMode, CountReport, Predicate,
    SplitMode, WindowKind, DOMINATING_SUPPORT,
};
use lt_core::classfn::FiniteGroupTable;
use lt_core::elliptic::ApTable;
use lt_core::groups::Gl2;
use lt_core::quadfield::{class_number, ray_class_order, ray_class_order_by_enumeration};
use lt_core::verify::{borel_checks, mixed_checks, run_all, Suite, VerifyOptions};

use crate::parse::parse_support;
use crate::{
    cache, ApArgs, CountArgs, Failure, Format, GroupsArgs, Kind, RayclassArgs, Split, VerifyArgs,
    Window,
};

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

pub fn ap(a: &ApArgs) -> Result<(), Failure> {
    let t = &a.table;
    let table = cache::build(t.curve, t.x, t.shards)?;
    let path = a
        .out
        .clone()
        .unwrap_or_else(|| cache::cache_dir().join(cache::file_name(t.curve, t.x)));
    cache::write(&table, &path)?;
    eprintln!("wrote {} records to {}", table.len(), path.display());
    Ok(())
}

/// `all`, `square`, `trace:T`, `det:D`, `c:A` or `cp:T:D`, residues taken mod `ℓ`.
pub fn parse_pred(s: &str, ell: u32) -> Result<Predicate, Failure> {
    let m = |t: &str| {
        t.parse::<i64>()
            .map(|v| v.rem_euclid(ell as i64) as u32)
            .map_err(|_| Failure::Usage(format!("bad number {t:?} in predicate")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    Ok(match parts.as_slice() {
        ["all"] => Predicate::All,
        ["square"] => Predicate::SquareDisc,
        ["trace", t] => Predicate::Trace(m(t)?),
        ["det", d] => Predicate::Det(m(d)?),
        ["c", a] => Predicate::TraceSquareDisc(m(a)?),
        ["cp", t, d] => Predicate::CharPoly {
            t: m(t)?,
            dt: m(d)?,
        },
        _ => return usage(format!("unknown predicate {s:?}")),
    })
}

fn fundamental(d: i64) -> Result<FundamentalDiscriminant, Failure> {
    Ok(FundamentalDiscriminant::new(d)?)
}

fn report(kind: Kind, table: &ApTable, c: &CountArgs, x: u64) -> Result<CountReport, Failure> {
    let ell = c.ell.unwrap_or(5);
    let pred = || parse_pred(&c.pred, ell);
    let split = match c.split {
        Split::Strict => SplitMode::Strict,
        Split::Inclusive => SplitMode::Inclusive,
    };
    Ok(match kind {
        Kind::Pea => count_pea(table, c.a, x, c.ell.map(|l| (l, split)))?,
        Kind::Pek => count_pek(table, fundamental(c.d)?, x)?,
        Kind::De => count_de(table, x)?,
        Kind::PiC => pi_c(table, ell, x, &pred()?)?,
        Kind::PiTilde => pi_tilde_c(table, ell, x, &pred()?)?,
        Kind::Smoothed => {
            let (kind, default) = match c.window {
                Window::Bump => (WindowKind::Bump, (0.5, 1.0)),
                Window::Dominating => (WindowKind::Dominating, DOMINATING_SUPPORT),
            };
            let (c1, c2) = match &c.support {
                Some(s) => parse_support(s).map_err(Failure::Usage)?,
                None => default,
            };
            smoothed_count(table, ell, &pred()?, &make_window(kind, c1, c2)?, x)?
        }
        Kind::Freq | Kind::Sweep | Kind::Profile => return usage("not a single counting function"),
    })
}

/// Table limit needed to evaluate `kind` at `x`.
fn reach(c: &CountArgs, kind: Kind, x: u64) -> Result<u64, Failure> {
    if kind != Kind::Smoothed {
        return Ok(x);
    }
    let c2 = match (&c.support, c.window) {
        (Some(s), _) => parse_support(s).map_err(Failure::Usage)?.1,
        (None, Window::Bump) => 1.0,
        (None, Window::Dominating) => DOMINATING_SUPPORT.1,
    };
    Ok((c2.max(1.0) * x as f64).ceil() as u64)
}

pub fn count(c: &CountArgs) -> Result<(), Failure> {
    let xs = if c.xs.is_empty() {
        vec![c.table.x]
    } else {
        c.xs.clone()
    };
    let target = match c.kind {
        Kind::Sweep => c.of,
        k => k,
    };
    let mut need = 3;
    for &x in &xs {
        need = need.max(reach(c, target, x)?);
    }
    if matches!(c.kind, Kind::Sweep | Kind::Profile) && c.xs.is_empty() {
        return usage("--kind sweep and profile need --xs");
    }
    if xs.iter().any(|&x| x < 3) {
        return usage("counting needs x >= 3");
    }
    let table = cache::load(c.table.curve, need, c.compute, c.table.shards)?;
    let out = c.out.as_deref();
    match c.kind {
        Kind::Sweep => {
            if matches!(c.of, Kind::Sweep | Kind::Profile | Kind::Freq) {
                return usage("--of must name a counting function");
            }
            let reps = xs
                .iter()
                .map(|&x| report(c.of, &table, c, x))
                .collect::<Result<Vec<_>, _>>()?;
            if c.format == Some(Format::Json) {
                return emit(
                    &(serde_json::to_string_pretty(&reps).expect("reports serialize") + "\n"),
                    out,
                );
            }
            let mut buf = Vec::new();
            write_sweep_csv(&reps, &mut buf)?;
            emit(&String::from_utf8(buf).expect("csv is utf-8"), out)
        }
        Kind::Profile => profile(&table, c, &xs, out),
        Kind::Freq => {
            let ell = c.ell.unwrap_or(5);
            let x = xs[0];
            let freqs = class_frequencies(&table, ell, x)?;
            let n: u64 = freqs.iter().map(|f| f.observed).sum();
            let max_dev = freqs
                .iter()
                .map(|f| (f.observed_fraction - f.expected_fraction).abs())
                .fold(0.0, f64::max);
            let v = json!({
                "x": x, "ell": ell, "primes": n,
                "all_classes_occur": freqs.iter().all(|f| f.observed > 0),
                "max_deviation": max_dev,
                "classes": freqs,
            });
            emit(
                &(serde_json::to_string_pretty(&v).expect("json") + "\n"),
                out,
            )
        }
        k => {
            let rep = report(k, &table, c, xs[0])?;
            if c.format == Some(Format::Csv) {
                let mut buf = Vec::new();
                write_sweep_csv(&[rep], &mut buf)?;
                return emit(&String::from_utf8(buf).expect("csv is utf-8"), out);
            }
            emit(
                &(serde_json::to_string_pretty(&rep).expect("report serializes") + "\n"),
                out,
            )
        }
    }
}

fn profile(
    table: &ApTable,
    c: &CountArgs,
    xs: &[u64],
    out: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let mode = if c.a == 0 {
        BoundMode::AZero
    } else {
        BoundMode::AGeneric
    };
    let mut rows = Vec::new();
    let mut points = Vec::new();
    let mut scale: f64 = 0.0;
    for &x in xs {
        if x < 16 {
            return usage("profile needs x >= 16");
        }
        let pea = count_pea(table, c.a, x, None)?;
        let de = count_de(table, x)?;
        let b = bound_profile(x as f64, 1, mode)?;
        let ratio = pea.observed / b.bound;
        scale = scale.max(ratio);
        points.push((x as f64, pea.observed));
        rows.push(json!({
            "x": x,
            "observed": pea.observed,
            "y": b.y,
            "bound": b.bound,
            "observed_over_bound": ratio,
            "lang_trotter_shape": pea.expected,
            "fields": de.observed,
            "fields_over_target": de.extra["ratio"],
        }));
    }
    let fit = match asymptote_fit(&points) {
        Ok(f) => serde_json::to_value(f).expect("fit serializes"),
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    let v =
        json!({ "a": c.a, "mode": mode, "fitted_bound_constant": scale, "rows": rows, "fit": fit });
    emit(
        &(serde_json::to_string_pretty(&v).expect("json") + "\n"),
        out,
    )
}

pub fn verify(v: &VerifyArgs) -> Result<(), Failure> {
    let parse = |s: &str| {
        s.parse::<Suite>()
            .map_err(|e| Failure::Usage(e.to_string()))
    };
    let suites = if v.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        v.suites
            .iter()
            .map(|s| parse(s))
            .collect::<Result<Vec<_>, _>>()?
    };
    let inject_fault = v.inject_fault.as_deref().map(parse).transpose()?;
    let opts = VerifyOptions {
        ell: v.ell,
        samples: v.samples,
        inject_fault,
    };
    let outcomes = run_all(&suites, &opts)?;
    let lines: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
    emit(&lines, None)?;
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.suite.name())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "failed suites: {}",
            failed.join(", ")
        )))
    }
}

pub fn groups(g: &GroupsArgs) -> Result<(), Failure> {
    let rows = |v: Vec<(String, u64, u64)>| -> Vec<serde_json::Value> {
        v.into_iter()
            .map(|(what, got, want)| json!({ "quantity": what, "value": got, "expected": want }))
            .collect()
    };
    let mut v = json!({ "ell": g.ell, "borel": rows(borel_checks(g.ell)?) });
    if let Some(d) = g.d {
        v["d"] = json!(d);
        v["mixed"] = json!(rows(mixed_checks(d, g.ell)?));
    }
    if let Some(path) = &g.table_out {
        let table = FiniteGroupTable::from_gl2(&Gl2::new(g.ell)?);
        std::fs::write(path, table.to_text())
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    emit(
        &(serde_json::to_string_pretty(&v).expect("json") + "\n"),
        None,
    )?;
    Ok(())
}

pub fn rayclass(r: &RayclassArgs) -> Result<(), Failure> {
    let field = class_number(r.d)?;
    let order = ray_class_order(field.d, r.m)?;
    let mut v = json!({ "d": r.d, "m": r.m, "h": field.h, "w": field.w, "order": order });
    if r.oracle {
        let brute = ray_class_order_by_enumeration(field.d, r.m)?;
        v["enumerated"] = json!(brute);
        emit(
            &(serde_json::to_string_pretty(&v).expect("json") + "\n"),
            None,
        )?;
        if brute != order {
            return Err(Failure::Verification(format!(
                "formula {order} != enumeration {brute}"
            )));
        }
        return Ok(());
    }
    emit(
        &(serde_json::to_string_pretty(&v).expect("json") + "\n"),
        None,
    )?;
    Ok(())
}
