//! Counting Frobenius classes of `ρ_{E,ℓ}` from trace data.
//!
//! The characteristic polynomial of `ρ_{E,ℓ}(Frob_p)` is `x^2 - a_p x + p`
//! modulo `ℓ`, so every predicate here is a union of char-poly classes
//! `(t, δ)` and every density `|C|/|G|` is read off [`CharPolyCensus`].

mod fit;
mod lang_trotter;
mod window;

pub use fit::{asymptote_fit, bound_profile, AsymptoteFit, BoundMode, BoundProfile};
pub use lang_trotter::{
    count_de, count_pea, count_pek, dyadic_window_diagnostic, mixed_frobenius_check,
    split_primes_in_window, DyadicDiagnostic, MixedCheck, SplitMode,
};
pub use window::{make_window, smoothed_count, SmoothWindow, WindowKind, DOMINATING_SUPPORT};

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, li, pow_mod, rem};
use crate::elliptic::{trace_of_power, ApRecord, ApTable};
use crate::error::{contract, domain, Result};
use crate::groups::{is_square_mod, CharPolyCensus};

/// `x^2 - t x + δ` modulo `ℓ`, with `δ ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharPolyClass {
    pub ell: u32,
    pub t: u32,
    pub dt: u32,
}

/// `(a_p mod ℓ, p mod ℓ)`, or `None` at `p = ℓ`.
pub fn frob_class(rec: &ApRecord, ell: u32) -> Option<CharPolyClass> {
    if rec.p == ell as u64 {
        return None;
    }
    let l = ell as u64;
    Some(CharPolyClass {
        ell,
        t: rem(rec.a as i128, l) as u32,
        dt: (rec.p % l) as u32,
    })
}

/// Class of `Frob_p^m`: trace `s_m(a_p, p)` and determinant `p^m`.
pub fn frob_power_class(rec: &ApRecord, ell: u32, m: u32) -> Result<Option<CharPolyClass>> {
    if rec.p == ell as u64 {
        return Ok(None);
    }
    let l = ell as u64;
    let t = rem(trace_of_power(rec.a, rec.p, m)?, l) as u32;
    Ok(Some(CharPolyClass {
        ell,
        t,
        dt: pow_mod(rec.p % l, m as u64, l) as u32,
    }))
}

/// A union of char-poly classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Predicate {
    All,
    Det(u32),
    Trace(u32),
    CharPoly {
        t: u32,
        dt: u32,
    },
    /// `t ≡ a` and `t^2 - 4δ` a square, zero included.
    TraceSquareDisc(u32),
    /// `t^2 - 4δ` a square, zero included.
    SquareDisc,
    Classes(Vec<(u32, u32)>),
}

impl Predicate {
    pub fn holds(&self, ell: u32, t: u32, dt: u32) -> bool {
        let l = ell;
        let disc_square = || {
            let disc = (t as u64 * t as u64 + 4 * (l - dt % l) as u64) % l as u64;
            is_square_mod(disc as u32, l)
        };
        match self {
            Self::All => true,
            Self::Det(d) => dt == d % l,
            Self::Trace(a) => t == a % l,
            Self::CharPoly { t: t0, dt: d0 } => t == t0 % l && dt == d0 % l,
            Self::TraceSquareDisc(a) => t == a % l && disc_square(),
            Self::SquareDisc => disc_square(),
            Self::Classes(cs) => cs.iter().any(|&(a, b)| a % l == t && b % l == dt),
        }
    }

    pub fn holds_for(&self, c: &CharPolyClass) -> bool {
        self.holds(c.ell, c.t, c.dt)
    }

    /// `(|C|, |G|)` for the union of classes satisfying the predicate.
    pub fn class_size(&self, census: &CharPolyCensus) -> (u64, u64) {
        (
            census.count_where(|t, d| self.holds(census.ell, t, d)),
            census.total,
        )
    }
}

/// One counting-function evaluation.
///
/// `fraction` is the normalizer of the count: `|C|/|G|` for Chebotarev
/// counts, `1/h_k` for field counts and `1` otherwise. `margin` is the
/// size of the relevant error term with unit constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub x: u64,
    pub observed: f64,
    pub expected: f64,
    pub fraction: f64,
    pub margin: f64,
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl CountReport {
    pub fn new(x: u64, observed: f64, expected: f64, fraction: f64, margin: f64) -> Self {
        Self {
            x,
            observed,
            expected,
            fraction,
            margin,
            extra: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).expect("serializable diagnostic");
        self.extra.insert(key.to_string(), v);
        self
    }

    pub fn is_finite(&self) -> bool {
        [self.observed, self.expected, self.fraction, self.margin]
            .iter()
            .all(|v| v.is_finite())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// Writes `x,observed,expected` rows.
pub fn write_sweep_csv<W: Write>(reports: &[CountReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "observed", "expected"])?;
    for r in reports {
        w.write_record([
            r.x.to_string(),
            r.observed.to_string(),
            r.expected.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn records_upto(table: &ApTable, x: u64) -> Result<&[ApRecord]> {
    if !table.covers(x) {
        return contract(format!("table covers x <= {}, asked for {x}", table.x));
    }
    Ok(table.upto(x))
}

pub(crate) fn check_x(x: u64) -> Result<()> {
    if x < 3 {
        return domain(format!("counting needs x >= 3, got {x}"));
    }
    Ok(())
}

pub(crate) fn check_ell(ell: u32) -> Result<CharPolyCensus> {
    if !is_prime(ell as u64) {
        return domain(format!("ℓ = {ell} is not prime"));
    }
    CharPolyCensus::new(ell)
}

/// `|C|^{1/2} x^{1/2} log x`, the conditional Chebotarev error with unit
/// constant and `[K:Q] = 1`.
fn chebotarev_margin(class_size: u64, x: f64) -> f64 {
    (class_size as f64).sqrt() * x.sqrt() * x.ln()
}

/// `π_C(x)`: good odd primes `p <= x`, `p ≠ ℓ`, whose Frobenius class satisfies `pred`.
pub fn pi_c(table: &ApTable, ell: u32, x: u64, pred: &Predicate) -> Result<CountReport> {
    check_x(x)?;
    let census = check_ell(ell)?;
    let (size, total) = pred.class_size(&census);
    let fraction = size as f64 / total as f64;
    let observed = records_upto(table, x)?
        .iter()
        .filter_map(|r| frob_class(r, ell))
        .filter(|c| pred.holds_for(c))
        .count();
    let xf = x as f64;
    Ok(CountReport::new(
        x,
        observed as f64,
        fraction * li(xf)?,
        fraction,
        chebotarev_margin(size, xf),
    )
    .with("class_size", size)
    .with("group_order", total))
}

/// `π̃_C(x)`: prime powers `p^m <= x` weighted by `1/m`, counted when the
/// class of `Frob_p^m` satisfies `pred`.
///
/// Only good primes enter; the table carries no inertia data at bad primes.
pub fn pi_tilde_c(table: &ApTable, ell: u32, x: u64, pred: &Predicate) -> Result<CountReport> {
    let base = pi_c(table, ell, x, pred)?;
    let mut higher = 0.0;
    for r in records_upto(table, x)? {
        let mut pm = r.p as u128 * r.p as u128;
        let mut m = 2;
        while pm <= x as u128 {
            if let Some(c) = frob_power_class(r, ell, m)? {
                if pred.holds_for(&c) {
                    higher += 1.0 / m as f64;
                }
            }
            pm *= r.p as u128;
            m += 1;
        }
    }
    let pi = base.observed;
    Ok(CountReport {
        observed: pi + higher,
        ..base
    }
    .with("pi", pi)
    .with("difference", higher))
}

/// Empirical frequency of one char-poly class against its density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassFrequency {
    pub t: u32,
    pub dt: u32,
    pub observed: u64,
    pub observed_fraction: f64,
    pub expected_fraction: f64,
}

/// Frequencies of all `ℓ(ℓ-1)` char-poly classes among good `p <= x`, `p ≠ ℓ`.
pub fn class_frequencies(table: &ApTable, ell: u32, x: u64) -> Result<Vec<ClassFrequency>> {
    check_x(x)?;
    let census = check_ell(ell)?;
    let l = ell as usize;
    let mut hits = vec![0u64; l * l];
    let mut n = 0u64;
    for c in records_upto(table, x)?
        .iter()
        .filter_map(|r| frob_class(r, ell))
    {
        hits[c.t as usize * l + c.dt as usize] += 1;
        n += 1;
    }
    let mut out = Vec::with_capacity(l * (l - 1));
    for t in 0..ell {
        for dt in 1..ell {
            let observed = hits[t as usize * l + dt as usize];
            out.push(ClassFrequency {
                t,
                dt,
                observed,
                observed_fraction: if n == 0 {
                    0.0
                } else {
                    observed as f64 / n as f64
                },
                expected_fraction: census.count(t, dt) as f64 / census.total as f64,
            });
        }
    }
    Ok(out)
}

/// True when every char-poly class of `GL_2(F_ℓ)` is hit by some `p <= x`.
pub fn all_classes_occur(table: &ApTable, ell: u32, x: u64) -> Result<bool> {
    Ok(class_frequencies(table, ell, x)?
        .iter()
        .all(|f| f.observed > 0))
}
