use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{
    is_prime, kronecker_symbol, legendre_symbol, primes_between, rem, sieve_primes,
    FundamentalDiscriminant,
};
use crate::elliptic::ApTable;
use crate::error::{domain, Error, Result};
use crate::quadfield::{
    class_number, cornacchia, ideal_class_of_prime, IdealClass, ResidueUnitQuotient,
};

use super::fit::{bound_profile, BoundMode};
use super::{check_x, records_upto, CountReport};

/// How `ℓ` must split in `Q(π_p)` for `p` to count in `P_{E,a}(x, ℓ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitMode {
    /// `(a^2 - 4p / ℓ) = 1`
    Strict,
    /// `(a^2 - 4p / ℓ) ∈ {0, 1}`
    Inclusive,
}

impl SplitMode {
    fn admits(self, symbol: i8) -> bool {
        match self {
            Self::Strict => symbol == 1,
            Self::Inclusive => symbol >= 0,
        }
    }
}

fn lang_trotter_shape(x: f64) -> f64 {
    x.sqrt() / x.ln()
}

fn pea_restricted(table: &ApTable, a: i64, x: u64, ell: u32, mode: SplitMode) -> Result<u64> {
    let mut n = 0;
    for r in records_upto(table, x)?
        .iter()
        .filter(|r| r.a == a && r.p != ell as u64)
    {
        if mode.admits(legendre_symbol(r.disc, ell as u64)?) {
            n += 1;
        }
    }
    Ok(n)
}

/// `P_{E,a}(x)`, or `P_{E,a}(x, ℓ)` when `split` is given.
///
/// The report's `expected` is `x^{1/2}/log x` and its `margin` the
/// unit-constant conditional upper bound for this `a`.
pub fn count_pea(
    table: &ApTable,
    a: i64,
    x: u64,
    split: Option<(u32, SplitMode)>,
) -> Result<CountReport> {
    check_x(x)?;
    let observed = match split {
        None => records_upto(table, x)?.iter().filter(|r| r.a == a).count() as u64,
        Some((ell, mode)) => {
            if ell < 3 || !is_prime(ell as u64) {
                return domain(format!("ℓ = {ell} must be an odd prime"));
            }
            pea_restricted(table, a, x, ell, mode)?
        }
    };
    let xf = x as f64;
    let mode = if a == 0 {
        BoundMode::AZero
    } else {
        BoundMode::AGeneric
    };
    let margin = if x >= 16 {
        bound_profile(xf, 1, mode)?.bound
    } else {
        xf
    };
    let mut rep =
        CountReport::new(x, observed as f64, lang_trotter_shape(xf), 1.0, margin).with("a", a);
    if let Some((ell, mode)) = split {
        rep = rep.with("ell", ell).with("split", mode);
    }
    Ok(rep)
}

/// `P_{E,a}(x, ℓ)` over the primes `ℓ ≥ 5` of a dyadic window `[y, 2y]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DyadicDiagnostic {
    pub y: f64,
    pub counts: Vec<(u32, u64)>,
    pub max: u64,
    pub full: u64,
    /// `P_{E,a}(x) / max_ℓ P_{E,a}(x, ℓ)`, infinite when the max is 0 and the count is not.
    pub ratio: f64,
}

pub fn dyadic_window_diagnostic(
    table: &ApTable,
    a: i64,
    x: u64,
    y: f64,
    mode: SplitMode,
) -> Result<DyadicDiagnostic> {
    check_x(x)?;
    if !(y >= 1.0) || !y.is_finite() {
        return domain(format!("window start must be >= 1, got {y}"));
    }
    let lo = (y.ceil() as u64).max(5);
    let hi = (2.0 * y).floor() as u64;
    let full = records_upto(table, x)?.iter().filter(|r| r.a == a).count() as u64;
    let mut counts = Vec::new();
    if hi >= lo {
        for ell in primes_between(lo, hi).iter() {
            counts.push((ell as u32, pea_restricted(table, a, x, ell as u32, mode)?));
        }
    }
    let max = counts.iter().map(|c| c.1).max().unwrap_or(0);
    let ratio = match (full, max) {
        (0, _) => 0.0,
        (_, 0) => f64::INFINITY,
        (f, m) => f as f64 / m as f64,
    };
    Ok(DyadicDiagnostic {
        y,
        counts,
        max,
        full,
        ratio,
    })
}

/// `P_{E,k}(x)` for `k = Q(√d)`, with a principality check of the primes
/// above every counted ordinary `p`.
///
/// `fraction` is `1/h_k`; `expected` is `x^{1/2}/log x`; `margin` is the
/// unit-constant conditional bound `h^{-3/5} x^{4/5}/(log x)^{3/5} + x^{1/2}(log x)^3`.
pub fn count_pek(table: &ApTable, d: FundamentalDiscriminant, x: u64) -> Result<CountReport> {
    check_x(x)?;
    let h = class_number(d.get())?.h;
    let (mut count, mut checked, mut principal) = (0u64, 0u64, 0u64);
    for r in records_upto(table, x)?.iter().filter(|r| r.fund == d) {
        count += 1;
        if r.ordinary {
            checked += 1;
            if matches!(ideal_class_of_prime(d, r.p), Ok(IdealClass::Principal)) {
                principal += 1;
            }
        }
    }
    let xf = x as f64;
    let margin = if x >= 16 {
        bound_profile(xf, h, BoundMode::KField)?.bound
    } else {
        xf
    };
    Ok(CountReport::new(
        x,
        count as f64,
        lang_trotter_shape(xf),
        1.0 / h as f64,
        margin,
    )
    .with("d", d.get())
    .with("h", h)
    .with("principality_checked", checked)
    .with("principal", principal)
    .with("non_principal", checked - principal))
}

/// `D_E(x)`, the number of distinct Frobenius fields among good `p <= x`.
///
/// Also reports the partition residual `#{good p} - Σ_k P_{E,k}(x)` and
/// `π(x) - #{p | disc} - Σ_k P_{E,k}(x)`; both must be 0.
pub fn count_de(table: &ApTable, x: u64) -> Result<CountReport> {
    check_x(x)?;
    let records = records_upto(table, x)?;
    let mut by_field: BTreeMap<i64, u64> = BTreeMap::new();
    for r in records {
        *by_field.entry(r.fund.get()).or_default() += 1;
    }
    let partition_sum: u64 = by_field.values().sum();
    let good = records.len() as u64;
    let primes = sieve_primes(x)?;
    let bad = primes
        .iter()
        .filter(|&p| !table.curve.is_counted_prime(p))
        .count() as u64;
    let pi_x = primes.len() as u64;
    let xf = x as f64;
    let target = xf.powf(2.0 / 7.0) / xf.ln().powf(10.0 / 7.0);
    let observed = by_field.len() as f64;
    Ok(CountReport::new(x, observed, target, 1.0, 0.0)
        .with("partition_residual", good as i64 - partition_sum as i64)
        .with(
            "pi_residual",
            pi_x as i64 - bad as i64 - partition_sum as i64,
        )
        .with("bad_primes", bad)
        .with("ratio", observed / target))
}

/// Outcome of comparing `ρ_{E,ℓ}` with the residue class of a Frobenius generator.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedCheck {
    pub checked: u64,
    pub trace_violations: u64,
    pub norm_violations: u64,
    pub non_principal: u64,
    pub max_trace_set: usize,
}

impl MixedCheck {
    pub fn violations(&self) -> u64 {
        self.trace_violations + self.norm_violations + self.non_principal
    }
}

/// For each ordinary `p <= x`, `p ≠ ℓ`, with Frobenius field `Q(√d)`:
/// finds `π = (u + v√d)/2` of norm `p`, then checks `a_p mod ℓ ∈ Tr(π O^×)`
/// and `N(π) ≡ p (mod ℓ)`.
///
/// Needs `h(d) = 1` and `ℓ ≥ 5` split in `Q(√d)`. A matching prime without
/// a generator is an invariant violation.
pub fn mixed_frobenius_check(
    table: &ApTable,
    d: FundamentalDiscriminant,
    ell: u32,
    x: u64,
) -> Result<MixedCheck> {
    check_x(x)?;
    let h = class_number(d.get())?.h;
    if h != 1 {
        return domain(format!("Q(√{d}) has class number {h}, need 1"));
    }
    let q = ResidueUnitQuotient::new(d, ell as u64)?;
    let l = ell as u64;
    let mut out = MixedCheck::default();
    for r in records_upto(table, x)?
        .iter()
        .filter(|r| r.ordinary && r.fund == d && r.p != l)
    {
        out.checked += 1;
        let (u, v) = cornacchia(d, r.p)
            .ok_or_else(|| Error::Invariant(format!("no generator of norm {} in Q(√{d})", r.p)))?;
        if ideal_class_of_prime(d, r.p)? != IdealClass::Principal {
            out.non_principal += 1;
        }
        let coset = q.coset_of_element(u, v).ok_or_else(|| {
            Error::Invariant(format!("generator above {} is not prime to ℓ", r.p))
        })?;
        let traces = q.traces(coset);
        out.max_trace_set = out.max_trace_set.max(traces.len());
        if !traces.contains(&rem(r.a as i128, l)) {
            out.trace_violations += 1;
        }
        if q.norm(coset) != r.p % l {
            out.norm_violations += 1;
        }
    }
    Ok(out)
}

/// Primes `ℓ ≥ 5` in `[y, 2y]` that split in `Q(√d)`.
pub fn split_primes_in_window(d: FundamentalDiscriminant, y: u64) -> Result<Vec<u64>> {
    let lo = y.max(5);
    let hi = 2 * y;
    if hi < lo {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for ell in primes_between(lo, hi).iter() {
        if kronecker_symbol(d.get(), ell)? == 1 {
            out.push(ell);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{ap_table, EllipticCurve};

    fn fd(d: i64) -> FundamentalDiscriminant {
        FundamentalDiscriminant::new(d).unwrap()
    }

    fn table(x: u64) -> ApTable {
        ap_table(&EllipticCurve::new(1, 1).unwrap(), x)
    }

    #[test]
    fn pea_restrictions() {
        let t = table(50_000);
        for a in [-2, 0, 1, 5] {
            let full = count_pea(&t, a, 50_000, None).unwrap().observed;
            for ell in [5, 7, 13] {
                let strict = count_pea(&t, a, 50_000, Some((ell, SplitMode::Strict)))
                    .unwrap()
                    .observed;
                let incl = count_pea(&t, a, 50_000, Some((ell, SplitMode::Inclusive)))
                    .unwrap()
                    .observed;
                assert!(strict <= incl && incl <= full);
            }
        }
        assert_eq!(count_pea(&t, 448, 50_000, None).unwrap().observed, 0.0);
    }

    #[test]
    fn dyadic_diagnostic_shape() {
        let t = table(20_000);
        let dd = dyadic_window_diagnostic(&t, 1, 20_000, 10.0, SplitMode::Strict).unwrap();
        assert_eq!(
            dd.counts.iter().map(|c| c.0).collect::<Vec<_>>(),
            vec![11, 13, 17, 19]
        );
        assert!(dd.counts.iter().all(|c| c.1 <= dd.full));
    }

    #[test]
    fn pek_partition_and_principality() {
        let t = table(20_000);
        let de = count_de(&t, 20_000).unwrap();
        assert_eq!(de.extra["partition_residual"], 0);
        assert_eq!(de.extra["pi_residual"], 0);
        let mut seen = std::collections::BTreeSet::new();
        for r in t.upto(20_000) {
            seen.insert(r.fund);
        }
        let mut total = 0.0;
        for d in seen {
            let rep = count_pek(&t, d, 20_000).unwrap();
            assert_eq!(rep.extra["non_principal"], 0);
            total += rep.observed;
        }
        assert_eq!(total as usize, t.upto(20_000).len());
        let far = (80_001..)
            .find_map(|n: i64| FundamentalDiscriminant::new(-n).ok())
            .unwrap();
        assert_eq!(count_pek(&t, far, 20_000).unwrap().observed, 0.0);
    }

    #[test]
    fn de_small_and_monotone() {
        let t = table(10_000);
        // p = 3 is the only counted prime <= 3 for y^2 = x^3 + x + 1
        assert_eq!(count_de(&t, 3).unwrap().observed, 1.0);
        let mut last = 0.0;
        for x in (10..10_000).step_by(997) {
            let v = count_de(&t, x).unwrap().observed;
            assert!(v >= last);
            last = v;
        }
    }

    #[test]
    fn mixed_check_gaussian() {
        let t = table(20_000);
        let m = mixed_frobenius_check(&t, fd(-4), 13, 20_000).unwrap();
        assert!(m.checked > 0);
        assert_eq!(m.violations(), 0);
        assert!(m.max_trace_set <= 4);
        assert!(mixed_frobenius_check(&t, fd(-4), 7, 1000).is_err());
        assert!(mixed_frobenius_check(&t, fd(-15), 17, 1000).is_err());
    }

    #[test]
    fn split_window() {
        assert_eq!(split_primes_in_window(fd(-4), 10).unwrap(), vec![13, 17]);
    }
}
