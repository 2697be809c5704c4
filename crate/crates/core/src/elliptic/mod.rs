//! Elliptic curves `y^2 = x^3 + Ax + B` over the rationals and their traces
//! of Frobenius.
//!
//! Sign convention: `a_p = p + 1 - #E(F_p)`, so that the characteristic
//! polynomial of Frobenius is `x^2 - a_p x + p`.

mod cache;
mod count;

pub use cache::{read_cache, read_cache_file, write_cache, write_cache_file, CACHE_HEADER};
pub use count::{ap_bsgs, ap_by_enumeration, ap_legendre};

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{fundamental_discriminant, is_prime, sieve_primes, FundamentalDiscriminant};
use crate::error::{domain, Error, Result};

/// Short Weierstrass model with integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EllipticCurve {
    pub a: i64,
    pub b: i64,
    /// `-16 (4A^3 + 27B^2)`
    pub disc: i128,
}

impl EllipticCurve {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        let (a128, b128) = (a as i128, b as i128);
        let disc = 4 * a128 * a128 * a128 + 27 * b128 * b128;
        if disc == 0 {
            return domain(format!("y^2 = x^3 + {a}x + {b} is singular"));
        }
        Ok(Self {
            a,
            b,
            disc: -16 * disc,
        })
    }

    /// Good reduction at `p`, approximated by `p ∤ disc` for this model.
    pub fn good_reduction(&self, p: u64) -> bool {
        self.disc % p as i128 != 0
    }

    /// Odd primes of good reduction, i.e. the primes the counting engine sums over.
    pub fn is_counted_prime(&self, p: u64) -> bool {
        p != 2 && self.good_reduction(p)
    }
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + {}x + {}", self.a, self.b)
    }
}

/// Free-function form of [`EllipticCurve::good_reduction`].
pub fn good_reduction(curve: &EllipticCurve, p: u64) -> bool {
    curve.good_reduction(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReductionType {
    Ordinary,
    Supersingular,
}

/// Frobenius data at one prime of good reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ApRecord {
    pub p: u64,
    pub a: i64,
    pub ordinary: bool,
    /// `a^2 - 4p`, the discriminant of the Frobenius polynomial.
    pub disc: i64,
    /// Discriminant of the Frobenius field `Q(sqrt(a^2 - 4p))`.
    pub fund: FundamentalDiscriminant,
}

impl ApRecord {
    pub fn new(p: u64, a: i64) -> Result<Self> {
        let disc = a * a - 4 * p as i64;
        if disc >= 0 {
            return Err(Error::Invariant(format!(
                "Hasse bound fails: a = {a} at p = {p}"
            )));
        }
        Ok(Self {
            p,
            a,
            ordinary: a.rem_euclid(p as i64) != 0,
            disc,
            fund: fundamental_discriminant(disc)?,
        })
    }

    pub fn reduction_type(&self) -> ReductionType {
        reduction_type(self)
    }
}

pub fn reduction_type(rec: &ApRecord) -> ReductionType {
    if rec.a.rem_euclid(rec.p as i64) == 0 {
        ReductionType::Supersingular
    } else {
        ReductionType::Ordinary
    }
}

/// Trace of Frobenius at an odd prime of good reduction, by the Legendre sum
/// `a_p = -Σ_x ((x^3 + Ax + B) / p)`.
pub fn ap(curve: &EllipticCurve, p: u64) -> Result<i64> {
    check_prime(curve, p)?;
    Ok(ap_legendre(curve, p))
}

/// Trace of Frobenius using the fastest exact method for the size of `p`.
pub fn ap_fast(curve: &EllipticCurve, p: u64) -> Result<i64> {
    check_prime(curve, p)?;
    Ok(ap_bsgs(curve, p))
}

fn check_prime(curve: &EllipticCurve, p: u64) -> Result<()> {
    if p == 2 {
        return domain("p = 2 is excluded");
    }
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if !curve.good_reduction(p) {
        return domain(format!("{curve} has bad reduction at {p}"));
    }
    Ok(())
}

/// Trace of `F^m` for a 2x2 matrix `F` with trace `a` and determinant `p`:
/// `s_m = a s_{m-1} - p s_{m-2}`, `s_0 = 2`, `s_1 = a`.
pub fn trace_of_power(a: i64, p: u64, m: u32) -> Result<i128> {
    if m < 1 {
        return domain("trace_of_power needs m >= 1");
    }
    let (a, p) = (a as i128, p as i128);
    let (mut prev, mut cur) = (2i128, a);
    for _ in 1..m {
        let next = a
            .checked_mul(cur)
            .and_then(|x| p.checked_mul(prev).and_then(|y| x.checked_sub(y)))
            .ok_or_else(|| Error::Domain(format!("trace of F^{m} overflows i128")))?;
        (prev, cur) = (cur, next);
    }
    Ok(cur)
}

/// Frobenius records for every odd prime `p <= x` of good reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApTable {
    pub curve: EllipticCurve,
    pub x: u64,
    pub records: Vec<ApRecord>,
}

impl ApTable {
    /// Records with `p <= x` (the table must cover `x`).
    pub fn upto(&self, x: u64) -> &[ApRecord] {
        let end = self.records.partition_point(|r| r.p <= x);
        &self.records[..end]
    }

    pub fn covers(&self, x: u64) -> bool {
        self.x >= x
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// One [`ApRecord`] per odd good prime `p <= x`, ascending.
pub fn ap_table(curve: &EllipticCurve, x: u64) -> ApTable {
    ap_table_sharded(curve, x, 1)
}

/// As [`ap_table`], with the prime range split into `shards` contiguous
/// pieces evaluated independently; the concatenation is shard-independent.
pub fn ap_table_sharded(curve: &EllipticCurve, x: u64, shards: usize) -> ApTable {
    let primes: Vec<u64> = match sieve_primes(x) {
        Ok(r) => r
            .primes
            .into_iter()
            .filter(|&p| curve.is_counted_prime(p))
            .collect(),
        Err(_) => Vec::new(),
    };
    let shards = shards.max(1);
    let chunk = primes.len().div_ceil(shards).max(1);
    let records = primes
        .par_chunks(chunk)
        .map(|ps| {
            ps.iter()
                .map(|&p| ApRecord::new(p, ap_bsgs(curve, p)).expect("Hasse bound is a theorem"))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .concat();
    ApTable {
        curve: *curve,
        x,
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: i64, b: i64) -> EllipticCurve {
        EllipticCurve::new(a, b).unwrap()
    }

    #[test]
    fn singular_model_rejected() {
        assert!(EllipticCurve::new(0, 0).is_err());
        assert!(EllipticCurve::new(-3, 2).is_err());
    }

    #[test]
    fn good_reduction_examples() {
        let e = curve(1, 1);
        assert_eq!(e.disc, -16 * 31);
        assert!(e.good_reduction(5));
        assert!(!e.good_reduction(31));
        assert!(!e.good_reduction(2));
    }

    #[test]
    fn ap_examples() {
        let e = curve(1, 1);
        // 9 points over F_5 including infinity
        assert_eq!(ap(&e, 5).unwrap(), -3);
        // x = 0: 1 (2 pts), x = 1: 0 (1 pt), x = 2: 11 = 2 (0 pts) plus infinity
        assert_eq!(ap(&e, 3).unwrap(), 3 + 1 - 4);
        assert!(ap(&e, 2).is_err());
        assert!(ap(&e, 31).is_err());
        assert!(ap(&e, 9).is_err());
    }

    #[test]
    fn table_for_small_bound() {
        let t = ap_table(&curve(1, 1), 10);
        let ps: Vec<u64> = t.records.iter().map(|r| r.p).collect();
        assert_eq!(ps, vec![3, 5, 7]);
        assert!(t.records.iter().all(|r| r.disc % r.fund.get() == 0));
        assert!(ap_table(&curve(1, 1), 2).is_empty());
    }

    #[test]
    fn reduction_types() {
        let r = ApRecord::new(5, -3).unwrap();
        assert_eq!(r.reduction_type(), ReductionType::Ordinary);
        let s = ApRecord::new(7, 0).unwrap();
        assert_eq!(s.reduction_type(), ReductionType::Supersingular);
        assert_eq!(s.fund, fundamental_discriminant(-28).unwrap());
        assert!(ApRecord::new(5, 5).is_err());
    }

    #[test]
    fn trace_of_power_small_cases() {
        assert_eq!(trace_of_power(-3, 5, 1).unwrap(), -3);
        assert_eq!(trace_of_power(-3, 5, 2).unwrap(), 9 - 10);
        assert!(trace_of_power(1, 5, 0).is_err());
        assert!(trace_of_power(1_000_000, 1_000_000_007, 40).is_err());
    }

    #[test]
    fn shard_count_does_not_change_table() {
        let e = curve(2, 3);
        let one = ap_table_sharded(&e, 20_000, 1);
        for s in [2, 3, 7, 64] {
            assert_eq!(ap_table_sharded(&e, 20_000, s), one);
        }
    }
}
