//! Segmented sieve of Eratosthenes.
//!
//! The range is cut into windows of [`SEGMENT_LEN`] integers. Each window is
//! sieved independently against the base primes up to `sqrt(hi)`, so windows
//! can be produced in parallel and concatenated in ascending order.

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::isqrt;

/// Integers per sieve window (L2-sized working set).
pub const SEGMENT_LEN: u64 = 1 << 20;

/// All primes in `[lo, hi]`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeRange {
    pub lo: u64,
    pub hi: u64,
    pub primes: Vec<u64>,
}

impl PrimeRange {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    /// Number of listed primes `<= x`.
    pub fn count_upto(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p <= x)
    }
}

/// All primes `<= limit`.
pub fn sieve_primes(limit: u64) -> Result<PrimeRange> {
    if limit < 2 {
        return Err(Error::EmptyRange(limit));
    }
    Ok(primes_between(2, limit))
}

/// All primes in `[lo, hi]`; empty when `hi < max(lo, 2)`.
pub fn primes_between(lo: u64, hi: u64) -> PrimeRange {
    let start = lo.max(2);
    if hi < start {
        return PrimeRange {
            lo,
            hi,
            primes: Vec::new(),
        };
    }
    let base = small_primes(isqrt(hi));
    let windows: Vec<(u64, u64)> = window_bounds(start, hi).collect();
    let chunks: Vec<Vec<u64>> = windows
        .par_iter()
        .map(|&(a, b)| sieve_window(a, b, &base))
        .collect();
    PrimeRange {
        lo,
        hi,
        primes: chunks.concat(),
    }
}

/// Lazily sieves `[lo, hi]` one window at a time, yielding each window's primes.
pub fn segments(lo: u64, hi: u64) -> impl Iterator<Item = Vec<u64>> {
    let start = lo.max(2);
    let base = if hi >= start {
        small_primes(isqrt(hi))
    } else {
        Vec::new()
    };
    let bounds: Vec<(u64, u64)> = if hi >= start {
        window_bounds(start, hi).collect()
    } else {
        Vec::new()
    };
    bounds
        .into_iter()
        .map(move |(a, b)| sieve_window(a, b, &base))
}

fn window_bounds(start: u64, hi: u64) -> impl Iterator<Item = (u64, u64)> {
    let mut a = start;
    std::iter::from_fn(move || {
        if a > hi {
            return None;
        }
        let b = hi.min(a.saturating_add(SEGMENT_LEN - 1));
        let out = (a, b);
        a = b.saturating_add(1);
        if b == u64::MAX {
            a = u64::MAX;
        }
        Some(out)
    })
}

/// Plain sieve for the base primes.
fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Sieves `[a, b]` (inclusive) using base primes covering `sqrt(b)`.
fn sieve_window(a: u64, b: u64, base: &[u64]) -> Vec<u64> {
    let len = (b - a + 1) as usize;
    let mut marked = vec![false; len];
    for &p in base {
        if p * p > b {
            break;
        }
        let first = (p * p).max(a.div_ceil(p) * p);
        let mut m = first;
        while m <= b {
            marked[(m - a) as usize] = true;
            m += p;
        }
    }
    marked
        .iter()
        .enumerate()
        .filter(|&(i, &c)| !c && a + i as u64 >= 2)
        .map(|(i, _)| a + i as u64)
        .collect()
}
