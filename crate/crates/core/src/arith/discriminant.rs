use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Discriminant of an imaginary quadratic field.
///
/// Either `d ≡ 1 (mod 4)` and squarefree, or `d = 4m` with `m` squarefree and
/// `m ≡ 2, 3 (mod 4)`. Always negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct FundamentalDiscriminant(i64);

impl FundamentalDiscriminant {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return domain(format!("{d} is not a negative discriminant"));
        }
        let ok = match d.rem_euclid(4) {
            1 => squarefree_kernel(d) == d,
            0 => {
                let m = d / 4;
                matches!(m.rem_euclid(4), 2 | 3) && squarefree_kernel(m) == m
            }
            _ => false,
        };
        if !ok {
            return domain(format!("{d} is not a fundamental discriminant"));
        }
        Ok(Self(d))
    }

    #[inline]
    pub fn get(self) -> i64 {
        self.0
    }

    /// `|d|`.
    #[inline]
    pub fn abs(self) -> u64 {
        self.0.unsigned_abs()
    }

    /// Number of roots of unity in the field.
    pub fn unit_count(self) -> u32 {
        match self.0 {
            -4 => 4,
            -3 => 6,
            _ => 2,
        }
    }
}

impl fmt::Display for FundamentalDiscriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<i64> for FundamentalDiscriminant {
    type Error = crate::error::Error;
    fn try_from(d: i64) -> Result<Self> {
        Self::new(d)
    }
}

impl From<FundamentalDiscriminant> for i64 {
    fn from(d: FundamentalDiscriminant) -> i64 {
        d.0
    }
}

/// Squarefree part of `n`, keeping its sign: `n = kernel * f^2`.
pub fn squarefree_kernel(n: i64) -> i64 {
    if n == 0 {
        return 0;
    }
    let mut m = n.unsigned_abs();
    let mut kernel = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            kernel *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    kernel *= m;
    n.signum() * kernel as i64
}

/// Discriminant of `Q(sqrt(D))` for a negative discriminant `D ≡ 0, 1 (mod 4)`.
pub fn fundamental_discriminant(disc: i64) -> Result<FundamentalDiscriminant> {
    if disc >= 0 {
        return domain(format!("discriminant {disc} must be negative"));
    }
    if !matches!(disc.rem_euclid(4), 0 | 1) {
        return domain(format!("discriminant {disc} is not 0 or 1 mod 4"));
    }
    let s = squarefree_kernel(disc);
    let d = if s.rem_euclid(4) == 1 { s } else { 4 * s };
    Ok(FundamentalDiscriminant(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(fundamental_discriminant(-4).unwrap().get(), -4);
        assert_eq!(fundamental_discriminant(-16).unwrap().get(), -4);
        assert_eq!(fundamental_discriminant(-11).unwrap().get(), -11);
        assert_eq!(fundamental_discriminant(-3 * 49).unwrap().get(), -3);
        assert_eq!(fundamental_discriminant(-8 * 9).unwrap().get(), -8);
        assert_eq!(fundamental_discriminant(-12).unwrap().get(), -3);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(fundamental_discriminant(0).is_err());
        assert!(fundamental_discriminant(5).is_err());
        assert!(fundamental_discriminant(-5).is_err());
        assert!(fundamental_discriminant(-6).is_err());
    }

    #[test]
    fn newtype_validation() {
        for d in [-3, -4, -7, -8, -11, -15, -19, -20, -23, -24] {
            assert!(FundamentalDiscriminant::new(d).is_ok(), "{d}");
        }
        for d in [-1, -2, -12, -16, -27, -28, 4, 0] {
            assert!(FundamentalDiscriminant::new(d).is_err(), "{d}");
        }
    }
}
