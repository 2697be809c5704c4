use crate::error::{domain, Result};

use super::require_odd_prime;

/// Jacobi symbol `(a/n)` for odd positive `n`, by quadratic reciprocity.
pub fn jacobi(a: i128, n: u64) -> i8 {
    debug_assert!(n % 2 == 1, "jacobi needs odd n");
    let mut n = n as u128;
    let mut a = a.rem_euclid(n as i128) as u128;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        (a, n) = (n % a, a);
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    require_odd_prime(p, "legendre modulus")?;
    Ok(jacobi(a as i128, p))
}

/// Kronecker symbol `(d/n)`: the completely multiplicative extension of the
/// Legendre symbol in `n`, with `(d/2)` given by `d mod 8`.
pub fn kronecker_symbol(d: i64, n: u64) -> Result<i8> {
    if n == 0 {
        return domain("kronecker symbol needs n >= 1");
    }
    let tz = n.trailing_zeros();
    let odd = n >> tz;
    let mut out = 1i8;
    if tz > 0 {
        let two = match d.rem_euclid(8) {
            0 | 2 | 4 | 6 => 0,
            1 | 7 => 1,
            _ => -1,
        };
        if two == 0 {
            return Ok(0);
        }
        if tz % 2 == 1 {
            out *= two;
        }
    }
    Ok(out * jacobi(d as i128, odd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_prime, pow_mod};

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(1, 5).unwrap(), 1);
        assert_eq!(legendre_symbol(5, 5).unwrap(), 0);
        // squares mod 5 are {1, 4}
        assert_eq!(legendre_symbol(2, 5).unwrap(), -1);
        assert_eq!(legendre_symbol(-1, 5).unwrap(), 1);
    }

    #[test]
    fn legendre_rejects_bad_moduli() {
        assert!(legendre_symbol(3, 2).is_err());
        assert!(legendre_symbol(3, 9).is_err());
        assert!(legendre_symbol(3, 1).is_err());
    }

    #[test]
    fn legendre_matches_euler_criterion_below_1000() {
        for p in (3..1000u64).filter(|&p| is_prime(p)) {
            for a in -(p as i64)..(2 * p as i64) {
                let e = pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
                let expect = match e {
                    0 => 0,
                    1 => 1,
                    _ => -1,
                };
                assert_eq!(legendre_symbol(a, p).unwrap(), expect, "({a}/{p})");
            }
        }
    }

    #[test]
    fn kronecker_examples() {
        // 5 = (2+i)(2-i): x^2 + 1 has the root 2 mod 5
        assert_eq!(kronecker_symbol(-4, 5).unwrap(), 1);
        // x^2 + 1 has no root mod 3
        assert_eq!(kronecker_symbol(-4, 3).unwrap(), -1);
        assert_eq!(kronecker_symbol(-7, 1).unwrap(), 1);
        assert_eq!(kronecker_symbol(-7, 2).unwrap(), 1);
        assert_eq!(kronecker_symbol(-3, 2).unwrap(), -1);
        assert_eq!(kronecker_symbol(-4, 2).unwrap(), 0);
    }
}
