//! Imaginary quadratic fields `k = Q(√d)`: class numbers via reduced forms,
//! splitting of primes, principality of prime ideals, Cornacchia
//! representations, residue rings modulo split primes and ray class orders.

mod forms;
mod ray;
mod residue;

pub use forms::{reduced_forms, QuadForm};
pub use ray::{ray_class_order, ray_class_order_by_enumeration, residue_unit_count};
pub use residue::{norm_trace_of_coset, CosetInvariants, ResidueUnitQuotient};

use serde::{Deserialize, Serialize};

use crate::arith::{
    is_square, isqrt, kronecker_symbol, require_odd_prime, sqrt_mod, FundamentalDiscriminant,
};
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticField {
    pub d: FundamentalDiscriminant,
    pub h: u64,
    pub w: u32,
}

/// Class number and unit count of `Q(√d)`; `d` must be fundamental.
pub fn class_number(d: i64) -> Result<QuadraticField> {
    let d = FundamentalDiscriminant::new(d)?;
    Ok(QuadraticField {
        d,
        h: reduced_forms(d.get()).len() as u64,
        w: d.unit_count(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

pub fn splitting_type(d: FundamentalDiscriminant, ell: u64) -> Result<Splitting> {
    require_odd_prime(ell, "ℓ")?;
    Ok(match kronecker_symbol(d.get(), ell)? {
        1 => Splitting::Split,
        -1 => Splitting::Inert,
        _ => Splitting::Ramified,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdealClass {
    Principal,
    NonPrincipal,
}

/// Whether the primes above a split `p` are principal.
///
/// The prime `(p, (b + √d)/2)` corresponds to the form `(p, b, (b^2 - d)/4p)`;
/// it is principal iff that form reduces to the principal form. Both primes
/// above `p` have inverse classes, so the answer does not depend on the sign of `b`.
pub fn ideal_class_of_prime(d: FundamentalDiscriminant, p: u64) -> Result<IdealClass> {
    if splitting_type(d, p)? != Splitting::Split {
        return domain(format!("{p} does not split in Q(√{d})"));
    }
    let dd = d.get() as i128;
    let mut b = sqrt_mod(dd.rem_euclid(p as i128) as u64, p).expect("split") as i128;
    if (b - dd).rem_euclid(2) != 0 {
        b = p as i128 - b;
    }
    let four_p = 4 * p as i128;
    debug_assert_eq!((b * b - dd) % four_p, 0);
    let f = QuadForm::new(p as i128, b, (b * b - dd) / four_p)?;
    let (r, _) = f.reduce();
    Ok(if r == QuadForm::principal(d.get()) {
        IdealClass::Principal
    } else {
        IdealClass::NonPrincipal
    })
}

/// Solves `u^2 + |d| v^2 = 4p` with `u, v >= 0`, i.e. a generator
/// `π = (u + v√d)/2` of norm `p`.
///
/// Returns `None` when `p` is not split or the primes above `p` are not
/// principal.
pub fn cornacchia(d: FundamentalDiscriminant, p: u64) -> Option<(i64, i64)> {
    if p == 2 || kronecker_symbol(d.get(), p).ok()? != 1 {
        return None;
    }
    let dd = d.get() as i128;
    let mut x0 = sqrt_mod(dd.rem_euclid(p as i128) as u64, p)? as i128;
    if (x0 - dd).rem_euclid(2) != 0 {
        x0 = p as i128 - x0;
    }
    let four_p = 4 * p as i128;
    let limit = isqrt(4 * p) as i128;
    let (mut a, mut b) = (2 * p as i128, x0);
    while b > limit {
        (a, b) = (b, a % b);
    }
    let rest = four_p - b * b;
    if rest % -dd != 0 {
        return None;
    }
    let c = (rest / -dd) as u64;
    if !is_square(c) {
        return None;
    }
    Some((b as i64, isqrt(c) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(d: i64) -> FundamentalDiscriminant {
        FundamentalDiscriminant::new(d).unwrap()
    }

    /// Exhaustive search over `v <= sqrt(4p/|d|)`.
    fn represent_by_search(d: i64, p: u64) -> Option<(i64, i64)> {
        let n = 4 * p as i64;
        (0..).take_while(|v| -d * v * v <= n).find_map(|v| {
            let r = n + d * v * v;
            let u = (r as f64).sqrt().round() as i64;
            (u * u == r).then_some((u, v))
        })
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(-4).unwrap().h, 1);
        assert_eq!(class_number(-23).unwrap().h, 3);
        let k = class_number(-3).unwrap();
        assert_eq!((k.h, k.w), (1, 6));
        assert_eq!(class_number(-15).unwrap().h, 2);
        assert_eq!(class_number(-71).unwrap().h, 7);
        assert!(class_number(-12).is_err());
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(splitting_type(fd(-4), 5).unwrap(), Splitting::Split);
        assert_eq!(splitting_type(fd(-4), 3).unwrap(), Splitting::Inert);
        assert_eq!(splitting_type(fd(-3), 3).unwrap(), Splitting::Ramified);
        assert!(splitting_type(fd(-3), 9).is_err());
    }

    #[test]
    fn principality_examples() {
        assert_eq!(
            ideal_class_of_prime(fd(-4), 5).unwrap(),
            IdealClass::Principal
        );
        let expect = if represent_by_search(-23, 59).is_some() {
            IdealClass::Principal
        } else {
            IdealClass::NonPrincipal
        };
        assert_eq!(ideal_class_of_prime(fd(-23), 59).unwrap(), expect);
        assert!(ideal_class_of_prime(fd(-4), 3).is_err());
        assert!(ideal_class_of_prime(fd(-3), 3).is_err());
    }

    #[test]
    fn cornacchia_examples() {
        assert_eq!(cornacchia(fd(-4), 5), Some((4, 1)));
        assert_eq!(cornacchia(fd(-4), 3), None);
        assert_eq!(cornacchia(fd(-3), 7), Some((5, 1)));
    }

    #[test]
    fn cornacchia_agrees_with_search_and_forms() {
        for d in [-4, -3, -7, -8, -11, -23, -15, -20] {
            let d = fd(d);
            for p in (3..10_000u64).filter(|&p| crate::arith::is_prime(p)) {
                if splitting_type(d, p).unwrap() != Splitting::Split {
                    assert_eq!(cornacchia(d, p), None);
                    continue;
                }
                let c = cornacchia(d, p);
                if let Some((u, v)) = c {
                    assert_eq!(u * u - d.get() * v * v, 4 * p as i64);
                }
                assert_eq!(
                    c.is_some(),
                    represent_by_search(d.get(), p).is_some(),
                    "d={d} p={p}"
                );
                let principal = ideal_class_of_prime(d, p).unwrap() == IdealClass::Principal;
                assert_eq!(c.is_some(), principal, "d={d} p={p}");
            }
        }
    }
}
