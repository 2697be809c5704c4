use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Positive definite binary quadratic form `ax^2 + bxy + cy^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl QuadForm {
    pub fn new(a: i128, b: i128, c: i128) -> Result<Self> {
        let f = Self { a, b, c };
        if a <= 0 || f.discriminant() >= 0 {
            return domain(format!("{f} is not positive definite"));
        }
        Ok(f)
    }

    /// The identity class `(1, δ, (δ - d)/4)` with `δ ≡ d (mod 2)`.
    pub fn principal(d: i64) -> Self {
        let d = d as i128;
        let delta = d.rem_euclid(2);
        Self {
            a: 1,
            b: delta,
            c: (delta - d) / 4,
        }
    }

    pub fn discriminant(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && !(b < 0 && (b.abs() == a || a == c))
    }

    /// Translates `b` into `(-a, a]` by `x -> x + ry`.
    fn normalize(self) -> Self {
        let Self { a, b, c } = self;
        if -a < b && b <= a {
            return self;
        }
        let r = (a - b).div_euclid(2 * a);
        Self {
            a,
            b: b + 2 * r * a,
            c: a * r * r + b * r + c,
        }
    }

    /// Gauss reduction; returns the reduced form and the number of
    /// `(a, b, c) -> (c, -b, a)` swaps performed.
    pub fn reduce(self) -> (Self, u32) {
        let mut f = self.normalize();
        let mut steps = 0;
        while f.a > f.c {
            f = Self {
                a: f.c,
                b: -f.b,
                c: f.a,
            }
            .normalize();
            steps += 1;
        }
        if f.a == f.c && f.b < 0 {
            f.b = -f.b;
        }
        (f, steps)
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// All reduced forms of discriminant `d < 0`, ordered by `(a, b)`.
pub fn reduced_forms(d: i64) -> Vec<QuadForm> {
    let d = d as i128;
    let mut out = Vec::new();
    let mut a = 1i128;
    while 3 * a * a <= -d {
        for b in (-a + 1)..=a {
            if (b - d).rem_euclid(2) != 0 || (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let f = QuadForm {
                a,
                b,
                c: (b * b - d) / (4 * a),
            };
            if f.is_reduced() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_forms_of_minus_23() {
        let fs = reduced_forms(-23);
        let triples: Vec<_> = fs.iter().map(|f| (f.a, f.b, f.c)).collect();
        assert_eq!(triples, vec![(1, 1, 6), (2, -1, 3), (2, 1, 3)]);
    }

    #[test]
    fn reduction_preserves_discriminant() {
        let f = QuadForm::new(59, 49, 11).unwrap();
        let (g, _) = f.reduce();
        assert_eq!(g.discriminant(), f.discriminant());
        assert!(g.is_reduced());
    }

    #[test]
    fn indefinite_rejected() {
        assert!(QuadForm::new(1, 3, 1).is_err());
        assert!(QuadForm::new(-1, 0, -1).is_err());
    }
}
