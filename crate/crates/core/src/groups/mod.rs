//! Exhaustive models of `GL_2(F_ℓ)` for small `ℓ`, its Borel-type subgroups,
//! the trace/discriminant sets built from them, and the mixed group of pairs
//! `(A, u)` coupling `GL_2(F_ℓ)` with a residue-unit quotient.

mod borel;
mod mixed;

pub use borel::{conjugate_into, quotient_image_count, set_c_a, subgroup_buh, BorelSubgroups};
pub use mixed::{mixed_group, set_ccal, CcalSets, MixedElement, MixedGroup};

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{domain, Error, Result};

/// Largest `ℓ` for which `GL_2(F_ℓ)` is enumerated element by element.
pub const MAX_ENUM_ELL: u32 = 13;

/// A 2x2 matrix `[[a, b], [c, d]]` over `F_ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Mat2 {
    pub const fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self, ell: u32) -> u32 {
        let l = ell as u64;
        ((self.a as u64 * self.d as u64 + l * l - self.b as u64 * self.c as u64 % l) % l) as u32
    }

    pub fn trace(&self, ell: u32) -> u32 {
        (self.a + self.d) % ell
    }

    pub fn mul(&self, o: &Self, ell: u32) -> Self {
        let l = ell as u64;
        let f = |x: u32, y: u32, z: u32, w: u32| {
            ((x as u64 * y as u64 + z as u64 * w as u64) % l) as u32
        };
        Self {
            a: f(self.a, o.a, self.b, o.c),
            b: f(self.a, o.b, self.b, o.d),
            c: f(self.c, o.a, self.d, o.c),
            d: f(self.c, o.b, self.d, o.d),
        }
    }

    fn code(&self, ell: u32) -> usize {
        let l = ell as usize;
        ((self.a as usize * l + self.b as usize) * l + self.c as usize) * l + self.d as usize
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// `|GL_2(F_ℓ)| = (ℓ - 1)^2 (ℓ + 1) ℓ`.
pub fn gl2_order(ell: u64) -> u64 {
    (ell - 1) * (ell - 1) * (ell + 1) * ell
}

/// Whether `x` is a square in `F_ℓ` (0 included).
pub fn is_square_mod(x: u32, ell: u32) -> bool {
    let x = x % ell;
    x == 0 || ell == 2 || crate::arith::pow_mod(x as u64, (ell as u64 - 1) / 2, ell as u64) == 1
}

/// Squares of `F_ℓ` (0 included), as a lookup table.
pub fn square_table(ell: u32) -> Vec<bool> {
    let mut t = vec![false; ell as usize];
    for y in 0..ell as u64 {
        t[(y * y % ell as u64) as usize] = true;
    }
    t
}

/// `GL_2(F_ℓ)` with every element listed and indexed.
#[derive(Debug, Clone)]
pub struct Gl2 {
    pub ell: u32,
    elements: Vec<Mat2>,
    index: Vec<u32>,
    inverses: Vec<u32>,
}

impl Gl2 {
    pub fn new(ell: u32) -> Result<Self> {
        if !is_prime(ell as u64) || ell > MAX_ENUM_ELL {
            return domain(format!(
                "GL_2 enumeration needs a prime ℓ <= {MAX_ENUM_ELL}, got {ell}"
            ));
        }
        let l = ell as usize;
        let mut elements = Vec::with_capacity(gl2_order(ell as u64) as usize);
        let mut index = vec![u32::MAX; l * l * l * l];
        for a in 0..ell {
            for b in 0..ell {
                for c in 0..ell {
                    for d in 0..ell {
                        let m = Mat2::new(a, b, c, d);
                        if m.det(ell) != 0 {
                            index[m.code(ell)] = elements.len() as u32;
                            elements.push(m);
                        }
                    }
                }
            }
        }
        let mut g = Self {
            ell,
            elements,
            index,
            inverses: Vec::new(),
        };
        g.inverses = (0..g.order())
            .map(|i| g.index_of(&g.invert(&g.elements[i])))
            .collect();
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> Mat2 {
        self.elements[i as usize]
    }

    pub fn index_of(&self, m: &Mat2) -> u32 {
        let i = self.index[m.code(self.ell)];
        assert!(i != u32::MAX, "{m} is singular mod {}", self.ell);
        i
    }

    pub fn identity(&self) -> u32 {
        self.index_of(&Mat2::new(1, 0, 0, 1))
    }

    fn invert(&self, m: &Mat2) -> Mat2 {
        let l = self.ell;
        let di = (1..l)
            .find(|&x| (x as u64 * m.det(l) as u64) % l as u64 == 1)
            .expect("invertible");
        let s = |x: u32| (x as u64 * di as u64 % l as u64) as u32;
        let neg = |x: u32| (l - x) % l;
        Mat2::new(s(m.d), s(neg(m.b)), s(neg(m.c)), s(m.a))
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.index_of(&self.elements[x as usize].mul(&self.elements[y as usize], self.ell))
    }

    pub fn inv(&self, x: u32) -> u32 {
        self.inverses[x as usize]
    }

    /// `g x g^{-1}`.
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn trace(&self, x: u32) -> u32 {
        self.elements[x as usize].trace(self.ell)
    }

    pub fn det(&self, x: u32) -> u32 {
        self.elements[x as usize].det(self.ell)
    }

    pub fn subset<F: Fn(&Mat2) -> bool>(&self, pred: F) -> ElementSet {
        ElementSet::from_members(
            self.order(),
            (0..self.order() as u32).filter(|&i| pred(&self.elements[i as usize])),
        )
    }

    /// Checks closure under products and inverses.
    pub fn is_subgroup(&self, h: &ElementSet) -> bool {
        !h.is_empty()
            && h.iter().all(|x| h.contains(self.inv(x)))
            && h.iter()
                .all(|x| h.iter().all(|y| h.contains(self.mul(x, y))))
    }

    /// `g N g^{-1} = N` for every `g` in `ambient`.
    pub fn is_normal_in(&self, n: &ElementSet, ambient: &ElementSet) -> bool {
        ambient
            .iter()
            .all(|g| n.iter().all(|x| n.contains(self.conj(g, x))))
    }

    /// `g S g^{-1} ⊆ S` for `samples` random `g` in the whole group.
    pub fn sampled_conjugation_stable<R: Rng>(
        &self,
        s: &ElementSet,
        samples: usize,
        rng: &mut R,
    ) -> bool {
        if s.is_empty() {
            return true;
        }
        (0..samples).all(|_| {
            let g = rng.gen_range(0..self.order() as u32);
            let x = s.members[rng.gen_range(0..s.len())];
            s.contains(self.conj(g, x))
        })
    }
}

/// A subset of a finite group, by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSet {
    members: Vec<u32>,
    mask: Vec<bool>,
}

impl ElementSet {
    pub fn from_members(universe: usize, members: impl IntoIterator<Item = u32>) -> Self {
        let mut mask = vec![false; universe];
        let mut out = Vec::new();
        for m in members {
            if !mask[m as usize] {
                mask[m as usize] = true;
                out.push(m);
            }
        }
        out.sort_unstable();
        Self { members: out, mask }
    }

    pub fn contains(&self, x: u32) -> bool {
        self.mask.get(x as usize).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().copied()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self::from_members(self.mask.len(), self.iter().filter(|&x| other.contains(x)))
    }
}

/// Number of elements of `GL_2(F_ℓ)` with each characteristic polynomial
/// `x^2 - t x + δ`, by counting matrices `[[a, b], [c, d]]` over all `(a, d)`
/// and all values of `bc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPolyCensus {
    pub ell: u32,
    counts: Vec<u64>,
    pub total: u64,
}

impl CharPolyCensus {
    pub fn new(ell: u32) -> Result<Self> {
        if !is_prime(ell as u64) || ell > 1000 {
            return domain(format!("census needs a prime ℓ <= 1000, got {ell}"));
        }
        let l = ell as u64;
        // pairs (b, c) with bc = k
        let mut products = vec![l - 1; ell as usize];
        products[0] = 2 * l - 1;
        let mut counts = vec![0u64; (l * l) as usize];
        for a in 0..l {
            for d in 0..l {
                let t = (a + d) % l;
                let ad = a * d % l;
                for (k, &n) in products.iter().enumerate() {
                    let det = (ad + l - k as u64) % l;
                    if det != 0 {
                        counts[(t * l + det) as usize] += n;
                    }
                }
            }
        }
        let total = counts.iter().sum();
        if total != gl2_order(l) {
            return Err(Error::Invariant(format!(
                "census total {total} != |GL_2(F_{ell})|"
            )));
        }
        Ok(Self { ell, counts, total })
    }

    pub fn count(&self, t: u32, det: u32) -> u64 {
        self.counts[(t as usize % self.ell as usize) * self.ell as usize
            + det as usize % self.ell as usize]
    }

    /// Total size of the char-poly classes satisfying `pred(t, det)`.
    pub fn count_where<F: Fn(u32, u32) -> bool>(&self, pred: F) -> u64 {
        let l = self.ell;
        (0..l)
            .flat_map(|t| (1..l).map(move |d| (t, d)))
            .filter(|&(t, d)| pred(t, d))
            .map(|(t, d)| self.count(t, d))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_enumeration() {
        assert_eq!(gl2_order(5), 480);
        for ell in [2u32, 3, 5, 7] {
            assert_eq!(Gl2::new(ell).unwrap().order() as u64, gl2_order(ell as u64));
        }
        // all 81 matrices over F_3, counted directly
        let invertible = (0..81u32)
            .filter(|&n| {
                let (a, b, c, d) = (n % 3, n / 3 % 3, n / 9 % 3, n / 27);
                (a * d + 9 - b * c) % 3 != 0
            })
            .count();
        assert_eq!(invertible, 48);
        assert_eq!(Gl2::new(2).unwrap().order(), 6);
    }

    #[test]
    fn inverses_and_identity() {
        let g = Gl2::new(5).unwrap();
        let e = g.identity();
        for x in 0..g.order() as u32 {
            assert_eq!(g.mul(x, g.inv(x)), e);
        }
    }

    #[test]
    fn census_matches_enumeration() {
        for ell in [3u32, 5, 7] {
            let g = Gl2::new(ell).unwrap();
            let c = CharPolyCensus::new(ell).unwrap();
            for t in 0..ell {
                for d in 1..ell {
                    let direct = g
                        .elements()
                        .iter()
                        .filter(|m| m.trace(ell) == t && m.det(ell) == d)
                        .count();
                    assert_eq!(c.count(t, d), direct as u64);
                }
            }
        }
    }

    #[test]
    fn determinant_fibres_are_equal() {
        let c = CharPolyCensus::new(11).unwrap();
        for d in 1..11 {
            assert_eq!(c.count_where(|_, dt| dt == d) * 10, c.total);
        }
    }

    #[test]
    fn large_ell_rejected() {
        assert!(Gl2::new(17).is_err());
        assert!(Gl2::new(9).is_err());
    }
}
