use std::collections::BTreeSet;

use crate::arith::{inv_mod, kronecker_symbol, mul_mod, rem, sqrt_mod, FundamentalDiscriminant};
use crate::error::{domain, Result};

/// `(O/ℓO)^× / O^×` for a prime `ℓ ≥ 5` split in `k`.
///
/// A residue class is stored through the isomorphism
/// `(O/ℓO)^× ≅ F_ℓ^× × F_ℓ^×`, `(u + v√d)/2 -> ((u + vs)/2, (u - vs)/2)`
/// with `s^2 ≡ d`. Cosets are the orbits of the unit image acting
/// componentwise; coset ids follow the smallest pair in each orbit.
#[derive(Debug, Clone)]
pub struct ResidueUnitQuotient {
    pub d: FundamentalDiscriminant,
    pub ell: u64,
    /// Fixed square root of `d` modulo `ℓ`.
    pub sqrt_d: u64,
    units: Vec<(u64, u64)>,
    coset_of: Vec<u32>,
    reps: Vec<(u64, u64)>,
}

/// Norm and trace data of one coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetInvariants {
    pub norm: u64,
    /// `{Tr(u ε) mod ℓ : ε ∈ O^×}`, ascending.
    pub traces: Vec<u64>,
}

impl ResidueUnitQuotient {
    pub fn new(d: FundamentalDiscriminant, ell: u64) -> Result<Self> {
        if ell < 5 {
            return domain(format!("residue quotient needs ℓ >= 5, got {ell}"));
        }
        crate::arith::require_odd_prime(ell, "ℓ")?;
        if kronecker_symbol(d.get(), ell)? != 1 {
            return domain(format!("{ell} does not split in Q(√{d})"));
        }
        let sqrt_d = sqrt_mod(rem(d.get() as i128, ell), ell).expect("split prime");
        let mut q = Self {
            d,
            ell,
            sqrt_d,
            units: Vec::new(),
            coset_of: Vec::new(),
            reps: Vec::new(),
        };

        let (gu, gv) = match d.get() {
            -4 => (0, 1),
            -3 => (1, 1),
            _ => (-2, 0),
        };
        let gen = q.embed(gu, gv).expect("units are prime to ℓ");
        let mut e = (1, 1);
        loop {
            q.units.push(e);
            e = (mul_mod(e.0, gen.0, ell), mul_mod(e.1, gen.1, ell));
            if e == (1, 1) {
                break;
            }
        }
        debug_assert_eq!(q.units.len() as u32, d.unit_count());

        let n = (ell - 1) as usize;
        q.coset_of = vec![u32::MAX; n * n];
        for x in 1..ell {
            for y in 1..ell {
                if q.coset_of[q.index(x, y)] != u32::MAX {
                    continue;
                }
                let id = q.reps.len() as u32;
                q.reps.push((x, y));
                for &(ex, ey) in &q.units {
                    let i = q.index(mul_mod(x, ex, ell), mul_mod(y, ey, ell));
                    q.coset_of[i] = id;
                }
            }
        }
        Ok(q)
    }

    fn index(&self, x: u64, y: u64) -> usize {
        ((x - 1) * (self.ell - 1) + (y - 1)) as usize
    }

    /// Image of `(u + v√d)/2` in `F_ℓ × F_ℓ`; `None` unless it is a unit mod `ℓ`.
    pub fn embed(&self, u: i64, v: i64) -> Option<(u64, u64)> {
        let l = self.ell;
        let half = inv_mod(2, l)?;
        let vs = mul_mod(rem(v as i128, l), self.sqrt_d, l);
        let u = rem(u as i128, l);
        let x = mul_mod((u + vs) % l, half, l);
        let y = mul_mod((u + l - vs) % l, half, l);
        (x != 0 && y != 0).then_some((x, y))
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn unit_images(&self) -> &[(u64, u64)] {
        &self.units
    }

    pub fn coset_of_pair(&self, (x, y): (u64, u64)) -> usize {
        self.coset_of[self.index(x % self.ell, y % self.ell)] as usize
    }

    /// Coset of `(u + v√d)/2`, if that element is prime to `ℓ`.
    pub fn coset_of_element(&self, u: i64, v: i64) -> Option<usize> {
        self.embed(u, v).map(|p| self.coset_of_pair(p))
    }

    pub fn representative(&self, id: usize) -> (u64, u64) {
        self.reps[id]
    }

    pub fn orbit(&self, id: usize) -> Vec<(u64, u64)> {
        let (x, y) = self.reps[id];
        let l = self.ell;
        self.units
            .iter()
            .map(|&(ex, ey)| (mul_mod(x, ex, l), mul_mod(y, ey, l)))
            .collect()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let ((a, b), (c, d)) = (self.reps[i], self.reps[j]);
        self.coset_of_pair((mul_mod(a, c, self.ell), mul_mod(b, d, self.ell)))
    }

    pub fn identity(&self) -> usize {
        self.coset_of_pair((1, 1))
    }

    /// Norm of the coset, `xy mod ℓ`.
    pub fn norm(&self, id: usize) -> u64 {
        let (x, y) = self.reps[id];
        mul_mod(x, y, self.ell)
    }

    pub fn traces(&self, id: usize) -> BTreeSet<u64> {
        self.orbit(id)
            .into_iter()
            .map(|(x, y)| (x + y) % self.ell)
            .collect()
    }
}

/// Norm and trace set of a coset; the norm is checked to be orbit-invariant.
pub fn norm_trace_of_coset(q: &ResidueUnitQuotient, id: usize) -> CosetInvariants {
    let norm = q.norm(id);
    debug_assert!(q
        .orbit(id)
        .iter()
        .all(|&(x, y)| mul_mod(x, y, q.ell) == norm));
    CosetInvariants {
        norm,
        traces: q.traces(id).into_iter().collect(),
    }
}
