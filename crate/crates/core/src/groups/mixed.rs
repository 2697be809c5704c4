use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::FundamentalDiscriminant;
use crate::error::{Error, Result};
use crate::quadfield::ResidueUnitQuotient;

use super::{square_table, ElementSet, Gl2};

/// `(A, u)` with `A` an index into `GL_2(F_ℓ)` and `u` a coset id of
/// `(O/ℓO)^×/O^×`, subject to `det A = N(u)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedElement {
    pub a: u32,
    pub u: u32,
}

#[derive(Debug, Clone)]
pub struct MixedGroup {
    pub gl2: Gl2,
    pub quotient: ResidueUnitQuotient,
    elements: Vec<MixedElement>,
    index: Vec<u32>,
}

/// Enumerates `{(A, u) : det A = N(u)}` for `ℓ` split in `Q(√d)`.
pub fn mixed_group(d: FundamentalDiscriminant, ell: u32) -> Result<MixedGroup> {
    let quotient = ResidueUnitQuotient::new(d, ell as u64)?;
    let gl2 = Gl2::new(ell)?;
    let nq = quotient.len();
    let mut by_norm: Vec<Vec<u32>> = vec![Vec::new(); ell as usize];
    for u in 0..nq {
        by_norm[quotient.norm(u) as usize].push(u as u32);
    }
    let mut elements = Vec::new();
    let mut index = vec![u32::MAX; gl2.order() * nq];
    for a in 0..gl2.order() as u32 {
        for &u in &by_norm[gl2.det(a) as usize] {
            index[a as usize * nq + u as usize] = elements.len() as u32;
            elements.push(MixedElement { a, u });
        }
    }
    Ok(MixedGroup {
        gl2,
        quotient,
        elements,
        index,
    })
}

impl MixedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[MixedElement] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> MixedElement {
        self.elements[i as usize]
    }

    /// Index of `(a, u)`, or `None` if `det A != N(u)`.
    pub fn index_of(&self, e: MixedElement) -> Option<u32> {
        let i = self.index[e.a as usize * self.quotient.len() + e.u as usize];
        (i != u32::MAX).then_some(i)
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let (p, q) = (self.elements[x as usize], self.elements[y as usize]);
        let e = MixedElement {
            a: self.gl2.mul(p.a, q.a),
            u: self.quotient.mul(p.u as usize, q.u as usize) as u32,
        };
        self.index_of(e).expect("closed under products")
    }

    pub fn inv(&self, x: u32) -> u32 {
        let p = self.elements[x as usize];
        let (rx, ry) = self.quotient.representative(p.u as usize);
        let l = self.quotient.ell;
        let ix = crate::arith::inv_mod(rx, l).expect("unit");
        let iy = crate::arith::inv_mod(ry, l).expect("unit");
        let u = self.quotient.coset_of_pair((ix, iy)) as u32;
        self.index_of(MixedElement {
            a: self.gl2.inv(p.a),
            u,
        })
        .expect("closed under inverses")
    }

    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn subset<F: Fn(&MixedElement) -> bool>(&self, pred: F) -> ElementSet {
        ElementSet::from_members(
            self.order(),
            (0..self.order() as u32).filter(|&i| pred(&self.elements[i as usize])),
        )
    }

    pub fn is_subgroup(&self, h: &ElementSet) -> bool {
        !h.is_empty()
            && h.iter().all(|x| h.contains(self.inv(x)))
            && h.iter()
                .all(|x| h.iter().all(|y| h.contains(self.mul(x, y))))
    }

    pub fn is_normal_in(&self, n: &ElementSet, ambient: &ElementSet) -> bool {
        ambient
            .iter()
            .all(|g| n.iter().all(|x| n.contains(self.conj(g, x))))
    }

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
            let x = s.members()[rng.gen_range(0..s.len())];
            s.contains(self.conj(g, x))
        })
    }

    /// Some `g ∈ 𝒢` with `g x g^{-1} ∈ target`, by exhaustive search.
    pub fn conjugate_into(&self, x: u32, target: &ElementSet) -> Option<u32> {
        (0..self.order() as u32).find(|&g| target.contains(self.conj(g, x)))
    }

    /// Expected `|𝒢| = ((ℓ - 1)^2 / w) · ℓ (ℓ - 1) (ℓ + 1)`.
    pub fn predicted_order(&self) -> u64 {
        let l = self.gl2.ell as u64;
        (l - 1) * (l - 1) / self.quotient.d.unit_count() as u64 * l * (l - 1) * (l + 1)
    }
}

/// The sets `𝒞`, `ℬ`, `𝒰` of the mixed group and the count `|𝒞'|`.
#[derive(Debug, Clone)]
pub struct CcalSets {
    /// `{(A, u) : tr A ∈ Tr(u), tr(A)^2 - 4 det A a square}`
    pub ccal: ElementSet,
    /// `{(A, u) : A upper triangular}`
    pub bcal: ElementSet,
    /// `{([[a, t], [0, a]], [a])}`
    pub ucal: ElementSet,
    pub ccal_cap_b: ElementSet,
    /// Number of `𝒰`-cosets in `𝒞 ∩ ℬ`.
    pub cprime: usize,
}

/// Builds `𝒞`, `ℬ`, `𝒰` and checks `𝒰 ≤ ℬ`, `𝒰 ◁ ℬ`, `𝒰·(𝒞∩ℬ) = 𝒞∩ℬ` and
/// that the `𝒰`-cosets partition `𝒞∩ℬ`.
pub fn set_ccal(g: &MixedGroup) -> Result<CcalSets> {
    let l = g.gl2.ell;
    let q = &g.quotient;
    let sq = square_table(l);
    let traces: Vec<Vec<bool>> = (0..q.len())
        .map(|u| {
            let mut m = vec![false; l as usize];
            for t in q.traces(u) {
                m[t as usize] = true;
            }
            m
        })
        .collect();

    let ccal = g.subset(|e| {
        let t = g.gl2.trace(e.a);
        let disc = (t as u64 * t as u64 + 4 * (l - g.gl2.det(e.a)) as u64) % l as u64;
        traces[e.u as usize][t as usize] && sq[disc as usize]
    });
    let bcal = g.subset(|e| g.gl2.element(e.a).c == 0);
    let ucal = g.subset(|e| {
        let m = g.gl2.element(e.a);
        m.c == 0 && m.a == m.d && e.u as usize == q.coset_of_pair((m.a as u64, m.a as u64))
    });
    let ccal_cap_b = ccal.intersect(&bcal);

    if !g.is_subgroup(&bcal) || !g.is_subgroup(&ucal) || !ucal.iter().all(|x| bcal.contains(x)) {
        return Err(Error::Invariant("𝒰 ≤ ℬ ≤ 𝒢 fails".into()));
    }
    if !g.is_normal_in(&ucal, &bcal) {
        return Err(Error::Invariant("𝒰 is not normal in ℬ".into()));
    }
    let mut seen = vec![false; g.order()];
    let mut cprime = 0;
    for x in ccal_cap_b.iter() {
        for y in ucal.iter() {
            if !ccal_cap_b.contains(g.mul(y, x)) {
                return Err(Error::Invariant("𝒞∩ℬ is not 𝒰-stable".into()));
            }
        }
        if !seen[x as usize] {
            cprime += 1;
            for y in ucal.iter() {
                seen[g.mul(x, y) as usize] = true;
            }
        }
    }
    if cprime * ucal.len() != ccal_cap_b.len() {
        return Err(Error::Invariant("𝒰-cosets do not partition 𝒞∩ℬ".into()));
    }
    Ok(CcalSets {
        ccal,
        bcal,
        ucal,
        ccal_cap_b,
        cprime,
    })
}
