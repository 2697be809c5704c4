use crate::error::{contract, Error, Result};

use super::{square_table, ElementSet, Gl2, Mat2};

/// Upper triangular `B`, its unipotent radical `U` and
/// `H = {[[a, t], [0, a]]}` (scalars times `U`).
#[derive(Debug, Clone)]
pub struct BorelSubgroups {
    pub b: ElementSet,
    pub u: ElementSet,
    pub h: ElementSet,
}

/// Builds `B ⊇ H ⊇ U` and checks subgroup closure, `U ◁ B`, `H ◁ B` and
/// Lagrange divisibility.
pub fn subgroup_buh(g: &Gl2) -> Result<BorelSubgroups> {
    let b = g.subset(|m| m.c == 0);
    let u = g.subset(|m| m.c == 0 && m.a == 1 && m.d == 1);
    let h = g.subset(|m| m.c == 0 && m.a == m.d);
    for (name, s) in [("B", &b), ("U", &u), ("H", &h)] {
        if !g.is_subgroup(s) {
            return Err(Error::Invariant(format!("{name} is not a subgroup")));
        }
        if !g.order().is_multiple_of(s.len()) {
            return Err(Error::Invariant(format!("|{name}| does not divide |G|")));
        }
    }
    if !g.is_normal_in(&u, &b) || !g.is_normal_in(&h, &b) {
        return Err(Error::Invariant("U or H is not normal in B".into()));
    }
    Ok(BorelSubgroups { b, u, h })
}

/// `C = {A : tr A ≡ a, tr(A)^2 - 4 det(A) is a square (0 included)}`.
pub fn set_c_a(g: &Gl2, a: u32) -> ElementSet {
    let l = g.ell;
    let sq = square_table(l);
    g.subset(|m| {
        let t = m.trace(l);
        let disc = (t as u64 * t as u64 + 4 * (l - m.det(l)) as u64) % l as u64;
        t == a % l && sq[disc as usize]
    })
}

/// Number of cosets `sN` met by `set`, for a subgroup `N` with `N·set = set`.
///
/// Checks that `N` is a subgroup, that `set` is a union of `N`-cosets, and
/// that the count equals `|set| / |N|`.
pub fn quotient_image_count(g: &Gl2, set: &ElementSet, n: &ElementSet) -> Result<usize> {
    if !g.is_subgroup(n) {
        return contract("N is not a subgroup");
    }
    for s in set.iter() {
        for x in n.iter() {
            if !set.contains(g.mul(x, s)) || !set.contains(g.mul(s, x)) {
                return contract("set is not stable under N");
            }
        }
    }
    let mut seen = vec![false; g.order()];
    let mut cosets = 0;
    for s in set.iter() {
        if seen[s as usize] {
            continue;
        }
        cosets += 1;
        for x in n.iter() {
            seen[g.mul(s, x) as usize] = true;
        }
    }
    if cosets * n.len() != set.len() {
        return Err(Error::Invariant("cosets do not partition the set".into()));
    }
    Ok(cosets)
}

/// Some `h` with `h x h^{-1} ∈ target`, by exhaustive search.
pub fn conjugate_into(g: &Gl2, x: u32, target: &ElementSet) -> Option<Mat2> {
    (0..g.order() as u32)
        .find(|&h| target.contains(g.conj(h, x)))
        .map(|h| g.element(h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn borel_orders_ell_5() {
        let g = Gl2::new(5).unwrap();
        let s = subgroup_buh(&g).unwrap();
        assert_eq!((s.b.len(), s.u.len(), s.h.len()), (80, 5, 20));
        assert_eq!(s.b.len() / s.u.len(), 16);
        assert_eq!(s.b.len() / s.h.len(), 4);
    }

    #[test]
    fn image_counts_ell_5() {
        let g = Gl2::new(5).unwrap();
        let s = subgroup_buh(&g).unwrap();
        let c0 = set_c_a(&g, 0).intersect(&s.b);
        assert_eq!(quotient_image_count(&g, &c0, &s.u).unwrap(), 4);
        assert_eq!(quotient_image_count(&g, &c0, &s.h).unwrap(), 1);
        let c1 = set_c_a(&g, 1).intersect(&s.b);
        assert_eq!(quotient_image_count(&g, &c1, &s.u).unwrap(), 3);
        let trivial = ElementSet::from_members(g.order(), [g.identity()]);
        assert_eq!(quotient_image_count(&g, &c1, &trivial).unwrap(), c1.len());
    }

    #[test]
    fn unstable_set_is_a_contract_error() {
        let g = Gl2::new(5).unwrap();
        let s = subgroup_buh(&g).unwrap();
        let one = ElementSet::from_members(g.order(), [g.identity()]);
        assert!(matches!(
            quotient_image_count(&g, &one, &s.u),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn c_is_conjugate_into_b_ell_5() {
        let g = Gl2::new(5).unwrap();
        let s = subgroup_buh(&g).unwrap();
        for a in 0..5 {
            for x in set_c_a(&g, a).iter() {
                assert!(conjugate_into(&g, x, &s.b).is_some());
            }
        }
    }
}
