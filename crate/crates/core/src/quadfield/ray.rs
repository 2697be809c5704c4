use crate::arith::{factor, kronecker_symbol, FundamentalDiscriminant};
use crate::error::{domain, Result};

use super::class_number;

/// `|(O/mO)^×|`, multiplicative over prime powers `p^e || m`.
pub fn residue_unit_count(d: FundamentalDiscriminant, m: u64) -> u64 {
    factor(m)
        .into_iter()
        .map(|(p, e)| {
            let pe1 = p.pow(e - 1);
            let local = match kronecker_symbol(d.get(), p).expect("p > 0") {
                1 => (p - 1) * (p - 1),
                -1 => p * p - 1,
                _ => p * (p - 1),
            };
            pe1 * pe1 * local
        })
        .product()
}

/// Order of the ray class group modulo `m`, from
/// `1 -> O^× -> (O/mO)^× -> Cl_m -> Cl -> 1`.
pub fn ray_class_order(d: FundamentalDiscriminant, m: u64) -> Result<u64> {
    if m < 5 {
        return domain(format!("ray class order needs m >= 5, got {m}"));
    }
    let h = class_number(d.get())?.h;
    Ok(h * residue_unit_count(d, m) / d.unit_count() as u64)
}

/// Elements `x + yω` of `O = Z[ω]`, `ω = (δ + √d)/2`, as `(x, y)`.
type Elt = (i128, i128);

#[derive(Debug, Clone, Copy)]
struct Ring {
    delta: i128,
    /// `N(ω) = (δ^2 - d)/4`
    n0: i128,
}

impl Ring {
    fn new(d: i64) -> Self {
        let d = d as i128;
        let delta = d.rem_euclid(2);
        Self {
            delta,
            n0: (delta * delta - d) / 4,
        }
    }

    fn mul(&self, (a, b): Elt, (c, e): Elt) -> Elt {
        // ω^2 = δω - n0
        (a * c - b * e * self.n0, a * e + b * c + b * e * self.delta)
    }

    fn conj(&self, (a, b): Elt) -> Elt {
        (a + b * self.delta, -b)
    }

    fn norm(&self, (a, b): Elt) -> i128 {
        a * a + self.delta * a * b + self.n0 * b * b
    }
}

/// Hermite normal form `{(A, 0), (B, C)}` of the lattice spanned by `vs`
/// (assumed full rank), `0 <= B < A`, `C > 0`.
fn hnf(vs: &[Elt]) -> [Elt; 2] {
    let mut rows: Vec<Elt> = vs.to_vec();
    // fold second coordinates into one row by Euclid
    let mut pivot = (0i128, 0i128);
    for r in rows.iter_mut() {
        let (mut p, mut q) = (pivot, *r);
        while q.1 != 0 {
            let t = p.1.div_euclid(q.1);
            p = (p.0 - t * q.0, p.1 - t * q.1);
            std::mem::swap(&mut p, &mut q);
        }
        pivot = p;
        *r = q;
    }
    if pivot.1 < 0 {
        pivot = (-pivot.0, -pivot.1);
    }
    let a = rows.iter().fold(0i128, |g, r| gcd_i(g, r.0));
    [(a, 0), (pivot.0.rem_euclid(a), pivot.1)]
}

fn gcd_i(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Lagrange-Gauss reduction of a lattice basis for the norm form.
fn gauss_reduce(ring: &Ring, mut b1: Elt, mut b2: Elt) -> (Elt, Elt) {
    loop {
        if ring.norm(b1) > ring.norm(b2) {
            std::mem::swap(&mut b1, &mut b2);
        }
        let n1 = ring.norm(b1);
        let cross = ring.norm((b1.0 + b2.0, b1.1 + b2.1)) - n1 - ring.norm(b2);
        // nearest integer to cross / (2 n1)
        let mu = (2 * cross + 2 * n1).div_euclid(4 * n1);
        if mu == 0 {
            return (b1, b2);
        }
        b2 = (b2.0 - mu * b1.0, b2.1 - mu * b1.1);
    }
}

/// An integral ideal, stored by HNF basis with its norm.
#[derive(Debug, Clone, Copy)]
struct Ideal {
    basis: [Elt; 2],
    norm: i128,
}

/// All integral ideals with norm `<= bound` and norm prime to `m`.
fn ideals_upto(ring: &Ring, bound: i128, m: i128) -> Vec<Ideal> {
    let mut out = Vec::new();
    let mut c = 1i128;
    while c * c <= bound {
        let mut a = 1i128;
        while c * c * a <= bound {
            let n = c * c * a;
            if gcd_i(n, m) == 1 {
                for b in 0..a {
                    if ring.norm((b, 1)) % a == 0 {
                        out.push(Ideal {
                            basis: [(c * a, 0), (c * b, c)],
                            norm: n,
                        });
                    }
                }
            }
            a += 1;
        }
        c += 1;
    }
    out.sort_by_key(|i| i.norm);
    out
}

/// `J ~ I` in `Cl_m` iff `J Ī = (γ)` for some `γ ≡ N(I) (mod mO)`.
fn ray_equivalent(ring: &Ring, j: &Ideal, i: &Ideal, m: i128) -> bool {
    let mut gens = Vec::with_capacity(4);
    for &x in &j.basis {
        for &y in &i.basis {
            gens.push(ring.mul(x, ring.conj(y)));
        }
    }
    let [b1, b2] = hnf(&gens);
    let target = j.norm * i.norm;
    debug_assert_eq!(b1.0 * b2.1, target);
    let (r1, r2) = gauss_reduce(ring, b1, b2);
    // a generator has the minimal possible norm; all such vectors are small
    // combinations of a reduced basis
    for s in -2i128..=2 {
        for t in -2i128..=2 {
            let g = (s * r1.0 + t * r2.0, s * r1.1 + t * r2.1);
            if ring.norm(g) == target && g.1.rem_euclid(m) == 0 && (g.0 - i.norm).rem_euclid(m) == 0
            {
                return true;
            }
        }
    }
    false
}

/// Order of `Cl_m` by direct enumeration: ideals prime to `m` up to the norm
/// bound `m^2 (|d| + 1) / 4`, grouped into ray classes.
///
/// Independent of the class number and unit group; used to cross-check
/// [`ray_class_order`].
pub fn ray_class_order_by_enumeration(d: FundamentalDiscriminant, m: u64) -> Result<u64> {
    if m < 2 {
        return domain(format!("modulus must be >= 2, got {m}"));
    }
    let ring = Ring::new(d.get());
    let m = m as i128;
    let bound = m * m * (d.abs() as i128 + 1) / 4;
    let mut reps: Vec<Ideal> = Vec::new();
    for j in ideals_upto(&ring, bound, m) {
        if !reps.iter().any(|i| ray_equivalent(&ring, &j, i, m)) {
            reps.push(j);
        }
    }
    Ok(reps.len() as u64)
}
