//! Point counting over prime fields.
//!
//! Three exact routes:
//! * [`ap_legendre`]: `O(p)` character sum, the reference definition.
//! * [`ap_by_enumeration`]: `O(p^2)` scan of the affine plane, test oracle.
//! * [`ap_bsgs`]: Shanks-Mestre baby-step giant-step on `E` and its quadratic
//!   twist, `O(p^{1/4})` group operations per prime.
//!
//! All arithmetic assumes `p < 2^31` so products and sums fit in `u64`.

use crate::arith::{factor, isqrt, jacobi, sqrt_mod};

use super::EllipticCurve;

/// Below this the character sum beats BSGS bookkeeping.
const BSGS_THRESHOLD: u64 = 1000;
/// Random points tried (across curve and twist) before giving up on BSGS.
const MAX_POINTS: usize = 48;

pub fn ap_legendre(curve: &EllipticCurve, p: u64) -> i64 {
    let (a, b) = reduce_coeffs(curve, p);
    // squares mod p, then one table lookup per x
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for y in 1..=(p - 1) / 2 {
        chi[(y * y % p) as usize] = 1;
    }
    let mut sum = 0i64;
    for x in 0..p {
        let fx = (x * x % p * x + a * x + b) % p;
        sum += chi[fx as usize] as i64;
    }
    -sum
}

/// Counts `(x, y) ∈ F_p^2` on the curve plus the point at infinity.
pub fn ap_by_enumeration(curve: &EllipticCurve, p: u64) -> i64 {
    let (a, b) = reduce_coeffs(curve, p);
    let mut points = 1u64;
    for x in 0..p {
        let rhs = (x * x % p * x + a * x + b) % p;
        for y in 0..p {
            if y * y % p == rhs {
                points += 1;
            }
        }
    }
    p as i64 + 1 - points as i64
}

fn reduce_coeffs(curve: &EllipticCurve, p: u64) -> (u64, u64) {
    debug_assert!(p < 1 << 31);
    (
        curve.a.rem_euclid(p as i64) as u64,
        curve.b.rem_euclid(p as i64) as u64,
    )
}

pub fn ap_bsgs(curve: &EllipticCurve, p: u64) -> i64 {
    if p < BSGS_THRESHOLD {
        return ap_legendre(curve, p);
    }
    let (a, b) = reduce_coeffs(curve, p);
    match group_order(a, b, p) {
        Some(n) => p as i64 + 1 - n as i64,
        None => ap_legendre(curve, p),
    }
}

#[derive(Clone, Copy)]
struct Curve {
    a: u64,
    b: u64,
    p: u64,
}

type Point = Option<(u64, u64)>;

impl Curve {
    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        (x * x % p * x + self.a * x + self.b) % p
    }

    /// Scalar multiple by left-to-right double-and-add in Jacobian
    /// coordinates `(X : Y : Z) ~ (X/Z^2, Y/Z^3)`, with one inversion at the end.
    fn mul(&self, k: u64, pt: Point) -> Point {
        let (x, y) = pt?;
        if k == 0 {
            return None;
        }
        let base = (x, y, 1u64);
        let mut acc = base;
        for bit in (0..63 - k.leading_zeros()).rev() {
            acc = self.jac_double(acc);
            if (k >> bit) & 1 == 1 {
                acc = self.jac_add_affine(acc, (x, y));
            }
        }
        self.to_affine(acc)
    }

    fn to_affine(&self, (x, y, z): (u64, u64, u64)) -> Point {
        let p = self.p;
        if z == 0 {
            return None;
        }
        let zi = inv(z, p);
        let zi2 = zi * zi % p;
        Some((x * zi2 % p, y * (zi2 * zi % p) % p))
    }

    fn jac_double(&self, (x, y, z): (u64, u64, u64)) -> (u64, u64, u64) {
        let p = self.p;
        if z == 0 || y == 0 {
            return (1, 1, 0);
        }
        let yy = y * y % p;
        let s = 4 * (x * yy % p) % p;
        let zz = z * z % p;
        let m = (3 * (x * x % p) % p + self.a * (zz * zz % p)) % p;
        let x3 = (m * m % p + 2 * p - 2 * s % p) % p;
        let y3 = (m * ((s + p - x3) % p) % p + p - 8 * (yy * yy % p) % p) % p;
        let z3 = 2 * (y * z % p) % p;
        (x3, y3, z3)
    }

    /// Mixed addition of a Jacobian point and an affine point.
    fn jac_add_affine(
        &self,
        (x1, y1, z1): (u64, u64, u64),
        (x2, y2): (u64, u64),
    ) -> (u64, u64, u64) {
        let p = self.p;
        if z1 == 0 {
            return (x2, y2, 1);
        }
        let z1z1 = z1 * z1 % p;
        let u2 = x2 * z1z1 % p;
        let s2 = y2 * (z1 * z1z1 % p) % p;
        if u2 == x1 {
            if s2 == y1 {
                return self.jac_double((x1, y1, z1));
            }
            return (1, 1, 0);
        }
        let h = (u2 + p - x1) % p;
        let r = (s2 + p - y1) % p;
        let hh = h * h % p;
        let hhh = h * hh % p;
        let v = x1 * hh % p;
        let x3 = (r * r % p + 2 * p - hhh - 2 * v % p) % p;
        let y3 = (r * ((v + p - x3) % p) % p + p - y1 * hhh % p) % p;
        let z3 = z1 * h % p;
        (x3, y3, z3)
    }

    /// Affine points with `y != 0`, walking `x` upward from `start`.
    fn point_from(&self, start: &mut u64) -> Point {
        while *start < self.p {
            let x = *start;
            *start += 1;
            let r = self.rhs(x);
            if r != 0 && jacobi(r as i128, self.p) == 1 {
                return Some((x, sqrt_mod(r, self.p)?));
            }
        }
        None
    }

    /// Normalizes Jacobian points with a single inversion (Montgomery's trick).
    fn batch_affine(&self, pts: &[(u64, u64, u64)]) -> Vec<Point> {
        let p = self.p;
        let mut prefix = Vec::with_capacity(pts.len());
        let mut acc = 1u64;
        for &(_, _, z) in pts {
            prefix.push(acc);
            if z != 0 {
                acc = acc * z % p;
            }
        }
        let mut inv_acc = inv(acc, p);
        let mut out = vec![None; pts.len()];
        for (i, &(x, y, z)) in pts.iter().enumerate().rev() {
            if z == 0 {
                continue;
            }
            let zi = inv_acc * prefix[i] % p;
            inv_acc = inv_acc * z % p;
            let zi2 = zi * zi % p;
            out[i] = Some((x * zi2 % p, y * (zi2 * zi % p) % p));
        }
        out
    }

    /// Some `n` in the Hasse window with `nP = O`, by baby-step giant-step.
    fn multiple_in_window(&self, pt: Point, lo: u64, hi: u64) -> Option<u64> {
        let (px, py) = pt?;
        let m = isqrt(hi - lo + 1) + 1;
        let mut jac = Vec::with_capacity(m as usize);
        let mut q = (px, py, 1u64);
        jac.push(q);
        for _ in 1..m {
            q = self.jac_add_affine(q, (px, py));
            jac.push(q);
        }
        let mut baby: Vec<(u64, u64, u64)> = Vec::with_capacity(m as usize);
        for (j, b) in self.batch_affine(&jac).into_iter().enumerate() {
            match b {
                None => return Some(j as u64 + 1),
                Some((x, y)) => baby.push((x, j as u64 + 1, y)),
            }
        }
        // stable sort keeps the smallest j per x first
        baby.sort_by_key(|&(x, _, _)| x);

        let stride = 2 * m + 1;
        let Some(step) = self.mul(stride, pt) else {
            return Some(stride);
        };
        let start = lo + m;
        let steps = (hi + m - start) / stride + 1;
        let mut giants = Vec::with_capacity(steps as usize);
        let mut r = match self.mul(start, pt) {
            None => return Some(start),
            Some((x, y)) => (x, y, 1u64),
        };
        for _ in 0..steps {
            giants.push(r);
            r = self.jac_add_affine(r, step);
        }
        for (i, g) in self.batch_affine(&giants).into_iter().enumerate() {
            let centre = start + i as u64 * stride;
            let Some((x, y)) = g else { return Some(centre) };
            let k = baby.partition_point(|&(bx, _, _)| bx < x);
            if let Some(&(bx, j, yj)) = baby.get(k) {
                if bx == x {
                    return Some(if y == yj { centre - j } else { centre + j });
                }
            }
        }
        None
    }

    fn order_of(&self, pt: Point, multiple: u64) -> u64 {
        let mut ord = multiple;
        for (q, e) in factor(multiple) {
            for _ in 0..e {
                if self.mul(ord / q, pt).is_none() {
                    ord /= q;
                } else {
                    break;
                }
            }
        }
        ord
    }
}

/// Inverse of a nonzero residue modulo the prime `p`.
fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u64
}

fn lcm(a: u64, b: u64) -> u64 {
    a / crate::arith::gcd(a, b) * b
}

/// `#E(F_p)` from the orders of points on `E` and on its quadratic twist.
///
/// Every candidate `n` in the Hasse window must be divisible by the exponent
/// witness `lcm_e` and have `2p + 2 - n` divisible by the twist's `lcm_t`.
/// Returns `None` if the candidate set never narrows to one value.
fn group_order(a: u64, b: u64, p: u64) -> Option<u64> {
    let width = isqrt(4 * p);
    let (lo, hi) = (p + 1 - width, p + 1 + width);
    let curve = Curve { a, b, p };
    let g = (2..p).find(|&g| jacobi(g as i128, p) == -1)?;
    let g2 = g * g % p;
    let twist = Curve {
        a: a * g2 % p,
        b: b * (g2 * g % p) % p,
        p,
    };

    let (mut lcm_e, mut lcm_t) = (1u64, 1u64);
    let (mut next_e, mut next_t) = (0u64, 0u64);
    for attempt in 0..MAX_POINTS {
        let on_twist = attempt % 2 == 1;
        let (c, next) = if on_twist {
            (&twist, &mut next_t)
        } else {
            (&curve, &mut next_e)
        };
        let pt @ Some(_) = c.point_from(next) else {
            continue;
        };
        let multiple = c.multiple_in_window(pt, lo, hi)?;
        let ord = c.order_of(pt, multiple);
        if on_twist {
            lcm_t = lcm(lcm_t, ord);
        } else {
            lcm_e = lcm(lcm_e, ord);
        }
        let mut found = None;
        let mut count = 0;
        let first = lo.div_ceil(lcm_e) * lcm_e;
        let mut n = first;
        while n <= hi {
            if (2 * p + 2 - n).is_multiple_of(lcm_t) {
                found = Some(n);
                count += 1;
                if count > 1 {
                    break;
                }
            }
            n += lcm_e;
        }
        if count == 1 {
            return found;
        }
    }
    None
}
