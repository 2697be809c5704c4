use crate::error::{domain, Result};

/// A quadrature result with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

const MAX_DEPTH: u32 = 48;

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
///
/// Subintervals are refined until the Richardson error estimate falls below
/// `max(rel_tol * |I|, abs_floor)`, where `I` is a coarse first estimate.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_floor: f64,
) -> Quadrature {
    if a == b {
        return Quadrature {
            value: 0.0,
            error: 0.0,
        };
    }
    // Seed the tolerance from a 64-panel composite rule so that it scales with
    // the magnitude of the integral rather than with the first crude guess.
    let n = 64;
    let h = (b - a) / n as f64;
    let mut coarse = f(a) + f(b);
    for i in 1..n {
        coarse += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    coarse *= h / 3.0;
    let tol = (rel_tol * coarse.abs()).max(abs_floor);

    let mut value = 0.0;
    let mut error = 0.0;
    // Integrate the 64 panels separately so the recursion starts well resolved.
    for i in 0..n / 2 {
        let lo = a + (2 * i) as f64 * h;
        let hi = lo + 2.0 * h;
        let (fa, fm, fb) = (f(lo), f(lo + h), f(hi));
        let whole = simpson(lo, hi, fa, fm, fb);
        let (v, e) = refine(
            &f,
            lo,
            hi,
            fa,
            fm,
            fb,
            whole,
            tol / (n / 2) as f64,
            MAX_DEPTH,
        );
        value += v;
        error += e;
    }
    Quadrature { value, error }
}

#[inline]
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> (f64, f64) {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return (left + right + delta / 15.0, delta.abs() / 15.0);
    }
    let (lv, le) = refine(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1);
    let (rv, re) = refine(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
    (lv + rv, le + re)
}

/// Offset logarithmic integral `∫_2^x dt / log t`.
///
/// Integrated in the variable `u = log t`, where the integrand `e^u / u` is
/// smooth and slowly varying, to relative accuracy `1e-9`.
pub fn li(x: f64) -> Result<f64> {
    if !(x >= 2.0) || !x.is_finite() {
        return domain(format!("li needs x >= 2, got {x}"));
    }
    let q = integrate(|u: f64| u.exp() / u, 2f64.ln(), x.ln(), 1e-10, 1e-12);
    Ok(q.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|t| 3.0 * t * t, 0.0, 2.0, 1e-12, 1e-15);
        assert!((q.value - 8.0).abs() < 1e-12);
    }

    #[test]
    fn li_of_two_is_zero() {
        assert_eq!(li(2.0).unwrap(), 0.0);
    }

    #[test]
    fn li_is_increasing() {
        assert!(li(100.0).unwrap() > li(10.0).unwrap());
    }

    #[test]
    fn li_rejects_small_arguments() {
        assert!(li(1.5).is_err());
        assert!(li(f64::NAN).is_err());
    }

    #[test]
    fn li_of_ten_matches_trapezoid_oracle() {
        // independent route: composite trapezoid directly in t, 10^6 panels
        let n = 1_000_000;
        let (a, b) = (2.0f64, 10.0f64);
        let h = (b - a) / n as f64;
        let mut s = 0.5 * (1.0 / a.ln() + 1.0 / b.ln());
        for i in 1..n {
            s += 1.0 / (a + i as f64 * h).ln();
        }
        let trap = s * h;
        assert!(
            (li(10.0).unwrap() - trap).abs() < 1e-6,
            "{} vs {trap}",
            li(10.0).unwrap()
        );
    }

    #[test]
    fn li_large_argument_is_close_to_known_value() {
        // Li(10^6) = li(10^6) - li(2) = 78627.549159... - 1.045163780...
        let v = li(1e6).unwrap();
        assert!((v - 78_626.503_995_68).abs() / v < 1e-8, "{v}");
    }
}
