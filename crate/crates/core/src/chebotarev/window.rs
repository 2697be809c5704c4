use serde::{Deserialize, Serialize};

use crate::arith::{integrate, Quadrature};
use crate::elliptic::ApTable;
use crate::error::{contract, domain, Result};

use super::{check_ell, check_x, frob_class, CountReport, Predicate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WindowKind {
    /// `exp(-1/(1 - s^2))` rescaled to the support.
    Bump,
    /// Smooth, equal to 1 on `[1/2, 1]`.
    Dominating,
}

/// A smooth weight supported in `[c1, c2]` with its integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothWindow {
    pub kind: WindowKind,
    pub c1: f64,
    pub c2: f64,
    pub integral: f64,
    pub integral_error: f64,
}

/// Support used by the dominating window when none is requested.
pub const DOMINATING_SUPPORT: (f64, f64) = (0.25, 1.25);

fn bump(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - s * s)).exp()
    }
}

/// Smooth step: 0 for `u <= 0`, 1 for `u >= 1`.
fn step(u: f64) -> f64 {
    let g = |v: f64| if v <= 0.0 { 0.0 } else { (-1.0 / v).exp() };
    let (a, b) = (g(u), g(1.0 - u));
    if a + b == 0.0 {
        0.0
    } else {
        a / (a + b)
    }
}

impl SmoothWindow {
    pub fn eval(&self, t: f64) -> f64 {
        if t <= self.c1 || t >= self.c2 {
            return 0.0;
        }
        match self.kind {
            WindowKind::Bump => bump((2.0 * t - self.c1 - self.c2) / (self.c2 - self.c1)),
            WindowKind::Dominating => {
                step((t - self.c1) / (0.5 - self.c1)) * step((self.c2 - t) / (self.c2 - 1.0))
            }
        }
    }
}

/// Builds a window on `[c1, c2]`. A dominating window needs
/// `c1 < 1/2` and `c2 > 1`; see [`DOMINATING_SUPPORT`].
pub fn make_window(kind: WindowKind, c1: f64, c2: f64) -> Result<SmoothWindow> {
    if !(c1 > 0.0) || !(c1 < c2) || !c2.is_finite() {
        return domain(format!(
            "window support needs 0 < c1 < c2, got [{c1}, {c2}]"
        ));
    }
    if kind == WindowKind::Dominating && !(c1 < 0.5 && c2 > 1.0) {
        return domain(format!(
            "dominating window needs c1 < 1/2 < 1 < c2, got [{c1}, {c2}]"
        ));
    }
    let mut w = SmoothWindow {
        kind,
        c1,
        c2,
        integral: 0.0,
        integral_error: 0.0,
    };
    let Quadrature { value, error } = integrate(|t| w.eval(t), c1, c2, 1e-10, 1e-14);
    w.integral = value;
    w.integral_error = error;
    Ok(w)
}

/// Neumaier's compensated sum.
#[derive(Debug, Default, Clone, Copy)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `Σ log p · f(p/x)` over good odd `p ≠ ℓ` with class in `pred`, summed in
/// ascending `p`. The expected value is `(|C|/|G|) x ∫f`.
pub fn smoothed_count(
    table: &ApTable,
    ell: u32,
    pred: &Predicate,
    f: &SmoothWindow,
    x: u64,
) -> Result<CountReport> {
    check_x(x)?;
    let census = check_ell(ell)?;
    let reach = (f.c2 * x as f64).floor() as u64;
    if !table.covers(reach) {
        return contract(format!(
            "table covers x <= {}, window reaches {reach}",
            table.x
        ));
    }
    let (size, total) = pred.class_size(&census);
    let fraction = size as f64 / total as f64;
    let xf = x as f64;
    let mut acc = Neumaier::default();
    for r in table.upto(reach) {
        let w = f.eval(r.p as f64 / xf);
        if w == 0.0 {
            continue;
        }
        if frob_class(r, ell).is_some_and(|c| pred.holds_for(&c)) {
            acc.add((r.p as f64).ln() * w);
        }
    }
    let margin = (size as f64).sqrt() * xf.sqrt();
    Ok(
        CountReport::new(x, acc.value(), fraction * xf * f.integral, fraction, margin)
            .with("window", f.kind)
            .with("support", [f.c1, f.c2])
            .with("integral", f.integral),
    )
}
