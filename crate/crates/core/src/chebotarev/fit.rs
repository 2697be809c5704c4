use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundMode {
    AGeneric,
    AZero,
    KField,
}

/// Auxiliary prime scale `y` and the resulting upper bound, unit constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundProfile {
    pub y: f64,
    pub bound: f64,
}

/// `y` and the bound shape for `P_{E,a}` (`a ≠ 0` or `a = 0`) or `P_{E,k}`
/// with class number `h`. `h` is ignored outside [`BoundMode::KField`].
pub fn bound_profile(x: f64, h: u64, mode: BoundMode) -> Result<BoundProfile> {
    if !(x >= 16.0) || !x.is_finite() {
        return domain(format!("bound profile needs x >= 16, got {x}"));
    }
    let lx = x.ln();
    Ok(match mode {
        BoundMode::AGeneric => BoundProfile {
            y: x.powf(0.2) / lx.powf(0.4),
            bound: x.powf(0.8) / lx.powf(0.6),
        },
        BoundMode::AZero => BoundProfile {
            y: x.powf(0.25) / lx.sqrt(),
            bound: x.powf(0.75) / lx.sqrt(),
        },
        BoundMode::KField => {
            if h == 0 {
                return domain("class number must be positive");
            }
            let hf = h as f64;
            let y = if hf <= x.sqrt() / lx.powi(6) {
                hf.powf(-0.4) * x.powf(0.2) / lx.powf(0.4)
            } else {
                lx * lx
            };
            BoundProfile {
                y,
                bound: hf.powf(-0.6) * x.powf(0.8) / lx.powf(0.6) + x.sqrt() * lx.powi(3),
            }
        }
    })
}

/// Fits of counts `P(x)` against `C x^{1/2}/log x` and against `c x^e`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoteFit {
    /// `C` with the shape `x^{1/2}/log x` held fixed.
    pub constant: f64,
    /// Root-mean-square residual of `log P` under the fixed shape.
    pub constant_rms: f64,
    pub exponent: f64,
    pub power_constant: f64,
    pub power_rms: f64,
}

/// Least squares in log space over at least three points with increasing
/// `x > 1` and positive counts.
pub fn asymptote_fit(points: &[(f64, f64)]) -> Result<AsymptoteFit> {
    if points.len() < 3 {
        return Err(Error::FitUnavailable(format!(
            "need 3 points, got {}",
            points.len()
        )));
    }
    if points
        .iter()
        .any(|&(x, p)| !(x > 1.0) || !(p > 0.0) || !x.is_finite() || !p.is_finite())
    {
        return Err(Error::FitUnavailable(
            "counts must be positive and x > 1".into(),
        ));
    }
    if points.windows(2).any(|w| !(w[0].0 < w[1].0)) {
        return Err(Error::FitUnavailable(
            "x must be strictly increasing".into(),
        ));
    }
    let n = points.len() as f64;
    let shape = |x: f64| 0.5 * x.ln() - x.ln().ln();
    let offsets: Vec<f64> = points.iter().map(|&(x, p)| p.ln() - shape(x)).collect();
    let log_c = offsets.iter().sum::<f64>() / n;
    let constant_rms = (offsets.iter().map(|o| (o - log_c).powi(2)).sum::<f64>() / n).sqrt();

    let xs: Vec<f64> = points.iter().map(|&(x, _)| x.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, p)| p.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let power_rms = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - exponent * x).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(AsymptoteFit {
        constant: log_c.exp(),
        constant_rms,
        exponent,
        power_constant: intercept.exp(),
        power_rms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_y_at_1e5() {
        let b = bound_profile(1e5, 1, BoundMode::AGeneric).unwrap();
        assert!((b.y - 10.0 * (1e5f64).ln().powf(-0.4)).abs() < 1e-12);
        assert!(bound_profile(15.0, 1, BoundMode::AZero).is_err());
    }

    #[test]
    fn bounds_increase() {
        for mode in [BoundMode::AGeneric, BoundMode::AZero, BoundMode::KField] {
            let mut last = 0.0;
            for k in 0..40 {
                let b = bound_profile(16.0 * 1.5f64.powi(k), 3, mode).unwrap().bound;
                assert!(b > last);
                last = b;
            }
        }
    }

    #[test]
    fn k_field_switches_branch() {
        let x = 1e30f64;
        let small = bound_profile(x, 1, BoundMode::KField).unwrap();
        let big = bound_profile(x, 10u64.pow(12), BoundMode::KField).unwrap();
        assert!((big.y - x.ln().powi(2)).abs() < 1e-9);
        assert!(small.y > big.y);
    }

    #[test]
    fn planted_models_recovered() {
        let xs = [1e4, 1e5, 1e6, 1e7];
        let lt: Vec<_> = xs
            .iter()
            .map(|&x: &f64| (x, 2.0 * x.sqrt() / x.ln()))
            .collect();
        assert!((asymptote_fit(&lt).unwrap().constant - 2.0).abs() < 0.02);
        let pw: Vec<_> = xs.iter().map(|&x: &f64| (x, x.powf(0.8))).collect();
        assert!((asymptote_fit(&pw).unwrap().exponent - 0.8).abs() < 0.008);
    }

    #[test]
    fn unavailable_fits() {
        assert!(matches!(
            asymptote_fit(&[(10.0, 1.0), (100.0, 2.0)]),
            Err(Error::FitUnavailable(_))
        ));
        assert!(asymptote_fit(&[(10.0, 1.0), (100.0, 0.0), (1000.0, 3.0)]).is_err());
        assert!(asymptote_fit(&[(10.0, 1.0), (10.0, 2.0), (1000.0, 3.0)]).is_err());
    }
}
