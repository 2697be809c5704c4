/// Curve coefficients `(A, B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Curve {
    pub a: i64,
    pub b: i64,
}

pub fn parse_curve(s: &str) -> Result<Curve, String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected A,B, got {s:?}"))?;
    let int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|e| format!("bad coefficient {t:?}: {e}"))
    };
    Ok(Curve {
        a: int(a)?,
        b: int(b)?,
    })
}

/// A non-negative integer written plainly or as `1e6`, `2.5e5`.
pub fn parse_x(s: &str) -> Result<u64, String> {
    let s = s.trim();
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let (mant, exp) = s
        .split_once(['e', 'E'])
        .ok_or_else(|| format!("not an integer: {s:?}"))?;
    let exp: u32 = exp
        .trim_start_matches('+')
        .parse()
        .map_err(|_| format!("bad exponent in {s:?}"))?;
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(format!("bad mantissa in {s:?}"));
    }
    let frac = frac.trim_end_matches('0');
    let shift = exp
        .checked_sub(frac.len() as u32)
        .ok_or_else(|| format!("{s:?} is not an integer"))?;
    let digits: u64 = format!("{int}{frac}").parse::<u64>().unwrap_or(0);
    10u64
        .checked_pow(shift)
        .and_then(|p| digits.checked_mul(p))
        .ok_or_else(|| format!("{s:?} is too large"))
}

/// `c1,c2` as floats.
pub fn parse_support(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected c1,c2, got {s:?}"))?;
    let f = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| format!("bad support endpoint {t:?}: {e}"))
    };
    Ok((f(a)?, f(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific_x() {
        assert_eq!(parse_x("1e6"), Ok(1_000_000));
        assert_eq!(parse_x("2.5e3"), Ok(2500));
        assert_eq!(parse_x("1000"), Ok(1000));
        assert_eq!(parse_x("1E2"), Ok(100));
        assert!(parse_x("1.5e0").is_err());
        assert!(parse_x("e5").is_err());
        assert!(parse_x("-1e3").is_err());
        assert!(parse_x("1e30").is_err());
    }

    #[test]
    fn curves_and_lists() {
        assert_eq!(parse_curve("-1,0"), Ok(Curve { a: -1, b: 0 }));
        assert!(parse_curve("1").is_err());
    }
}
