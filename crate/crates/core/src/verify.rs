//! Exact verification suites over the group, class-function and
//! quadratic-field layers, each reducing to a pass/fail outcome.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::arith::{kronecker_symbol, FundamentalDiscriminant};
use crate::chebotarev::mixed_frobenius_check;
use crate::classfn::{
    conjugacy_classes, induce, inner_product, lambda_check, restrict, ClassFunction,
    FiniteGroupTable, Subgroup,
};
use crate::elliptic::{ap_table, EllipticCurve};
use crate::error::{domain, Error, Result};
use crate::groups::{
    gl2_order, mixed_group, quotient_image_count, set_c_a, set_ccal, subgroup_buh, Gl2,
};
use crate::quadfield::{class_number, ray_class_order, ray_class_order_by_enumeration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    /// Frobenius reciprocity and `Ind δ_{C_H(s)} = [Cent_G(s) : Cent_H(s)] δ_{C_G(s)}`.
    Functoriality,
    /// Ray class orders against ideal enumeration.
    RayClass,
    /// Live Frobenius generators against `ρ_{E,ℓ}` data.
    FrobeniusField,
    /// Orders of `G, B, U, H` and the images of `C ∩ B`.
    Borel,
    /// The mixed group and its sets `𝒞, ℬ, 𝒰`.
    MixedGroup,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Functoriality,
        Suite::RayClass,
        Suite::FrobeniusField,
        Suite::Borel,
        Suite::MixedGroup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Functoriality => "functoriality",
            Self::RayClass => "ray-class",
            Self::FrobeniusField => "frobenius-field",
            Self::Borel => "borel",
            Self::MixedGroup => "mixed-group",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Self::Functoriality => "induction, reciprocity and centralizer indices",
            Self::RayClass => "ray class orders h|(O/mO)^x|/w by ideal enumeration",
            Self::FrobeniusField => {
                "Frobenius generators: trace membership, norm congruence, principality"
            }
            Self::Borel => "GL_2(F_l) Borel cardinalities and images of C in B/U, B/H",
            Self::MixedGroup => "mixed group order, C n B bound and U-coset structure",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub passed: bool,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {:<16} {} ({} checks)",
            self.suite.name(),
            self.suite.description(),
            self.checks
        )?;
        for m in &self.failures {
            write!(f, "\n    {m}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Restrict the group suites to this prime.
    pub ell: Option<u32>,
    /// Random class functions per group pair.
    pub samples: Option<usize>,
    /// Report this suite as failed regardless of its result.
    pub inject_fault: Option<Suite>,
}

#[derive(Default)]
struct Tally {
    checks: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, got: T, want: T, what: &str) {
        self.check(got == want, || {
            format!("{what}: got {got:?}, expected {want:?}")
        });
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let mut t = Tally::default();
    match suite {
        Suite::Functoriality => functoriality(&mut t, opts)?,
        Suite::RayClass => ray_class(&mut t)?,
        Suite::FrobeniusField => frobenius_field(&mut t, opts)?,
        Suite::Borel => borel(&mut t, opts)?,
        Suite::MixedGroup => mixed(&mut t, opts)?,
    }
    if opts.inject_fault == Some(suite) {
        t.failures.push("injected fault".into());
    }
    Ok(SuiteOutcome {
        suite,
        passed: t.failures.is_empty(),
        checks: t.checks,
        failures: t.failures,
    })
}

pub fn run_all(suites: &[Suite], opts: &VerifyOptions) -> Result<Vec<SuiteOutcome>> {
    suites.iter().map(|&s| run_suite(s, opts)).collect()
}

/// `(G, H)` pairs for the functoriality suite: `(S_3, C_3)` and the Borel
/// subgroups of `GL_2(F_3)` and `GL_2(F_5)`.
pub fn functoriality_pairs() -> Result<Vec<(String, FiniteGroupTable, Subgroup)>> {
    let s3 = FiniteGroupTable::symmetric3();
    let c3: Vec<u32> = s3
        .elements()
        .filter(|&x| s3.mul(s3.mul(x, x), x) == s3.identity())
        .collect();
    let c3 = s3.subgroup(&c3)?;
    let mut out = vec![("S3 > C3".to_string(), s3, c3)];
    for ell in [3, 5] {
        let gl = Gl2::new(ell)?;
        let b = subgroup_buh(&gl)?.b;
        let g = FiniteGroupTable::from_gl2(&gl);
        let h = g.subgroup(b.members())?;
        out.push((format!("GL2(F{ell}) > B"), g, h));
    }
    Ok(out)
}

fn functoriality(t: &mut Tally, opts: &VerifyOptions) -> Result<()> {
    let samples = opts.samples.unwrap_or(100);
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    for (name, g, h) in functoriality_pairs()? {
        let gc = conjugacy_classes(&g);
        let hc = conjugacy_classes(&h.table);
        for i in 0..samples {
            let phi = ClassFunction::random(&h.table, &hc, &mut rng);
            let psi = ClassFunction::random(&g, &gc, &mut rng);
            let lhs = inner_product(&g, &induce(&g, &h, &phi)?, &psi)?;
            let rhs = inner_product(&h.table, &phi, &restrict(&g, &h, &psi)?)?;
            t.check(lhs == rhs, || {
                format!("{name}: reciprocity fails for sample {i}")
            });
        }
        for class in &hc.classes {
            let c = lambda_check(&g, &h, class[0])?;
            t.check(c.holds(), || {
                format!(
                    "{name}: λ = {} but index {} at s = {}",
                    c.lambda, c.index, class[0]
                )
            });
        }
    }
    Ok(())
}

fn ray_class(t: &mut Tally) -> Result<()> {
    for d in -24..0 {
        let Ok(fd) = FundamentalDiscriminant::new(d) else {
            continue;
        };
        for m in 5..=10 {
            let formula = ray_class_order(fd, m)?;
            let oracle = ray_class_order_by_enumeration(fd, m)?;
            t.eq(formula, oracle, &format!("d = {d}, m = {m}"));
        }
    }
    Ok(())
}

/// Curve, field and `ℓ` for the live Frobenius check; `ℓ` overridable
/// when it splits in some class-number-one field.
pub fn frobenius_field_config(
    ell: Option<u32>,
) -> Result<(EllipticCurve, FundamentalDiscriminant, u32, u64)> {
    let curve = EllipticCurve::new(1, 1)?;
    let x = 100_000;
    let Some(ell) = ell else {
        return Ok((curve, FundamentalDiscriminant::new(-4)?, 13, x));
    };
    for d in [-4, -3, -7, -8, -11, -19, -43, -67, -163] {
        if kronecker_symbol(d, ell as u64)? == 1 {
            return Ok((curve, FundamentalDiscriminant::new(d)?, ell, x));
        }
    }
    domain(format!("ℓ = {ell} splits in no class-number-one field"))
}

fn frobenius_field(t: &mut Tally, opts: &VerifyOptions) -> Result<()> {
    let (curve, d, ell, x) = frobenius_field_config(opts.ell)?;
    let table = ap_table(&curve, x);
    t.eq(class_number(d.get())?.h, 1, "class number");
    match mixed_frobenius_check(&table, d, ell, x) {
        Ok(m) => {
            t.check(m.checked > 0, || {
                format!("no ordinary prime with field disc {d} below {x}")
            });
            t.eq(m.trace_violations, 0, "trace membership violations");
            t.eq(m.norm_violations, 0, "norm congruence violations");
            t.eq(m.non_principal, 0, "non-principal primes");
            t.check(m.max_trace_set <= d.unit_count() as usize, || {
                "trace set larger than |O^x|".into()
            });
        }
        Err(e) => t.check(false, || e.to_string()),
    }
    Ok(())
}

fn ells(opts: &VerifyOptions) -> Vec<u32> {
    opts.ell.map_or_else(|| vec![5, 7, 11, 13], |l| vec![l])
}

/// Checks at one prime `ℓ`: `|G|, |B|, |U|`, `|B/U| = (ℓ-1)^2`,
/// `|B/H| = ℓ - 1`, `|C'| = ℓ - 1` or `ℓ - 2`, and `|C''| = 1` for `a = 0`.
pub fn borel_checks(ell: u32) -> Result<Vec<(String, u64, u64)>> {
    let g = Gl2::new(ell)?;
    let s = subgroup_buh(&g)?;
    let l = ell as u64;
    let mut out = vec![
        ("|G|".to_string(), g.order() as u64, gl2_order(l)),
        ("|B|".into(), s.b.len() as u64, (l - 1) * (l - 1) * l),
        ("|U|".into(), s.u.len() as u64, l),
        (
            "|B/U|".into(),
            (s.b.len() / s.u.len()) as u64,
            (l - 1) * (l - 1),
        ),
        ("|B/H|".into(), (s.b.len() / s.h.len()) as u64, l - 1),
    ];
    for a in 0..ell {
        let c = set_c_a(&g, a).intersect(&s.b);
        let want = if a == 0 { l - 1 } else { l - 2 };
        out.push((
            format!("|C'| a={a}"),
            quotient_image_count(&g, &c, &s.u)? as u64,
            want,
        ));
        if a == 0 {
            out.push((
                "|C''| a=0".into(),
                quotient_image_count(&g, &c, &s.h)? as u64,
                1,
            ));
        }
    }
    Ok(out)
}

fn borel(t: &mut Tally, opts: &VerifyOptions) -> Result<()> {
    for ell in ells(opts) {
        for (what, got, want) in borel_checks(ell)? {
            t.eq(got, want, &format!("ℓ = {ell}: {what}"));
        }
    }
    Ok(())
}

fn mixed_pairs(opts: &VerifyOptions) -> Result<Vec<(i64, u32)>> {
    let default = vec![(-4, 5), (-4, 13), (-7, 11)];
    let Some(ell) = opts.ell else {
        return Ok(default);
    };
    let picked: Vec<_> = default.iter().copied().filter(|&(_, l)| l == ell).collect();
    if !picked.is_empty() {
        return Ok(picked);
    }
    for d in [-4, -3, -7, -8, -11] {
        if ell >= 5 && kronecker_symbol(d, ell as u64)? == 1 {
            return Ok(vec![(d, ell)]);
        }
    }
    domain(format!("ℓ = {ell} splits in none of the test fields"))
}

/// Checks for one `(d, ℓ)`: the order of `𝒢`, `|𝒞∩ℬ| <= 2(ℓ-1)^2 ℓ`
/// and `|𝒞'| |𝒰| = |𝒞∩ℬ|`. Normality of `𝒰` in `ℬ` and the `𝒰`-stability
/// of `𝒞∩ℬ` are enforced by [`set_ccal`].
pub fn mixed_checks(d: i64, ell: u32) -> Result<Vec<(String, u64, u64)>> {
    let g = mixed_group(FundamentalDiscriminant::new(d)?, ell)?;
    let s = set_ccal(&g)?;
    let l = ell as u64;
    let bound = 2 * (l - 1) * (l - 1) * l;
    let cb = s.ccal_cap_b.len() as u64;
    Ok(vec![
        ("|𝒢|".to_string(), g.order() as u64, g.predicted_order()),
        ("|𝒞∩ℬ| <= bound".into(), (cb <= bound) as u64, 1),
        ("|𝒞'||𝒰|".into(), (s.cprime * s.ucal.len()) as u64, cb),
    ])
}

fn mixed(t: &mut Tally, opts: &VerifyOptions) -> Result<()> {
    for (d, ell) in mixed_pairs(opts)? {
        match mixed_checks(d, ell) {
            Ok(rows) => {
                for (what, got, want) in rows {
                    t.eq(got, want, &format!("(d, ℓ) = ({d}, {ell}): {what}"));
                }
            }
            Err(e) => t.check(false, || format!("(d, ℓ) = ({d}, {ell}): {e}")),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let opts = VerifyOptions {
            ell: Some(5),
            samples: Some(5),
            inject_fault: None,
        };
        for s in [Suite::Functoriality, Suite::Borel, Suite::MixedGroup] {
            let o = run_suite(s, &opts).unwrap();
            assert!(o.passed, "{o}");
        }
    }

    #[test]
    fn injected_fault_fails() {
        let opts = VerifyOptions {
            ell: Some(5),
            samples: Some(1),
            inject_fault: Some(Suite::Borel),
        };
        assert!(!run_suite(Suite::Borel, &opts).unwrap().passed);
    }
}
