//! Class functions on finite groups given by multiplication tables:
//! conjugacy classes, induction, the inner product, and pullback along
//! quotient maps. Values are exact Gaussian rationals.

mod table;

pub use table::{FiniteGroupTable, QuotientGroup, Subgroup};

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{contract, Result};

pub type Rational = Ratio<i128>;
/// Exact value of a class function.
pub type Value = Complex<Rational>;

pub fn rational(n: i128, d: i128) -> Value {
    Complex::new(Ratio::new(n, d), Rational::zero())
}

/// Conjugacy classes and the class index of every element.
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    pub classes: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of_element(&self, g: u32) -> &[u32] {
        &self.classes[self.class_of[g as usize] as usize]
    }
}

pub fn conjugacy_classes(g: &FiniteGroupTable) -> ConjugacyClasses {
    let mut class_of = vec![u32::MAX; g.order()];
    let mut classes = Vec::new();
    for x in g.elements() {
        if class_of[x as usize] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        let mut orbit = Vec::new();
        for t in g.elements() {
            let y = g.conj_by(t, x);
            if class_of[y as usize] == u32::MAX {
                class_of[y as usize] = id;
                orbit.push(y);
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    ConjugacyClasses { classes, class_of }
}

/// A conjugation-invariant function on the elements of a group.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFunction {
    group: u64,
    values: Vec<Value>,
}

impl ClassFunction {
    /// Checks that `values` is constant on conjugacy classes of `g`.
    pub fn new(g: &FiniteGroupTable, values: Vec<Value>) -> Result<Self> {
        if values.len() != g.order() {
            return contract(format!(
                "{} values for a group of order {}",
                values.len(),
                g.order()
            ));
        }
        for x in g.elements() {
            for t in g.elements() {
                if values[g.conj_by(t, x) as usize] != values[x as usize] {
                    return contract(format!("not constant on the class of element {x}"));
                }
            }
        }
        Ok(Self {
            group: g.fingerprint(),
            values,
        })
    }

    /// One value per class, in the order of `classes`.
    pub fn from_class_values(
        g: &FiniteGroupTable,
        classes: &ConjugacyClasses,
        per_class: &[Value],
    ) -> Result<Self> {
        if per_class.len() != classes.len() {
            return contract("one value per conjugacy class expected");
        }
        let values = classes
            .class_of
            .iter()
            .map(|&c| per_class[c as usize])
            .collect();
        Ok(Self {
            group: g.fingerprint(),
            values,
        })
    }

    pub fn constant(g: &FiniteGroupTable, c: Value) -> Self {
        Self {
            group: g.fingerprint(),
            values: vec![c; g.order()],
        }
    }

    /// `δ_S` for a conjugation-stable set `S`.
    pub fn indicator(g: &FiniteGroupTable, set: &[u32]) -> Result<Self> {
        let mut values = vec![Value::zero(); g.order()];
        for &s in set {
            values[s as usize] = Value::one();
        }
        Self::new(g, values)
    }

    /// Random small Gaussian-rational values, one per class.
    pub fn random<R: Rng>(g: &FiniteGroupTable, classes: &ConjugacyClasses, rng: &mut R) -> Self {
        let per_class: Vec<Value> = (0..classes.len())
            .map(|_| {
                let re = Ratio::new(rng.gen_range(-20..=20), rng.gen_range(1..=6));
                let im = Ratio::new(rng.gen_range(-20..=20), rng.gen_range(1..=6));
                Complex::new(re, im)
            })
            .collect();
        Self::from_class_values(g, classes, &per_class).expect("sizes match")
    }

    pub fn value(&self, x: u32) -> Value {
        self.values[x as usize]
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn to_complex(&self) -> Vec<Complex<f64>> {
        self.values.iter().map(to_complex).collect()
    }

    pub fn belongs_to(&self, g: &FiniteGroupTable) -> bool {
        self.group == g.fingerprint()
    }

    fn check(&self, g: &FiniteGroupTable) -> Result<()> {
        if !self.belongs_to(g) {
            return contract("class function belongs to a different group");
        }
        Ok(())
    }

    /// `α φ + β ψ`
    pub fn combine(&self, alpha: Value, other: &Self, beta: Value) -> Result<Self> {
        if self.group != other.group {
            return contract("class functions on different groups");
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| alpha * x + beta * y)
            .collect();
        Ok(Self {
            group: self.group,
            values,
        })
    }
}

pub fn to_complex(v: &Value) -> Complex<f64> {
    let f = |r: &Rational| *r.numer() as f64 / *r.denom() as f64;
    Complex::new(f(&v.re), f(&v.im))
}

/// `⟨φ, ψ⟩ = (1/|G|) Σ φ(g) conj(ψ(g))`, exactly.
pub fn inner_product(
    g: &FiniteGroupTable,
    phi: &ClassFunction,
    psi: &ClassFunction,
) -> Result<Value> {
    phi.check(g)?;
    psi.check(g)?;
    let sum = phi
        .values
        .iter()
        .zip(&psi.values)
        .fold(Value::zero(), |acc, (&x, &y)| acc + x * y.conj());
    Ok(sum / rational(g.order() as i128, 1))
}

/// `Ind_H^G φ (g) = (1/|H|) Σ_{t : t^{-1} g t ∈ H} φ(t^{-1} g t)`, evaluated
/// once per conjugacy class of `G`.
pub fn induce(g: &FiniteGroupTable, h: &Subgroup, phi: &ClassFunction) -> Result<ClassFunction> {
    phi.check(&h.table)?;
    let classes = conjugacy_classes(g);
    let per_class: Vec<Value> = classes
        .classes
        .iter()
        .map(|class| {
            let x = class[0];
            let sum = g
                .elements()
                .fold(Value::zero(), |acc, t| match h.locate(g.conj_by(t, x)) {
                    Some(i) => acc + phi.value(i),
                    None => acc,
                });
            sum / rational(h.table.order() as i128, 1)
        })
        .collect();
    ClassFunction::from_class_values(g, &classes, &per_class)
}

/// `Res_H ψ`, the values of `ψ` on the elements of `H`.
pub fn restrict(g: &FiniteGroupTable, h: &Subgroup, psi: &ClassFunction) -> Result<ClassFunction> {
    psi.check(g)?;
    ClassFunction::new(&h.table, h.embed.iter().map(|&x| psi.value(x)).collect())
}

/// Pullback of a class function on `G/N` along the projection.
pub fn lift_from_quotient(
    g: &FiniteGroupTable,
    q: &QuotientGroup,
    phi: &ClassFunction,
) -> Result<ClassFunction> {
    phi.check(&q.table)?;
    if q.coset_of.len() != g.order() {
        return contract("quotient does not come from this group");
    }
    let values = q.coset_of.iter().map(|&c| phi.value(c)).collect();
    ClassFunction::new(g, values)
}

/// Average of `φ(σ i)` over `i` in an inertia subgroup `I`, the value
/// assigned to a Frobenius coset at a ramified prime.
pub fn inertia_average(
    g: &FiniteGroupTable,
    phi: &ClassFunction,
    frob: u32,
    inertia: &Subgroup,
) -> Result<Value> {
    phi.check(g)?;
    let sum = inertia
        .embed
        .iter()
        .fold(Value::zero(), |acc, &i| acc + phi.value(g.mul(frob, i)));
    Ok(sum / rational(inertia.table.order() as i128, 1))
}

/// Outcome of checking `Ind_H^G δ_{C_H(s)} = λ_s δ_{C_G(s)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaCheck {
    /// Value of the induced function on `C_G(s)`.
    pub lambda: Value,
    /// `[Cent_G(s) : Cent_H(s)]`
    pub index: u64,
    /// Induced function vanishes off `C_G(s)` and is constant on it.
    pub proportional: bool,
}

impl LambdaCheck {
    pub fn holds(&self) -> bool {
        self.proportional && self.lambda == rational(self.index as i128, 1)
    }
}

pub fn lambda_check(g: &FiniteGroupTable, h: &Subgroup, s_in_h: u32) -> Result<LambdaCheck> {
    let h_classes = conjugacy_classes(&h.table);
    let g_classes = conjugacy_classes(g);
    let ch = h_classes.class_of_element(s_in_h);
    let s = h.embed[s_in_h as usize];
    let cg = g_classes.class_of_element(s);
    let ind = induce(g, h, &ClassFunction::indicator(&h.table, ch)?)?;
    let lambda = ind.value(s);
    let proportional = g.elements().all(|x| {
        let inside = g_classes.class_of[x as usize] == g_classes.class_of[s as usize];
        ind.value(x) == if inside { lambda } else { Value::zero() }
    });
    let cent_g = (g.order() / cg.len()) as u64;
    let cent_h = (h.table.order() / ch.len()) as u64;
    Ok(LambdaCheck {
        lambda,
        index: cent_g / cent_h,
        proportional: proportional && cent_g.is_multiple_of(cent_h),
    })
}
