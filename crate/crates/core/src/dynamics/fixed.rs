use serde::Serialize;

use super::PolyMap;
use crate::ext::{ExtElement, ExtField};
use crate::padic::PadicNumber;
use crate::roots::{nth_roots, sqrt};
use crate::{Error, Result};

/// Which factor of `x (x^2n + a x^n - 1)` a fixed point comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
    Origin,
}

/// Field in which fixed points are searched.
#[derive(Debug, Clone, Default)]
pub enum FieldPolicy {
    Base,
    /// `Q_p(zeta_p)` when `p | n`, otherwise `Q_p`.
    #[default]
    Auto,
    Given(ExtField),
}

impl FieldPolicy {
    pub fn resolve(&self, map: &PolyMap) -> Result<ExtField> {
        let ctx = map.ctx();
        match self {
            FieldPolicy::Base => Ok(ExtField::base(ctx)),
            FieldPolicy::Auto if map.n().is_multiple_of(ctx.p()) => ExtField::cyclotomic(ctx),
            FieldPolicy::Auto => Ok(ExtField::base(ctx)),
            FieldPolicy::Given(k) if k.ctx() == ctx => Ok(k.clone()),
            FieldPolicy::Given(_) => Err(Error::FieldMismatch),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FixedPoint {
    pub branch: Branch,
    /// 1-based within the branch; 0 for the origin.
    pub index: usize,
    pub value: ExtElement,
}

impl FixedPoint {
    /// `x+1`, `x-2`, `0`.
    pub fn label(&self) -> String {
        match self.branch {
            Branch::Plus => format!("x+{}", self.index),
            Branch::Minus => format!("x-{}", self.index),
            Branch::Origin => "0".into(),
        }
    }
}

/// Fixed points of `f`: the origin and the roots of `x^n = c+-`.
#[derive(Debug, Clone)]
pub struct FixedPointFamily {
    pub field: ExtField,
    pub c_plus: PadicNumber,
    pub c_minus: PadicNumber,
    pub roots_plus: Vec<ExtElement>,
    pub roots_minus: Vec<ExtElement>,
    pub origin: ExtElement,
    /// Roots of `x^n = c+-` outside `field`, per branch.
    pub missing: (u64, u64),
    pub hints: Vec<String>,
}

impl FixedPointFamily {
    pub fn is_complete(&self) -> bool {
        self.missing == (0, 0)
    }

    pub fn c(&self, branch: Branch) -> Option<&PadicNumber> {
        match branch {
            Branch::Plus => Some(&self.c_plus),
            Branch::Minus => Some(&self.c_minus),
            Branch::Origin => None,
        }
    }

    /// Nonzero fixed points, `c+` branch first.
    pub fn nonzero(&self) -> Vec<FixedPoint> {
        let tag = |branch, roots: &[ExtElement]| {
            roots
                .iter()
                .enumerate()
                .map(|(i, x)| FixedPoint {
                    branch,
                    index: i + 1,
                    value: x.clone(),
                })
                .collect::<Vec<_>>()
        };
        let mut out = tag(Branch::Plus, &self.roots_plus);
        out.extend(tag(Branch::Minus, &self.roots_minus));
        out
    }

    /// Every fixed point, origin last.
    pub fn all(&self) -> Vec<FixedPoint> {
        let mut out = self.nonzero();
        out.push(FixedPoint {
            branch: Branch::Origin,
            index: 0,
            value: self.origin.clone(),
        });
        out
    }
}

/// `c+- = (-a +- sqrt(a^2 + 4)) / 2`, using the principal square root.
pub fn c_pm(map: &PolyMap) -> Result<(PadicNumber, PadicNumber)> {
    let ctx = map.ctx();
    let a = map.a();
    let root = sqrt(&a.mul(a).add(&PadicNumber::from_i64(4, ctx)))?;
    let two = PadicNumber::from_i64(2, ctx);
    let plus = root.sub(a).try_div(&two)?;
    let minus = root.neg().sub(a).try_div(&two)?;
    Ok((plus, minus))
}

pub fn fixed_points(map: &PolyMap, policy: &FieldPolicy) -> Result<FixedPointFamily> {
    let field = policy.resolve(map)?;
    let (c_plus, c_minus) = c_pm(map)?;
    let plus = nth_roots(&ExtElement::from_base(&c_plus, &field), map.n())?;
    let minus = nth_roots(&ExtElement::from_base(&c_minus, &field), map.n())?;
    let mut hints: Vec<String> = plus.hint.into_iter().chain(minus.hint).collect();
    hints.dedup();
    Ok(FixedPointFamily {
        origin: ExtElement::zero(&field),
        field,
        c_plus,
        c_minus,
        roots_plus: plus.roots,
        roots_minus: minus.roots,
        missing: (plus.missing, minus.missing),
        hints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{NormValue, PadicContext};
    use num_rational::Ratio;

    fn map(p: u64, n: u64, a: i64) -> PolyMap {
        let ctx = PadicContext::new(p, 30).unwrap();
        PolyMap::new(n, PadicNumber::from_i64(a, &ctx)).unwrap()
    }

    fn assert_fixed(f: &PolyMap, fam: &FixedPointFamily) {
        let floor = Ratio::from_integer(f.ctx().precision() as i64 - 2);
        for x in fam.all() {
            assert!(f.evaluate(&x.value).sub(&x.value).is_zero_to(floor), "{}", x.label());
        }
    }

    #[test]
    fn c_plus_mod_5() {
        let f = map(5, 1, 5);
        let (cp, cm) = c_pm(&f).unwrap();
        // sqrt(29) = 2 mod 5, so c+ = (2 - 0) / 2 = 1 mod 5
        assert_eq!(cp.residue(1).unwrap(), 1.into());
        assert_eq!(cp.norm().unwrap(), NormValue::ONE);
        assert_eq!(cm.norm().unwrap(), NormValue::ONE);
    }

    #[test]
    fn vieta() {
        for (p, a) in [(3, 3), (5, 5), (7, 14), (13, 169)] {
            let f = map(p, 1, a);
            let (cp, cm) = c_pm(&f).unwrap();
            let ctx = f.ctx();
            let prod = cp.mul(&cm).add(&PadicNumber::one(ctx));
            assert!(prod.is_zero_to_precision() || prod.valuation().unwrap().unwrap() >= 29);
            let sum = cp.add(&cm).add(f.a());
            assert!(sum.is_zero_to_precision() || sum.valuation().unwrap().unwrap() >= 29);
        }
    }

    #[test]
    fn families_in_base_field() {
        let f = map(5, 2, 5);
        let fam = fixed_points(&f, &FieldPolicy::Auto).unwrap();
        assert!(fam.is_complete());
        assert_eq!(fam.nonzero().len(), 4);
        assert_fixed(&f, &fam);
        for x in fam.nonzero() {
            assert_eq!(x.value.valuation().unwrap(), NormValue::ONE);
        }
        let labels: Vec<_> = fam.all().iter().map(FixedPoint::label).collect();
        assert_eq!(labels, ["x+1", "x+2", "x-1", "x-2", "0"]);
    }

    #[test]
    fn p_power_case_needs_cyclotomic_field() {
        let f = map(3, 3, 9);
        let base = fixed_points(&f, &FieldPolicy::Base).unwrap();
        assert_eq!(base.missing, (2, 2));
        let fam = fixed_points(&f, &FieldPolicy::Auto).unwrap();
        assert!(fam.field.is_cyclotomic());
        assert!(fam.is_complete(), "{:?}", fam.hints);
        assert_fixed(&f, &fam);

        // c+ = 2 mod 9 for a = 3 has no cube root in Q_3(zeta_3)
        let f = map(3, 3, 3);
        let fam = fixed_points(&f, &FieldPolicy::Auto).unwrap();
        assert!(!fam.is_complete());
        assert!(!fam.hints.is_empty());
    }

    #[test]
    fn attracting_case_points() {
        let f = map(7, 3, 7);
        let fam = fixed_points(&f, &FieldPolicy::Auto).unwrap();
        assert_eq!(fam.nonzero().len(), 6);
        assert_fixed(&f, &fam);
    }
}
