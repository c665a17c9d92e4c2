use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use super::linalg::{determinant, solve};
use super::ExtField;
use crate::padic::{NormValue, PadicNumber};
use crate::{Error, Result};

/// An element of `K = Q_p[t]/(g)` in the basis `1, t, ..., t^(d-1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtElement {
    field: ExtField,
    coeffs: Vec<PadicNumber>,
}

impl ExtElement {
    pub fn from_coeffs(mut coeffs: Vec<PadicNumber>, field: &ExtField) -> Result<Self> {
        let d = field.degree();
        if coeffs.len() > d {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates for a field of degree {d}",
                coeffs.len()
            )));
        }
        coeffs.resize(d, PadicNumber::zero(field.ctx()));
        Ok(Self {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn from_base(x: &PadicNumber, field: &ExtField) -> Self {
        let mut coeffs = vec![PadicNumber::zero(field.ctx()); field.degree()];
        coeffs[0] = x.clone();
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_i64(n: i64, field: &ExtField) -> Self {
        Self::from_base(&PadicNumber::from_i64(n, field.ctx()), field)
    }

    pub fn zero(field: &ExtField) -> Self {
        Self::from_i64(0, field)
    }

    pub fn one(field: &ExtField) -> Self {
        Self::from_i64(1, field)
    }

    /// The class of `t`.
    pub fn generator(field: &ExtField) -> Result<Self> {
        if field.degree() < 2 {
            return Err(Error::InvalidArgument("Q_p has no generator t".into()));
        }
        let mut coeffs = vec![PadicNumber::zero(field.ctx()); field.degree()];
        coeffs[1] = PadicNumber::one(field.ctx());
        Ok(Self {
            field: field.clone(),
            coeffs,
        })
    }

    /// Representative of residue number `index`: for unramified fields the
    /// base-`p` digits of `index` are the coordinates, otherwise `index` is
    /// the constant coordinate. Indices run over `0..p^f`.
    pub fn residue_representative(index: u64, field: &ExtField) -> Self {
        let p = field.ctx().p();
        let mut coeffs = vec![PadicNumber::zero(field.ctx()); field.degree()];
        let mut rest = index;
        let slots = field.residue_degree() as usize;
        for c in coeffs.iter_mut().take(slots) {
            *c = PadicNumber::from_i64((rest % p) as i64, field.ctx());
            rest /= p;
        }
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn coeffs(&self) -> &[PadicNumber] {
        &self.coeffs
    }

    /// The base-field value when every non-constant coordinate is exactly 0.
    pub fn base_part(&self) -> Option<&PadicNumber> {
        self.coeffs[1..]
            .iter()
            .all(PadicNumber::is_exact_zero)
            .then(|| &self.coeffs[0])
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.iter().all(PadicNumber::is_exact_zero)
    }

    fn check_field(&self, other: &Self) {
        assert!(self.field == other.field, "elements of different fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_field(other);
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(PadicNumber::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_field(other);
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn mul_base(&self, k: &PadicNumber) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.mul(k)).collect(),
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul_base(&PadicNumber::from_i64(k, self.field.ctx()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_field(other);
        let d = self.field.degree();
        if d == 1 {
            return Self {
                field: self.field.clone(),
                coeffs: vec![self.coeffs[0].mul(&other.coeffs[0])],
            };
        }
        let ctx = self.field.ctx();
        let mut prod = vec![PadicNumber::zero(ctx); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].add(&a.mul(b));
            }
        }
        let g = self.field.modulus();
        for top in (d..2 * d - 1).rev() {
            let lead = std::mem::replace(&mut prod[top], PadicNumber::zero(ctx));
            if lead.is_exact_zero() {
                continue;
            }
            for (j, gj) in g.iter().take(d).enumerate() {
                if gj.is_exact_zero() {
                    continue;
                }
                prod[top - d + j] = prod[top - d + j].sub(&lead.mul(gj));
            }
        }
        prod.truncate(d);
        Self {
            field: self.field.clone(),
            coeffs: prod,
        }
    }

    /// `self * t`.
    fn mul_generator(&self) -> Self {
        let d = self.field.degree();
        let g = self.field.modulus();
        let top = &self.coeffs[d - 1];
        let mut coeffs = Vec::with_capacity(d);
        coeffs.push(top.mul(&g[0]).neg());
        for i in 1..d {
            coeffs.push(self.coeffs[i - 1].sub(&top.mul(&g[i])));
        }
        Self {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Matrix of multiplication by `self`, column `j` holding `self * t^j`.
    /// Returned as rows.
    pub fn multiplication_matrix(&self) -> Vec<Vec<PadicNumber>> {
        let d = self.field.degree();
        let mut columns = Vec::with_capacity(d);
        let mut col = self.clone();
        for j in 0..d {
            if j > 0 {
                col = col.mul_generator();
            }
            columns.push(col.coeffs.clone());
        }
        (0..d).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect()
    }

    /// `N_{K/Q_p}(self) = det M_self`.
    pub fn norm_det(&self) -> Result<PadicNumber> {
        if self.field.degree() == 1 {
            return Ok(self.coeffs[0].clone());
        }
        determinant(self.multiplication_matrix())
    }

    /// The extended valuation, read off the coordinates. For a certified
    /// field the power basis is integral with basis valuations `i/e`, so
    /// `min(v(c_i) + i/e)` is exact; it agrees with [`Self::det_valuation`]
    /// at a fraction of the cost.
    pub fn valuation(&self) -> Result<NormValue> {
        let mut exact: Option<Ratio<i64>> = None;
        let mut fuzzy: Option<Ratio<i64>> = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            let b = self.field.basis_valuation(i);
            match c.valuation() {
                Ok(None) => {}
                Ok(Some(v)) => exact = Some(exact.map_or(b + v, |m| m.min(b + v))),
                Err(Error::PrecisionUnderflow { known }) => fuzzy = Some(fuzzy.map_or(b + known, |m| m.min(b + known))),
                Err(e) => return Err(e),
            }
        }
        match (exact, fuzzy) {
            (None, None) => Ok(NormValue::Zero),
            (Some(m), None) => Ok(NormValue::Finite(m)),
            (Some(m), Some(f)) if f >= m => Ok(NormValue::Finite(m)),
            (_, Some(f)) => Err(Error::PrecisionUnderflow {
                known: f.floor().to_integer(),
            }),
        }
    }

    /// The extended valuation `v_p(det M_x) / d`.
    pub fn det_valuation(&self) -> Result<NormValue> {
        if self.is_exact_zero() {
            return Ok(NormValue::Zero);
        }
        let det = self.norm_det()?;
        match det.valuation()? {
            None => Err(Error::PrecisionUnderflow {
                known: self.coordinate_lower_bound().map_or(i64::MAX, |v| v.floor().to_integer()),
            }),
            Some(v) => Ok(NormValue::Finite(Ratio::new(v, self.field.degree() as i64))),
        }
    }

    /// Lower bound on the valuation read off the coordinates; `None` is
    /// `+inf`.
    pub fn coordinate_lower_bound(&self) -> Option<Ratio<i64>> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                c.valuation_lower_bound()
                    .map(|v| Ratio::from_integer(v) + self.field.basis_valuation(i))
            })
            .min()
    }

    /// `|self| <= p^-k` as far as the known digits can tell.
    pub fn is_zero_to(&self, k: Ratio<i64>) -> bool {
        if self.coordinate_lower_bound().is_none_or(|v| v >= k) {
            return true;
        }
        match self.valuation() {
            Ok(NormValue::Zero) => true,
            Ok(NormValue::Finite(v)) => v >= k,
            Err(_) => false,
        }
    }

    /// Indistinguishable from zero at the known precision.
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.iter().all(PadicNumber::is_zero_to_precision)
    }

    /// `v(self) > 0`, treating values lost in the precision as small.
    pub fn in_maximal_ideal(&self) -> bool {
        if self.coordinate_lower_bound().is_none_or(|v| v > Ratio::zero()) {
            return true;
        }
        match self.valuation() {
            Ok(n) => n.is_small(),
            Err(Error::PrecisionUnderflow { .. }) => true,
            Err(_) => false,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.field.degree();
        if d == 1 {
            return Ok(Self {
                field: self.field.clone(),
                coeffs: vec![self.coeffs[0].inv()?],
            });
        }
        let ctx = self.field.ctx();
        let mut rhs = vec![PadicNumber::zero(ctx); d];
        rhs[0] = PadicNumber::one(ctx);
        let coeffs = solve(self.multiplication_matrix(), rhs)?;
        Ok(Self {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow_u(&self, mut e: u64) -> Self {
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return Ok(self.inv()?.pow_u(e.unsigned_abs()));
        }
        Ok(self.pow_u(e as u64))
    }

    /// Coordinates reinterpreted as exact rationals.
    pub fn to_exact_representative(&self) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(PadicNumber::to_exact_representative).collect(),
        }
    }

    /// The same digits without exact rational shadows, which keeps long
    /// computations at fixed cost.
    pub fn without_shadow(&self) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(PadicNumber::without_shadow).collect(),
        }
    }

    /// Marks the element as known only up to an error of valuation `k`.
    pub fn with_error_bound(&self, k: Ratio<i64>) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let bound = (k - self.field.basis_valuation(i)).ceil().to_integer();
                c.with_abs_precision(bound)
            })
            .collect();
        Self {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Residue number of an integral element, matching
    /// [`ExtElement::residue_representative`].
    pub fn residue_index(&self) -> Result<u64> {
        let p = self.field.ctx().p();
        let slots = self.field.residue_degree() as usize;
        let mut index = 0u64;
        for c in self.coeffs.iter().take(slots).rev() {
            let r: u64 = c.residue(1)?.mod_floor(&p.into()).try_into().expect("digit");
            index = index * p + r;
        }
        Ok(index)
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field.describe())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExtElement> for &ExtElement {
            type Output = ExtElement;
            fn $method(self, rhs: &ExtElement) -> ExtElement {
                ExtElement::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &ExtElement {
    type Output = ExtElement;
    fn neg(self) -> ExtElement {
        ExtElement::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PadicContext;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn ctx3() -> PadicContext {
        PadicContext::new(3, 20).unwrap()
    }

    fn zeta3_field() -> ExtField {
        ExtField::from_integer_modulus(&[3, 3, 1], &ctx3()).unwrap()
    }

    #[test]
    fn one_plus_t_cubed_is_one() {
        let k = zeta3_field();
        let z = &ExtElement::one(&k) + &ExtElement::generator(&k).unwrap();
        let cube = z.pow_u(3);
        assert_eq!(cube, ExtElement::one(&k));
        assert!(cube.coeffs().iter().all(PadicNumber::is_exact));
    }

    #[test]
    fn valuation_of_uniformiser() {
        let k = zeta3_field();
        let t = ExtElement::generator(&k).unwrap();
        // N(t) = 3 by the 2x2 determinant [[0, -3], [1, -3]]
        assert_eq!(t.norm_det().unwrap().exact_value().unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(t.valuation().unwrap(), NormValue::Finite(Ratio::new(1, 2)));
        assert_eq!(t.det_valuation().unwrap(), t.valuation().unwrap());
        let nine = ExtElement::from_i64(9, &k);
        assert_eq!(nine.valuation().unwrap(), NormValue::from_valuation(2));
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let k = zeta3_field();
        let c = ctx3();
        let x = PadicNumber::from_i64(7, &c);
        let y = PadicNumber::from_rational(&2.into(), &5.into(), &c).unwrap();
        let lhs = &ExtElement::from_base(&x, &k) * &ExtElement::from_base(&y, &k);
        assert_eq!(lhs, ExtElement::from_base(&x.mul(&y), &k));
    }

    #[test]
    fn inverse_of_zero_fails() {
        let k = zeta3_field();
        assert_eq!(ExtElement::zero(&k).inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn residue_index_round_trip() {
        let k = ExtField::unramified(&ctx3(), 2).unwrap();
        for i in 0..9 {
            assert_eq!(ExtElement::residue_representative(i, &k).residue_index().unwrap(), i);
        }
    }

    fn field_strategy() -> impl Strategy<Value = ExtField> {
        prop_oneof![
            Just(zeta3_field()),
            Just(ExtField::unramified(&ctx3(), 2).unwrap()),
            Just(ExtField::from_integer_modulus(&[6, 0, 3, 1], &ctx3()).unwrap()),
        ]
    }

    fn element(field: ExtField) -> impl Strategy<Value = ExtElement> {
        let d = field.degree();
        prop::collection::vec((-500i64..500, 1i64..40), d).prop_map(move |cs| {
            let c = field.ctx().clone();
            let coeffs = cs
                .into_iter()
                .map(|(n, den)| PadicNumber::from_rational(&n.into(), &den.into(), &c).unwrap())
                .collect();
            ExtElement::from_coeffs(coeffs, &field).unwrap()
        })
    }

    fn pair() -> impl Strategy<Value = (ExtElement, ExtElement)> {
        field_strategy().prop_flat_map(|k| (element(k.clone()), element(k)))
    }

    proptest! {
        #[test]
        fn valuation_is_multiplicative_and_ultrametric((x, y) in pair()) {
            prop_assume!(!x.is_exact_zero() && !y.is_exact_zero());
            let vx = x.valuation().unwrap();
            let vy = y.valuation().unwrap();
            prop_assert_eq!(x.mul(&y).valuation().unwrap(), vx.mul(vy));
            let s = x.add(&y);
            if !s.is_exact_zero() {
                prop_assert!(s.valuation().unwrap() <= vx.max(vy));
            }
            let e = x.field().ramification_index() as i64;
            let v = vx.valuation().unwrap();
            prop_assert_eq!(e % v.denom(), 0);
        }

        #[test]
        fn determinant_agrees_with_coordinate_formula((x, _y) in pair()) {
            prop_assume!(!x.is_exact_zero());
            let expected = x.coordinate_lower_bound().unwrap();
            prop_assert_eq!(x.det_valuation().unwrap(), NormValue::Finite(expected));
            prop_assert_eq!(x.valuation().unwrap(), NormValue::Finite(expected));
        }

        #[test]
        fn inverse_is_inverse((x, _y) in pair()) {
            prop_assume!(!x.is_exact_zero());
            let one = x.mul(&x.inv().unwrap());
            prop_assert!(one.sub(&ExtElement::one(x.field())).is_zero_to(Ratio::from_integer(10)));
        }
    }
}
