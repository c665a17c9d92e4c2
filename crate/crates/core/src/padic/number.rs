use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::arith::{mod_inverse, split_valuation};
use super::{NormValue, PadicContext};
use crate::{Error, Result};

/// Exact rational shadows larger than this many bits are dropped and the
/// value continues as an ordinary capped-precision element.
const EXACT_BITS_CAP: u64 = 1024;

/// An element of `Q_p` known modulo a power of `p`.
///
/// Three states are distinguished: the exact zero, a value only known to be
/// `O(p^k)`, and `p^val * unit` with `unit` known modulo `p^rel`. Values
/// built from rationals additionally keep the rational itself so that exact
/// identities such as `1 + (-1) = 0` stay exact.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicNumber {
    ctx: PadicContext,
    repr: Repr,
    exact: Option<Arc<BigRational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Zero,
    Approx(i64),
    Unit { val: i64, unit: BigInt, rel: u32 },
}

fn small_enough(r: &BigRational) -> bool {
    r.numer().bits() + r.denom().bits() <= EXACT_BITS_CAP
}

impl PadicNumber {
    pub fn zero(ctx: &PadicContext) -> Self {
        Self {
            ctx: ctx.clone(),
            repr: Repr::Zero,
            exact: None,
        }
    }

    pub fn one(ctx: &PadicContext) -> Self {
        Self::from_i64(1, ctx)
    }

    pub fn from_i64(n: i64, ctx: &PadicContext) -> Self {
        Self::from_ratio(&BigRational::from_integer(BigInt::from(n)), ctx)
    }

    pub fn from_integer(n: &BigInt, ctx: &PadicContext) -> Self {
        Self::from_ratio(&BigRational::from_integer(n.clone()), ctx)
    }

    /// The exact value `p^k`.
    pub fn p_power(k: i64, ctx: &PadicContext) -> Self {
        let r = if k >= 0 {
            BigRational::from_integer(ctx.pow_p(k).into_owned())
        } else {
            BigRational::new(BigInt::from(1), ctx.pow_p(-k).into_owned())
        };
        Self::from_ratio(&r, ctx)
    }

    /// `numerator / denominator` as an exact element.
    pub fn from_rational(numerator: &BigInt, denominator: &BigInt, ctx: &PadicContext) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_ratio(
            &BigRational::new(numerator.clone(), denominator.clone()),
            ctx,
        ))
    }

    pub fn from_ratio(r: &BigRational, ctx: &PadicContext) -> Self {
        if r.is_zero() {
            return Self::zero(ctx);
        }
        let p = ctx.prime();
        let (vn, n) = split_valuation(r.numer(), p);
        let (vd, d) = split_valuation(r.denom(), p);
        let modulus = ctx.pow_p(ctx.precision() as i64);
        let unit = (n * mod_inverse(&d, &modulus).expect("p-free denominator")).mod_floor(&modulus);
        Self {
            ctx: ctx.clone(),
            repr: Repr::Unit {
                val: vn - vd,
                unit,
                rel: ctx.precision(),
            },
            exact: Some(Arc::new(r.clone())),
        }
    }

    /// The inexact value `p^val * digits` known modulo `p^(val + rel)`.
    /// `digits` may be divisible by `p`; the result is normalised.
    pub fn from_digits(val: i64, digits: BigInt, rel: u32, ctx: &PadicContext) -> Self {
        let rel = rel.min(ctx.precision());
        if rel == 0 {
            return Self::approx_zero(val, ctx);
        }
        let modulus = ctx.pow_p(rel as i64);
        let digits = digits.mod_floor(&modulus);
        if digits.is_zero() {
            return Self::approx_zero(val + rel as i64, ctx);
        }
        let (k, unit) = split_valuation(&digits, ctx.prime());
        Self {
            ctx: ctx.clone(),
            repr: Repr::Unit {
                val: val + k,
                unit,
                rel: rel - k as u32,
            },
            exact: None,
        }
    }

    /// A value known only to be divisible by `p^abs`.
    pub fn approx_zero(abs: i64, ctx: &PadicContext) -> Self {
        Self {
            ctx: ctx.clone(),
            repr: Repr::Approx(abs),
            exact: None,
        }
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some() || self.repr == Repr::Zero
    }

    pub fn is_exact_zero(&self) -> bool {
        self.repr == Repr::Zero
    }

    /// Exact zero, or indistinguishable from zero at the known precision.
    pub fn is_zero_to_precision(&self) -> bool {
        matches!(self.repr, Repr::Zero | Repr::Approx(_))
    }

    /// `Ok(None)` is the valuation `+inf` of the exact zero.
    pub fn valuation(&self) -> Result<Option<i64>> {
        match &self.repr {
            Repr::Zero => Ok(None),
            Repr::Approx(k) => Err(Error::PrecisionUnderflow { known: *k }),
            Repr::Unit { val, .. } => Ok(Some(*val)),
        }
    }

    /// Known lower bound on the valuation; `None` is `+inf`.
    pub fn valuation_lower_bound(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Approx(k) => Some(*k),
            Repr::Unit { val, .. } => Some(*val),
        }
    }

    pub fn norm(&self) -> Result<NormValue> {
        Ok(match self.valuation()? {
            None => NormValue::Zero,
            Some(v) => NormValue::from_valuation(v),
        })
    }

    /// Absolute precision; `None` for exact values.
    pub fn abs_precision(&self) -> Option<i64> {
        if self.is_exact() {
            return None;
        }
        match &self.repr {
            Repr::Zero => None,
            Repr::Approx(k) => Some(*k),
            Repr::Unit { val, rel, .. } => Some(val + *rel as i64),
        }
    }

    pub fn rel_precision(&self) -> u32 {
        match &self.repr {
            Repr::Unit { rel, .. } => *rel,
            Repr::Zero => self.ctx.precision(),
            Repr::Approx(_) => 0,
        }
    }

    /// Unit digits `u` with the value equal to `p^val * u`.
    pub fn unit(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Unit { unit, .. } => Some(unit),
            _ => None,
        }
    }

    pub fn exact_value(&self) -> Option<BigRational> {
        match (&self.repr, &self.exact) {
            (Repr::Zero, _) => Some(BigRational::zero()),
            (_, Some(r)) => Some(r.as_ref().clone()),
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.valuation_lower_bound().is_none_or(|v| v >= 0)
    }

    /// The integer in `[0, p^k)` congruent to `self` modulo `p^k`.
    pub fn residue(&self, k: i64) -> Result<BigInt> {
        if !self.is_integral() {
            return Err(Error::InvalidArgument(format!("{self} is not integral")));
        }
        if let Some(abs) = self.abs_precision() {
            if k > abs {
                return Err(Error::PrecisionExceeded {
                    requested: k,
                    available: abs,
                });
            }
        }
        Ok(self.digits(0, k))
    }

    /// The integer `s` in `[0, p^(abs-base))` with `self = p^base * s` modulo
    /// `p^abs`. Requires `base <= valuation` and `abs` within the known
    /// precision.
    fn digits(&self, base: i64, abs: i64) -> BigInt {
        let width = abs - base;
        if width <= 0 {
            return BigInt::zero();
        }
        match &self.repr {
            Repr::Zero | Repr::Approx(_) => BigInt::zero(),
            Repr::Unit { val, unit, rel } => {
                let shift = val - base;
                debug_assert!(shift >= 0);
                if shift >= width {
                    return BigInt::zero();
                }
                let modulus = self.ctx.pow_p(width);
                if abs > val + *rel as i64 {
                    let r = self.exact.as_ref().expect("digits beyond the known precision");
                    let p = self.ctx.prime();
                    let (_, n) = split_valuation(r.numer(), p);
                    let (_, d) = split_valuation(r.denom(), p);
                    let m = self.ctx.pow_p(width - shift);
                    let u = (n * mod_inverse(&d, &m).expect("p-free denominator")).mod_floor(&m);
                    (u * &*self.ctx.pow_p(shift)).mod_floor(&modulus)
                } else {
                    (unit * &*self.ctx.pow_p(shift)).mod_floor(&modulus)
                }
            }
        }
    }

    fn assert_same(&self, other: &Self) {
        assert!(self.ctx.same(&other.ctx), "p-adic operands from different contexts");
    }

    fn both_exact(&self, other: &Self) -> Option<(BigRational, BigRational)> {
        Some((self.exact_value()?, other.exact_value()?))
    }

    fn from_exact_result(r: BigRational, ctx: &PadicContext) -> Option<Self> {
        small_enough(&r).then(|| Self::from_ratio(&r, ctx))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same(other);
        if self.is_exact_zero() {
            return other.clone();
        }
        if other.is_exact_zero() {
            return self.clone();
        }
        if let Some((a, b)) = self.both_exact(other) {
            if let Some(r) = Self::from_exact_result(a + b, &self.ctx) {
                return r;
            }
        }
        let lb = self
            .valuation_lower_bound()
            .unwrap()
            .min(other.valuation_lower_bound().unwrap());
        let mut abs = lb + self.ctx.precision() as i64;
        for a in [self.abs_precision(), other.abs_precision()].into_iter().flatten() {
            abs = abs.min(a);
        }
        if abs <= lb {
            return Self::approx_zero(abs, &self.ctx);
        }
        let sum = self.digits(lb, abs) + other.digits(lb, abs);
        Self::from_digits(lb, sum, (abs - lb) as u32, &self.ctx)
    }

    pub fn neg(&self) -> Self {
        let repr = match &self.repr {
            Repr::Unit { val, unit, rel } => Repr::Unit {
                val: *val,
                unit: &*self.ctx.pow_p(*rel as i64) - unit,
                rel: *rel,
            },
            other => other.clone(),
        };
        Self {
            ctx: self.ctx.clone(),
            repr,
            exact: self.exact.as_ref().map(|r| Arc::new(-r.as_ref())),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same(other);
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero(&self.ctx);
        }
        if let Some((a, b)) = self.both_exact(other) {
            if let Some(r) = Self::from_exact_result(a * b, &self.ctx) {
                return r;
            }
        }
        match (&self.repr, &other.repr) {
            (Repr::Approx(k), _) => Self::approx_zero(k + other.valuation_lower_bound().unwrap(), &self.ctx),
            (_, Repr::Approx(k)) => Self::approx_zero(k + self.valuation_lower_bound().unwrap(), &self.ctx),
            (
                Repr::Unit {
                    val: va,
                    unit: ua,
                    rel: ra,
                },
                Repr::Unit {
                    val: vb,
                    unit: ub,
                    rel: rb,
                },
            ) => {
                let mut rel = self.ctx.precision();
                if self.exact.is_none() {
                    rel = rel.min(*ra);
                }
                if other.exact.is_none() {
                    rel = rel.min(*rb);
                }
                let unit = (ua * ub).mod_floor(&self.ctx.pow_p(rel as i64));
                Self {
                    ctx: self.ctx.clone(),
                    repr: Repr::Unit {
                        val: va + vb,
                        unit,
                        rel,
                    },
                    exact: None,
                }
            }
            _ => unreachable!("exact zeros handled above"),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::Zero => Err(Error::DivisionByZero),
            Repr::Approx(k) => Err(Error::PrecisionUnderflow { known: *k }),
            Repr::Unit { val, unit, rel } => {
                if let Some(r) = &self.exact {
                    return Ok(Self::from_ratio(&r.recip(), &self.ctx));
                }
                let modulus = self.ctx.pow_p(*rel as i64);
                let unit = mod_inverse(unit, &modulus).expect("units are invertible");
                Ok(Self {
                    ctx: self.ctx.clone(),
                    repr: Repr::Unit {
                        val: -val,
                        unit,
                        rel: *rel,
                    },
                    exact: None,
                })
            }
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return Ok(self.inv()?.pow_u(e.unsigned_abs()));
        }
        Ok(self.pow_u(e as u64))
    }

    pub fn pow_u(&self, mut e: u64) -> Self {
        let mut result = Self::one(&self.ctx);
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

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul(&Self::from_i64(k, &self.ctx))
    }

    /// `|self - other| <= p^-k`.
    pub fn equal_to_precision(&self, other: &Self, k: i64) -> Result<bool> {
        for a in [self.abs_precision(), other.abs_precision()].into_iter().flatten() {
            if k > a {
                return Err(Error::PrecisionExceeded {
                    requested: k,
                    available: a,
                });
            }
        }
        let diff = self.sub(other);
        Ok(match diff.valuation_lower_bound() {
            None => true,
            Some(v) => v >= k,
        })
    }

    /// The stored digits reinterpreted as an exact rational.
    pub fn to_exact_representative(&self) -> Self {
        if self.is_exact() {
            return self.clone();
        }
        match &self.repr {
            Repr::Unit { val, unit, .. } => {
                let r = if *val >= 0 {
                    BigRational::from_integer(unit * &*self.ctx.pow_p(*val))
                } else {
                    BigRational::new(unit.clone(), self.ctx.pow_p(-val).into_owned())
                };
                Self::from_ratio(&r, &self.ctx)
            }
            _ => Self::zero(&self.ctx),
        }
    }

    /// The same digits, no longer tied to an exact rational. The exact zero
    /// stays exact.
    pub fn without_shadow(&self) -> Self {
        Self {
            exact: None,
            ..self.clone()
        }
    }

    /// Forgets every digit at or beyond `p^k`.
    pub fn with_abs_precision(&self, k: i64) -> Self {
        if let Some(a) = self.abs_precision() {
            if a <= k {
                return self.clone();
            }
        }
        match &self.repr {
            Repr::Zero => Self::approx_zero(k, &self.ctx),
            Repr::Approx(j) => Self::approx_zero((*j).min(k), &self.ctx),
            Repr::Unit { val, unit, rel } => {
                if *val >= k {
                    Self::approx_zero(k, &self.ctx)
                } else {
                    let rel = (*rel as i64).min(k - val) as u32;
                    Self::from_digits(*val, unit.clone(), rel, &self.ctx)
                }
            }
        }
    }

    /// Base-p digits of the unit part, least significant first, paired with
    /// the valuation of the first digit.
    pub fn unit_digits(&self) -> Option<(i64, Vec<u64>)> {
        let Repr::Unit { val, unit, rel } = &self.repr else {
            return None;
        };
        let p = self.ctx.prime();
        let mut rest = unit.clone();
        let mut out = Vec::with_capacity(*rel as usize);
        for _ in 0..*rel {
            let (q, r) = rest.div_rem(p);
            out.push(r.try_into().expect("digit fits in u64"));
            rest = q;
        }
        Some((*val, out))
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.ctx.p();
        if let Some(r) = self.exact_value() {
            return if r.is_integer() {
                write!(f, "{}", r.numer())
            } else {
                write!(f, "{}/{}", r.numer(), r.denom())
            };
        }
        match &self.repr {
            Repr::Approx(k) => write!(f, "O({p}^{k})"),
            Repr::Zero => write!(f, "0"),
            Repr::Unit { val, rel, .. } => {
                let (_, digits) = self.unit_digits().expect("unit");
                let mut first = true;
                for (i, d) in digits.iter().enumerate() {
                    if *d == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match val + i as i64 {
                        0 => write!(f, "{d}")?,
                        1 => write!(f, "{d}*{p}")?,
                        e => write!(f, "{d}*{p}^{e}")?,
                    }
                }
                write!(f, " + O({p}^{})", val + *rel as i64)
            }
        }
    }
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in Q_{}", self.ctx.p())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&PadicNumber> for &PadicNumber {
            type Output = PadicNumber;
            fn $method(self, rhs: &PadicNumber) -> PadicNumber {
                PadicNumber::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        PadicNumber::neg(self)
    }
}
