use num_bigint::BigInt;
use num_integer::binomial;

use crate::ext::{ExtElement, ExtField};
use crate::padic::{PadicContext, PadicNumber};
use crate::poly::Poly;
use crate::{Error, Result};

/// `f(x) = x^(2n+1) + a x^(n+1)` with `0 < |a|_p < 1`.
#[derive(Debug, Clone)]
pub struct PolyMap {
    ctx: PadicContext,
    n: u64,
    a: PadicNumber,
}

impl PolyMap {
    pub fn new(n: u64, a: PadicNumber) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMap("n must be at least 1".into()));
        }
        if a.is_exact_zero() {
            return Err(Error::InvalidMap("a must be nonzero".into()));
        }
        match a.valuation() {
            Ok(Some(v)) if v >= 1 => {}
            Ok(_) => return Err(Error::InvalidMap(format!("|a|_p = {} is not below 1", a.norm()?))),
            Err(_) => return Err(Error::InvalidMap(format!("a = {a} is not known to be nonzero"))),
        }
        Ok(Self {
            ctx: a.ctx().clone(),
            n,
            a,
        })
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> &PadicNumber {
        &self.a
    }

    /// `2n + 1`.
    pub fn degree(&self) -> u64 {
        2 * self.n + 1
    }

    /// `x^(n+1) (x^n + a)`.
    pub fn evaluate(&self, x: &ExtElement) -> ExtElement {
        let a = ExtElement::from_base(&self.a, x.field());
        let xn = x.pow_u(self.n);
        xn.mul(x).mul(&xn.add(&a))
    }

    /// `x^n ((2n+1) x^n + (n+1) a)`.
    pub fn derivative(&self, x: &ExtElement) -> ExtElement {
        let a = ExtElement::from_base(&self.a.mul_i64(self.n as i64 + 1), x.field());
        let xn = x.pow_u(self.n);
        xn.mul(&xn.mul_i64(self.degree() as i64).add(&a))
    }

    /// `f^(m)(x) / m!`, the m-th Taylor coefficient at `x`.
    pub fn taylor_coefficient(&self, x: &ExtElement, m: u64) -> ExtElement {
        let field = x.field();
        let ctx = &self.ctx;
        let term = |top: u64| {
            if m > top {
                return ExtElement::zero(field);
            }
            let c = binomial(BigInt::from(top), BigInt::from(m));
            x.pow_u(top - m).mul_base(&PadicNumber::from_integer(&c, ctx))
        };
        term(self.degree()).add(&term(self.n + 1).mul_base(&self.a))
    }

    /// `f` as a polynomial over `field`.
    pub fn as_poly(&self, field: &ExtField) -> Poly {
        let mut coeffs = vec![ExtElement::zero(field); self.degree() as usize + 1];
        coeffs[self.degree() as usize] = ExtElement::one(field);
        coeffs[self.n as usize + 1] = ExtElement::from_base(&self.a, field);
        Poly::new(coeffs, field)
    }
}
