use super::newton_lift;
use crate::ext::{ExtElement, ExtField};
use crate::padic::PadicNumber;
use crate::poly::Poly;
use crate::{Error, Result};

/// Principal square root: the branch whose unit part reduces to the smaller
/// representative in `[1, p-1]`. The other branch is its negation.
pub fn sqrt(x: &PadicNumber) -> Result<PadicNumber> {
    if x.is_exact_zero() {
        return Ok(x.clone());
    }
    let ctx = x.ctx();
    let p = ctx.p();
    let v = x.valuation()?.expect("nonzero");
    let shift = PadicNumber::p_power(-v, ctx);
    let unit = x.mul(&shift);
    if v % 2 != 0 {
        return Err(Error::NonResidue {
            value: x.to_string(),
            suggested_modulus: format!("t^2 - {}", unit.mul(&PadicNumber::from_i64(p as i64, ctx))),
        });
    }
    let u0: u64 = unit.residue(1)?.try_into().expect("residue below p");
    let Some(r) = (1..p).find(|r| r * r % p == u0) else {
        return Err(Error::NonResidue {
            value: x.to_string(),
            suggested_modulus: format!("t^2 - {u0}"),
        });
    };
    let field = ExtField::base(ctx);
    let g = Poly::from_base(&[unit.neg(), PadicNumber::zero(ctx), PadicNumber::one(ctx)], &field);
    let (root, _) = newton_lift(&g, &ExtElement::from_i64(r as i64, &field), ctx.precision() as i64)?;
    let half = PadicNumber::p_power(v / 2, ctx);
    Ok(root.coeffs()[0].mul(&half))
}
