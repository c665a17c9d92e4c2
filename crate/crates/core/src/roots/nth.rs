use num_bigint::BigInt;

use super::newton_lift;
use super::p_power_roots_of_unity;
use crate::ext::{ExtElement, ExtField};
use crate::padic::{multiplicative_order, NormValue, PadicNumber};
use crate::poly::Poly;
use crate::{Error, Result};

/// The n-th roots of `c` that live in the field of `c`.
#[derive(Debug, Clone)]
pub struct NthRoots {
    pub roots: Vec<ExtElement>,
    /// Roots (counted with the `n` of the equation) that need a larger field.
    pub missing: u64,
    /// What kind of extension would contain the missing roots.
    pub hint: Option<String>,
}

/// Order of the residue of the unit `c` in the multiplicative group of the
/// residue field.
fn residue_order(c: &ExtElement) -> Result<u64> {
    let field = c.field().residue_field()?;
    let cbar = c.residue_index()?;
    let mut acc = cbar;
    for k in 1..c.field().residue_field_size() {
        if acc == 1 {
            return Ok(k);
        }
        acc = field.mul(acc, cbar);
    }
    Ok(c.field().residue_field_size() - 1)
}

/// Roots of `x^n = c` for a unit `c`.
///
/// With `n = p^k m`, `(m, p) = 1`, the `m`-th roots come from a residue
/// field search and Newton lifting. The `p^k` part uses [`p_th_root`] on
/// base-field values and, in `Q_p(zeta_p)`, the p-th roots of unity.
pub fn nth_roots(c: &ExtElement, n: u64) -> Result<NthRoots> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if c.valuation()? != NormValue::ONE {
        return Err(Error::InvalidArgument(format!("|{c}| must be 1")));
    }
    let field = c.field();
    let ctx = field.ctx();
    let p = ctx.p();
    let (mut k, mut m) = (0u32, n);
    while m % p == 0 {
        m /= p;
        k += 1;
    }

    let g = Poly::binomial(m as usize, c);
    // Roots over a base-field value with a residue in F_p stay in Q_p, so
    // they are lifted there and embedded with exactly zero t-coordinates.
    let base = ExtField::base(ctx);
    let base_g = c
        .base_part()
        .map(|b| Poly::binomial(m as usize, &ExtElement::from_base(b, &base)));
    let residues = field.residue_field()?;
    let cbar = c.residue_index()?;
    let mut m_roots = Vec::new();
    for idx in 1..field.residue_field_size() {
        if residues.pow(idx, m) != cbar {
            continue;
        }
        let r = ExtElement::residue_representative(idx, field);
        let root = match &base_g {
            Some(bg) if idx < p => {
                let start = ExtElement::residue_representative(idx, &base);
                let (root, _) = newton_lift(bg, &start, ctx.precision() as i64)?;
                ExtElement::from_base(&root.coeffs()[0], field)
            }
            _ => newton_lift(&g, &r, ctx.precision() as i64)?.0,
        };
        m_roots.push(root);
    }
    let mut hints = Vec::new();
    if (m_roots.len() as u64) < m {
        let degree = multiplicative_order(p, m * residue_order(c)?);
        hints.push(format!("unramified extension of degree {degree} over Q_{p}"));
    }

    let unity = if k > 0 && field.is_cyclotomic() {
        p_power_roots_of_unity(1, ctx)?.members
    } else {
        vec![ExtElement::one(field)]
    };
    let mut roots = Vec::new();
    let mut lacks_p_root = false;
    for r in m_roots {
        let mut eta = Some(r);
        for _ in 0..k {
            eta = match eta.as_ref().and_then(ExtElement::base_part) {
                Some(b) => p_th_root(b)?.map(|y| ExtElement::from_base(&y, field)),
                None => None,
            };
        }
        match eta {
            Some(eta) => roots.extend(unity.iter().map(|z| eta.mul(z))),
            None => lacks_p_root = true,
        }
    }
    if lacks_p_root {
        hints.push(format!("ramified extension adjoining a {p}-th root"));
    } else if k > 0 && (roots.len() as u64) < n && !roots.is_empty() {
        hints.push(format!("{}-th roots of unity", p.pow(k)));
    }
    let missing = n - roots.len() as u64;
    Ok(NthRoots {
        roots,
        missing,
        hint: (missing > 0).then(|| hints.join("; ")),
    })
}

fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    let (mut acc, mut b, mut e) = (1u128, base as u128 % m as u128, exp);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        e >>= 1;
    }
    acc as u64
}

/// The p-th root of a unit of `Q_p`, if it exists.
///
/// Searches `x0 mod p^3` with `x0^p = c (mod p^3)`; any exact root reduces
/// to such an `x0`, so an empty search proves there is none. A hit is
/// lifted since `v(c - x0^p) >= 3 > 2 = 2 v(p x0^(p-1))`.
pub fn p_th_root(c: &PadicNumber) -> Result<Option<PadicNumber>> {
    if c.valuation()? != Some(0) {
        return Err(Error::InvalidArgument(format!("|{c}| must be 1")));
    }
    let ctx = c.ctx();
    let p = ctx.p();
    let p3 = p.pow(3);
    let target: u64 = c.residue(3)?.try_into().expect("residue below p^3");
    let Some(x0) = (1..p3).filter(|x| x % p != 0).find(|&x| pow_mod(x, p, p3) == target) else {
        return Ok(None);
    };
    let field = ExtField::base(ctx);
    let g = Poly::binomial(p as usize, &ExtElement::from_base(c, &field));
    let start = ExtElement::from_base(&PadicNumber::from_integer(&BigInt::from(x0), ctx), &field);
    let (root, _) = newton_lift(&g, &start, ctx.precision() as i64)?;
    Ok(Some(root.coeffs()[0].clone()))
}
