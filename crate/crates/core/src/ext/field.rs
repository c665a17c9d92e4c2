use std::fmt;
use std::sync::Arc;

use num_rational::{BigRational, Ratio};
use num_traits::One;

use super::fp;
use crate::padic::{PadicContext, PadicNumber};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    /// `Q_p` itself, presented as `Q_p[t]/(t)`.
    Base,
    Unramified,
    Eisenstein,
}

/// A certified finite extension `Q_p[t]/(g)`.
#[derive(Clone)]
pub struct ExtField(Arc<Inner>);

struct Inner {
    ctx: PadicContext,
    /// Monic modulus, constant term first.
    modulus: Vec<PadicNumber>,
    kind: FieldKind,
    e: u32,
    f: u32,
    /// `g(t) = Phi_p(1 + t)`, so `1 + t` is a primitive p-th root of unity.
    cyclotomic: bool,
}

/// Degree bound for brute-force irreducibility over `F_p`.
const MAX_RESIDUE_CERTIFIED_DEGREE: usize = 6;

fn describe_poly(coeffs: &[PadicNumber]) -> String {
    let mut terms = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_exact_zero() {
            continue;
        }
        let coef = c.to_string();
        let is_one = c.exact_value().is_some_and(|r| r.is_one());
        let mono = match i {
            0 => coef,
            _ => {
                let power = if i == 1 { "t".to_string() } else { format!("t^{i}") };
                if is_one {
                    power
                } else if coef.contains(' ') || coef.contains('/') {
                    format!("({coef})*{power}")
                } else {
                    format!("{coef}*{power}")
                }
            }
        };
        terms.push(mono);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

impl ExtField {
    /// `Q_p` as a degree-one field.
    pub fn base(ctx: &PadicContext) -> Self {
        Self(Arc::new(Inner {
            ctx: ctx.clone(),
            modulus: vec![PadicNumber::zero(ctx), PadicNumber::one(ctx)],
            kind: FieldKind::Base,
            e: 1,
            f: 1,
            cyclotomic: false,
        }))
    }

    /// Builds `Q_p[t]/(modulus)` after certifying irreducibility by the
    /// Eisenstein criterion or by irreducibility modulo `p`.
    pub fn make_extension(modulus: Vec<PadicNumber>, ctx: &PadicContext) -> Result<Self> {
        let d = modulus.len().saturating_sub(1);
        if d < 2 {
            return Err(Error::InvalidModulus("degree must be at least 2".into()));
        }
        let desc = describe_poly(&modulus);
        if modulus[d].exact_value() != Some(BigRational::one()) {
            return Err(Error::InvalidModulus(format!("{desc} is not monic")));
        }
        if let Some(bad) = modulus.iter().find(|c| !c.is_integral()) {
            return Err(Error::InvalidModulus(format!("coefficient {bad} is not in Z_p")));
        }
        let cyclotomic = Self::is_shifted_cyclotomic(&modulus, ctx);
        let eisenstein = modulus[..d]
            .iter()
            .all(|c| c.valuation_lower_bound().is_none_or(|v| v >= 1))
            && modulus[0].valuation() == Ok(Some(1));
        let (kind, e, f) = if eisenstein {
            (FieldKind::Eisenstein, d as u32, 1)
        } else {
            if d > MAX_RESIDUE_CERTIFIED_DEGREE {
                return Err(Error::CannotCertify(desc));
            }
            let reduced: Vec<u64> = modulus
                .iter()
                .map(|c| c.residue(1).map(|r| u64::try_from(r).expect("residue below p")))
                .collect::<Result<_>>()?;
            if !fp::is_irreducible(&reduced, ctx.p()) {
                return Err(Error::CannotCertify(desc));
            }
            (FieldKind::Unramified, 1, d as u32)
        };
        Ok(Self(Arc::new(Inner {
            ctx: ctx.clone(),
            modulus,
            kind,
            e,
            f,
            cyclotomic,
        })))
    }

    /// Convenience constructor from integer coefficients, constant first.
    pub fn from_integer_modulus(coeffs: &[i64], ctx: &PadicContext) -> Result<Self> {
        Self::make_extension(coeffs.iter().map(|&c| PadicNumber::from_i64(c, ctx)).collect(), ctx)
    }

    /// The unramified extension of degree `f`, defined by the first monic
    /// polynomial of that degree irreducible modulo `p`.
    pub fn unramified(ctx: &PadicContext, f: u32) -> Result<Self> {
        if f == 1 {
            return Ok(Self::base(ctx));
        }
        if f as usize > MAX_RESIDUE_CERTIFIED_DEGREE {
            return Err(Error::Unsupported(format!("unramified degree {f} > {MAX_RESIDUE_CERTIFIED_DEGREE}")));
        }
        let g = fp::first_irreducible(f as usize, ctx.p());
        Self::from_integer_modulus(&g.iter().map(|&c| c as i64).collect::<Vec<_>>(), ctx)
    }

    /// `Q_p(zeta_p)` as `Q_p[t]/(Phi_p(1 + t))`, with `zeta_p = 1 + t`.
    pub fn cyclotomic(ctx: &PadicContext) -> Result<Self> {
        Self::make_extension(Self::shifted_cyclotomic_coefficients(ctx), ctx)
    }

    /// `Phi_p(1 + t) = sum_{i=1}^{p} C(p, i) t^(i-1)`.
    fn shifted_cyclotomic_coefficients(ctx: &PadicContext) -> Vec<PadicNumber> {
        let p = ctx.p();
        let mut binom = num_bigint::BigInt::from(1);
        let mut out = Vec::with_capacity(p as usize);
        for i in 1..=p {
            binom = binom * (p - i + 1) / i;
            out.push(PadicNumber::from_integer(&binom, ctx));
        }
        out
    }

    fn is_shifted_cyclotomic(modulus: &[PadicNumber], ctx: &PadicContext) -> bool {
        let target = Self::shifted_cyclotomic_coefficients(ctx);
        modulus.len() == target.len()
            && modulus
                .iter()
                .zip(&target)
                .all(|(a, b)| a.exact_value().is_some() && a.exact_value() == b.exact_value())
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.0.ctx
    }

    pub fn degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[PadicNumber] {
        &self.0.modulus
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    pub fn ramification_index(&self) -> u32 {
        self.0.e
    }

    pub fn residue_degree(&self) -> u32 {
        self.0.f
    }

    pub fn is_cyclotomic(&self) -> bool {
        self.0.cyclotomic
    }

    /// The residue field, in the digit encoding of
    /// [`ExtElement::residue_index`](super::ExtElement::residue_index).
    pub fn residue_field(&self) -> Result<fp::ResidueField> {
        let p = self.ctx().p();
        if self.0.f == 1 {
            return Ok(fp::ResidueField::new(p, vec![0, 1]));
        }
        let modulus = self
            .0
            .modulus
            .iter()
            .map(|c| Ok(c.residue(1)?.try_into().expect("digit below p")))
            .collect::<Result<Vec<u64>>>()?;
        Ok(fp::ResidueField::new(p, modulus))
    }

    pub fn residue_field_size(&self) -> u64 {
        self.ctx().p().pow(self.0.f)
    }

    /// Valuation of the basis element `t^i`.
    pub fn basis_valuation(&self, i: usize) -> Ratio<i64> {
        match self.0.kind {
            FieldKind::Eisenstein => Ratio::new(i as i64, self.0.e as i64),
            _ => Ratio::from_integer(0),
        }
    }

    pub fn describe(&self) -> String {
        match self.0.kind {
            FieldKind::Base => format!("Q_{}", self.ctx().p()),
            _ => format!("Q_{}[t]/({})", self.ctx().p(), describe_poly(&self.0.modulus)),
        }
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.ctx() == other.ctx() && self.0.kind == other.0.kind && self.0.modulus == other.0.modulus)
    }
}

impl Eq for ExtField {}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({:?}, e={}, f={})", self.describe(), self.0.kind, self.0.e, self.0.f)
    }
}
