use super::nth::nth_roots;
use crate::ext::{ExtElement, ExtField};
use crate::padic::{multiplicative_order, PadicContext};
use crate::{Error, Result};

/// The m-th roots of unity of one field, `1` first.
#[derive(Debug, Clone)]
pub struct RootsOfUnitySet {
    pub order: u64,
    pub field: ExtField,
    pub members: Vec<ExtElement>,
    pub includes_identity: bool,
}

impl RootsOfUnitySet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &ExtElement> {
        self.members.iter().skip(usize::from(self.includes_identity))
    }
}

/// All m-th roots of unity in `field` for `(m, p) = 1`: residue-field search
/// followed by Newton lifting.
pub fn nth_roots_of_unity(m: u64, field: &ExtField) -> Result<RootsOfUnitySet> {
    let p = field.ctx().p();
    if m == 0 || m.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!("order {m} must be coprime to p = {p}")));
    }
    let q = field.residue_field_size();
    if !(q - 1).is_multiple_of(m) {
        return Err(Error::RootsOfUnityNotInField {
            m,
            suggested_degree: multiplicative_order(p, m),
        });
    }
    let found = nth_roots(&ExtElement::one(field), m)?;
    debug_assert_eq!(found.missing, 0);
    Ok(RootsOfUnitySet {
        order: m,
        field: field.clone(),
        members: found.roots,
        includes_identity: true,
    })
}

/// The p-th roots of unity `(1 + t)^j` in `Q_p[t]/(Phi_p(1 + t))`. Only the
/// first level `k = 1` is supported.
pub fn p_power_roots_of_unity(k: u32, ctx: &PadicContext) -> Result<RootsOfUnitySet> {
    if k != 1 {
        return Err(Error::Unsupported(format!("p-power roots of unity of level {k}")));
    }
    let field = ExtField::cyclotomic(ctx)?;
    let zeta = ExtElement::one(&field).add(&ExtElement::generator(&field)?);
    let mut members = Vec::with_capacity(ctx.p() as usize);
    let mut acc = ExtElement::one(&field);
    for _ in 0..ctx.p() {
        members.push(acc.clone());
        acc = acc.mul(&zeta);
    }
    Ok(RootsOfUnitySet {
        order: ctx.p(),
        field,
        members,
        includes_identity: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::NormValue;
    use num_rational::Ratio;

    fn ctx(p: u64) -> PadicContext {
        PadicContext::new(p, 20).unwrap()
    }

    fn assert_roots_of_unity(set: &RootsOfUnitySet) {
        let one = ExtElement::one(&set.field);
        for z in &set.members {
            assert!(z.pow_u(set.order).sub(&one).is_zero_to(Ratio::from_integer(18)));
        }
        for (i, a) in set.members.iter().enumerate() {
            for b in &set.members[i + 1..] {
                assert!(!a.sub(b).is_zero_to_precision());
            }
        }
    }

    #[test]
    fn square_roots_of_unity_mod_5() {
        let set = nth_roots_of_unity(2, &ExtField::base(&ctx(5))).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.members[0], ExtElement::one(&set.field));
        assert!(set.members[1].add(&ExtElement::one(&set.field)).is_zero_to_precision());
    }

    #[test]
    fn fourth_roots_of_unity_mod_5_on_unit_sphere() {
        let set = nth_roots_of_unity(4, &ExtField::base(&ctx(5))).unwrap();
        assert_eq!(set.len(), 4);
        assert_roots_of_unity(&set);
        let one = ExtElement::one(&set.field);
        for z in set.nontrivial() {
            assert_eq!(z.sub(&one).valuation().unwrap(), NormValue::ONE);
        }
    }

    #[test]
    fn eighth_roots_in_unramified_quadratic_over_q3() {
        let field = ExtField::unramified(&ctx(3), 2).unwrap();
        let set = nth_roots_of_unity(8, &field).unwrap();
        assert_eq!(set.len(), 8);
        assert_roots_of_unity(&set);
        // brute force over F_9: every nonzero residue is an 8th root of unity
        let residues: std::collections::BTreeSet<u64> =
            set.members.iter().map(|z| z.residue_index().unwrap()).collect();
        assert_eq!(residues, (1..9).collect());
        let one = ExtElement::one(&field);
        for z in set.nontrivial() {
            assert_eq!(z.sub(&one).valuation().unwrap(), NormValue::ONE);
        }
    }

    #[test]
    fn missing_roots_suggest_unramified_degree() {
        assert_eq!(
            nth_roots_of_unity(8, &ExtField::base(&ctx(3))).unwrap_err(),
            Error::RootsOfUnityNotInField {
                m: 8,
                suggested_degree: 2
            }
        );
        assert!(matches!(
            nth_roots_of_unity(3, &ExtField::base(&ctx(3))),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn cube_roots_of_unity_q3() {
        let set = p_power_roots_of_unity(1, &ctx(3)).unwrap();
        assert_eq!(set.len(), 3);
        assert_roots_of_unity(&set);
        let one = ExtElement::one(&set.field);
        assert!(set.members[0].sub(&one).is_exact_zero());
        assert_eq!(set.members[0].sub(&one).valuation().unwrap(), NormValue::Zero);
        for z in set.nontrivial() {
            assert_eq!(z.sub(&one).valuation().unwrap(), NormValue::Finite(Ratio::new(1, 2)));
        }
        assert!(matches!(p_power_roots_of_unity(2, &ctx(3)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn fifth_roots_of_unity_q5() {
        let set = p_power_roots_of_unity(1, &ctx(5)).unwrap();
        assert_roots_of_unity(&set);
        let one = ExtElement::one(&set.field);
        for z in set.nontrivial() {
            assert_eq!(z.sub(&one).valuation().unwrap(), NormValue::Finite(Ratio::new(1, 4)));
        }
    }
}
