use num_rational::Ratio;

use crate::ext::ExtElement;
use crate::padic::NormValue;
use crate::poly::Poly;
use crate::{Error, Result};

/// Provenance of a lifted root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCertificate {
    pub polynomial: String,
    pub start: String,
    /// `|g(x0)|`, or an upper bound when the residual is below the known
    /// precision.
    pub start_residual: NormValue,
    pub derivative: NormValue,
    pub iterations: u32,
}

fn residual_bound(g: &ExtElement) -> NormValue {
    match g.valuation() {
        Ok(n) => n,
        Err(_) => g.coordinate_lower_bound().map_or(NormValue::Zero, NormValue::Finite),
    }
}

fn iteration_budget(target: i64) -> u32 {
    let t = target.max(1) as u64;
    (u64::BITS - (t - 1).leading_zeros()) + 2
}

/// Hensel-Newton lifting of an approximate root of `poly` until
/// `|poly(x)| <= p^-target`.
///
/// Requires `v(poly(approx)) > 2 v(poly'(approx))`. With a unit derivative
/// iterates run in capped arithmetic, otherwise on exact representatives of
/// their digits; the final candidate is replaced by the exact rational its
/// digits spell and the residual is certified there. The returned root
/// carries the error bound
/// `p^-(target - v(poly'(approx)))`.
pub fn newton_lift(poly: &Poly, approx: &ExtElement, target: i64) -> Result<(ExtElement, LiftCertificate)> {
    let deriv = poly.derivative();
    let target_v = Ratio::from_integer(target);
    let g0 = poly.eval(approx);
    let residual = residual_bound(&g0);
    let dv = match deriv.eval(approx).valuation() {
        Ok(NormValue::Finite(v)) => v,
        _ => {
            return Err(Error::LiftPrecondition {
                residual: residual.to_string(),
                derivative: "0".into(),
            })
        }
    };
    let certificate = |iterations| LiftCertificate {
        polynomial: poly.to_string(),
        start: approx.to_string(),
        start_residual: residual,
        derivative: NormValue::Finite(dv),
        iterations,
    };
    if g0.is_zero_to(target_v) {
        return Ok((approx.clone(), certificate(0)));
    }
    let converges = match residual {
        NormValue::Zero => true,
        NormValue::Finite(r) => r > dv * 2,
    };
    if !converges {
        return Err(Error::LiftPrecondition {
            residual: residual.to_string(),
            derivative: NormValue::Finite(dv).to_string(),
        });
    }

    let budget = iteration_budget(target);
    let mut x = approx.to_exact_representative();
    for iterations in 0..=budget {
        let gx = poly.eval(&x);
        if gx.is_exact_zero() {
            return Ok((x, certificate(iterations)));
        }
        if gx.is_zero_to(target_v) {
            let exact = x.to_exact_representative();
            let ge = if exact == x { gx } else { poly.eval(&exact) };
            if ge.is_exact_zero() {
                return Ok((exact, certificate(iterations)));
            }
            if ge.is_zero_to(target_v) {
                return Ok((exact.with_error_bound(target_v - dv), certificate(iterations)));
            }
            x = exact;
            continue;
        }
        if iterations == budget {
            break;
        }
        let step = gx.try_div(&deriv.eval(&x))?;
        // Division by a non-unit derivative eats digits in capped
        // arithmetic; the exact representative keeps the iterate whole.
        x = x.sub(&step);
        x = if dv > Ratio::from_integer(0) {
            x.to_exact_representative()
        } else {
            x.without_shadow()
        };
    }
    Err(Error::PrecisionCeiling {
        target,
        iterations: budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::ExtField;
    use crate::padic::{PadicContext, PadicNumber};
    use num_bigint::BigInt;

    fn base(p: u64, n: u32) -> ExtField {
        ExtField::base(&PadicContext::new(p, n).unwrap())
    }

    /// Square the returned value modulo p^N and compare with the target.
    fn squares_to(root: &ExtElement, value: i64, p: u64, n: u32) -> bool {
        let r = root.coeffs()[0].residue(n as i64).unwrap();
        let m = BigInt::from(p).pow(n);
        (&r * &r - value) % &m == BigInt::from(0)
    }

    #[test]
    fn square_root_of_13_mod_3() {
        let k = base(3, 20);
        let g = Poly::from_i64(&[-13, 0, 1], &k);
        let (root, cert) = newton_lift(&g, &ExtElement::from_i64(1, &k), 20).unwrap();
        assert!(squares_to(&root, 13, 3, 20));
        // 7^2 = 49 = 13 + 36, so the root is 7 mod 9
        assert_eq!(root.coeffs()[0].residue(2).unwrap(), BigInt::from(7));
        assert!(cert.iterations <= iteration_budget(20));
        assert_eq!(cert.derivative, NormValue::ONE);
        assert!(root.sub(&ExtElement::from_i64(1, &k)).valuation().unwrap().is_small());
    }

    #[test]
    fn square_root_of_29_mod_5() {
        let k = base(5, 16);
        let g = Poly::from_i64(&[-29, 0, 1], &k);
        let (root, _) = newton_lift(&g, &ExtElement::from_i64(2, &k), 16).unwrap();
        assert!(squares_to(&root, 29, 5, 16));
        assert_eq!(root.coeffs()[0].residue(2).unwrap(), BigInt::from(2));
    }

    #[test]
    fn exact_root_returns_immediately() {
        let k = base(7, 10);
        let g = Poly::from_i64(&[-5, 1], &k);
        let (root, cert) = newton_lift(&g, &ExtElement::from_i64(5, &k), 10).unwrap();
        assert_eq!(root, ExtElement::from_i64(5, &k));
        assert_eq!(cert.iterations, 0);
    }

    #[test]
    fn precondition_is_checked() {
        let k = base(3, 10);
        // x^2 - 2 has no root mod 3; start residual v(1 - 2) = 0
        let g = Poly::from_i64(&[-2, 0, 1], &k);
        assert!(matches!(
            newton_lift(&g, &ExtElement::from_i64(1, &k), 10),
            Err(Error::LiftPrecondition { .. })
        ));
        // x^3 - 10 at 1 over Q_3: v(g) = 2 but v(g') = 1, not 2 > 2
        let g = Poly::from_i64(&[-10, 0, 0, 1], &k);
        assert!(matches!(
            newton_lift(&g, &ExtElement::from_i64(1, &k), 10),
            Err(Error::LiftPrecondition { .. })
        ));
    }

    #[test]
    fn residual_invariant_for_p_th_root_lift() {
        // x^3 - 28 from 1: v(28 - 1) = 3 > 2 = 2 v(3)
        let k = base(3, 30);
        let g = Poly::from_i64(&[-28, 0, 0, 1], &k);
        let (root, cert) = newton_lift(&g, &ExtElement::from_i64(1, &k), 30).unwrap();
        assert_eq!(cert.derivative, NormValue::from_valuation(1));
        // the returned root is known to 29 digits, so g(root) is known to 29
        assert!(g.eval(&root).is_zero_to(Ratio::from_integer(29)));
        let c = k.ctx();
        let cube = root.coeffs()[0].pow_u(3);
        assert!(cube.equal_to_precision(&PadicNumber::from_i64(28, c), 29).unwrap());
    }
}
