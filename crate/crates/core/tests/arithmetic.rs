use num_bigint::BigInt;
use num_rational::BigRational;
use padic_dyn::padic::binomial_valuation;
use padic_dyn::report::{format_literal, parse_literal};
use padic_dyn::roots::sqrt;
use padic_dyn::{PadicContext, PadicNumber};
use proptest::prelude::*;

const N: u32 = 24;

fn ctx(p: u64) -> PadicContext {
    PadicContext::new(p, N).unwrap()
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-100_000i64..100_000, 1i64..100_000, 0u32..3, 0u32..3).prop_map(|(n, d, a, b)| {
        BigRational::new(BigInt::from(n) * BigInt::from(3).pow(a), BigInt::from(d) * BigInt::from(5).pow(b))
    })
}

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5), Just(7), Just(13)]
}

/// Number of carries when adding `a` and `b` in base `p`.
fn carries(mut a: u64, mut b: u64, p: u64) -> u32 {
    let (mut carry, mut count) = (0, 0);
    while a > 0 || b > 0 || carry > 0 {
        let s = a % p + b % p + carry;
        carry = u64::from(s >= p);
        count += carry as u32;
        a /= p;
        b /= p;
    }
    count
}

#[test]
fn binomial_valuation_counts_carries() {
    for p in [3, 5, 7] {
        for n in 0..200u64 {
            for k in 0..=n {
                assert_eq!(binomial_valuation(n, k, p), carries(k, n - k, p), "C({n},{k}) at p={p}");
            }
        }
    }
}

#[test]
fn literal_example() {
    let x = parse_literal("2 + 3*5 + O(5^6)", &ctx(5)).unwrap();
    assert_eq!(x.valuation().unwrap(), Some(0));
    assert_eq!(x.residue(6).unwrap(), BigInt::from(17));
    assert_eq!(x.abs_precision(), Some(6));
    assert!(parse_literal("7 + 3*5", &ctx(5)).is_err());
}

proptest! {
    #[test]
    fn capped_arithmetic_agrees_with_rationals(p in prime(), r in rational(), s in rational()) {
        let c = ctx(p);
        let (x, y) = (PadicNumber::from_ratio(&r, &c).without_shadow(), PadicNumber::from_ratio(&s, &c).without_shadow());
        let sum = x.add(&y).sub(&PadicNumber::from_ratio(&(&r + &s), &c));
        prop_assert!(sum.is_zero_to_precision(), "{} + {} off by {}", r, s, sum);
        let prod = x.mul(&y).sub(&PadicNumber::from_ratio(&(&r * &s), &c));
        prop_assert!(prod.is_zero_to_precision(), "{} * {} off by {}", r, s, prod);
        if !s.numer().eq(&BigInt::from(0)) {
            let quot = x.try_div(&y).unwrap().sub(&PadicNumber::from_ratio(&(&r / &s), &c));
            prop_assert!(quot.is_zero_to_precision(), "{} / {} off by {}", r, s, quot);
        }
    }

    #[test]
    fn square_roots_square_back(p in prime(), w in 1i64..1_000_000) {
        prop_assume!(w % p as i64 != 0);
        let c = ctx(p);
        let square = PadicNumber::from_i64(w * w, &c);
        let root = sqrt(&square).unwrap();
        prop_assert!(root.mul(&root).sub(&square).is_zero_to_precision());
        let w = PadicNumber::from_i64(w, &c);
        prop_assert!(root.sub(&w).is_zero_to_precision() || root.add(&w).is_zero_to_precision());
    }

    #[test]
    fn literals_round_trip(p in prime(), r in rational(), cap in 1i64..20) {
        let c = ctx(p);
        let x = PadicNumber::from_ratio(&r, &c);
        prop_assert_eq!(parse_literal(&format_literal(&x), &c).unwrap(), x.clone());
        if let Some(v) = x.valuation().unwrap() {
            let truncated = x.with_abs_precision(v + cap);
            let back = parse_literal(&format_literal(&truncated), &c).unwrap();
            prop_assert_eq!(back, truncated);
        }
    }
}
