//! Text form of p-adic numbers.
//!
//! ```text
//! literal   := rational | expansion | cap
//! rational  := int ['/' int]
//! expansion := term ('+' term)* ['+' cap]
//! term      := digit ['*' p ['^' exp]]
//! cap       := 'O(' p '^' exp ')'
//! ```
//!
//! Digits lie in `[0, p)` and `p` must be the context prime. An explicit
//! cap `O(p^k)` sets the absolute precision to `k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::padic::{PadicContext, PadicNumber};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty literal")]
    Empty,
    #[error("unexpected {found:?} at offset {pos}")]
    Unexpected { pos: usize, found: String },
    #[error("digit {digit} at offset {pos} is not below p = {p}")]
    DigitTooLarge { pos: usize, digit: BigInt, p: u64 },
    #[error("prime {found} at offset {pos} does not match p = {expected}")]
    WrongPrime { pos: usize, found: BigInt, expected: u64 },
    #[error("malformed exponent at offset {pos}")]
    MalformedExponent { pos: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("precision cap O(p^{cap}) does not exceed the valuation {valuation}")]
    CapNotAboveValuation { cap: i64, valuation: String },
    #[error("term p^{exponent} lies beyond the precision cap O(p^{cap})")]
    TermBeyondCap { exponent: i64, cap: i64 },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    p: u64,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        let found = match self.src.get(self.pos) {
            Some(&c) => (c as char).to_string(),
            None => "end of input".into(),
        };
        ParseError::Unexpected { pos: self.pos, found }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
        text.parse().ok()
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        let negative = self.eat(b'-');
        let n = self.digits().ok_or_else(|| self.unexpected())?;
        Ok(if negative { -n } else { n })
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let pos = self.pos;
        let negative = self.eat(b'-');
        let n = self.digits().ok_or(ParseError::MalformedExponent { pos })?;
        let n: i64 = n.try_into().map_err(|_| ParseError::MalformedExponent { pos })?;
        Ok(if negative { -n } else { n })
    }

    fn prime(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        let pos = self.pos;
        let q = self.digits().ok_or_else(|| self.unexpected())?;
        if q != BigInt::from(self.p) {
            return Err(ParseError::WrongPrime {
                pos,
                found: q,
                expected: self.p,
            });
        }
        Ok(())
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let n = self.int()?;
        let d = if self.eat(b'/') { self.int()? } else { BigInt::one() };
        if !self.at_end() {
            return Err(self.unexpected());
        }
        if d.is_zero() {
            return Err(ParseError::ZeroDenominator);
        }
        Ok(BigRational::new(n, d))
    }

    /// `O(p^k)`, positioned after the `O`.
    fn cap(&mut self) -> Result<i64, ParseError> {
        self.expect(b'(')?;
        self.prime()?;
        self.expect(b'^')?;
        let k = self.exponent()?;
        self.expect(b')')?;
        Ok(k)
    }

    /// `(digit, exponent)` pairs and the cap, if any.
    fn expansion(&mut self) -> Result<(Vec<(BigInt, i64)>, Option<i64>), ParseError> {
        let mut terms = Vec::new();
        loop {
            if self.eat(b'O') {
                let cap = self.cap()?;
                if !self.at_end() {
                    return Err(self.unexpected());
                }
                return Ok((terms, Some(cap)));
            }
            self.skip_ws();
            let pos = self.pos;
            let d = self.digits().ok_or_else(|| self.unexpected())?;
            if d >= BigInt::from(self.p) {
                return Err(ParseError::DigitTooLarge { pos, digit: d, p: self.p });
            }
            let e = if self.eat(b'*') {
                self.prime()?;
                if self.eat(b'^') {
                    self.exponent()?
                } else {
                    1
                }
            } else {
                0
            };
            terms.push((d, e));
            if self.at_end() {
                return Ok((terms, None));
            }
            self.expect(b'+')?;
        }
    }
}

fn p_pow(p: u64, e: i64) -> BigRational {
    let pe = num_traits::pow(BigInt::from(p), e.unsigned_abs() as usize);
    if e >= 0 {
        BigRational::from_integer(pe)
    } else {
        BigRational::new(BigInt::one(), pe)
    }
}

pub fn parse_literal(text: &str, ctx: &PadicContext) -> Result<PadicNumber, ParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        p: ctx.p(),
    };
    if !text.contains(['*', '+', 'O']) {
        return Ok(PadicNumber::from_ratio(&parser.rational()?, ctx));
    }
    let (terms, cap) = parser.expansion()?;
    let value: BigRational = terms
        .iter()
        .map(|(d, e)| BigRational::from_integer(d.clone()) * p_pow(ctx.p(), *e))
        .fold(BigRational::zero(), |acc, t| acc + t);
    let exact = PadicNumber::from_ratio(&value, ctx);
    let Some(cap) = cap else {
        return Ok(exact);
    };
    if terms.is_empty() {
        return Ok(PadicNumber::approx_zero(cap, ctx));
    }
    if let Some((_, e)) = terms.iter().find(|(d, e)| !d.is_zero() && *e >= cap) {
        return Err(ParseError::TermBeyondCap { exponent: *e, cap });
    }
    match exact.valuation().expect("exact value") {
        Some(v) if v < cap => Ok(exact.with_abs_precision(cap)),
        v => Err(ParseError::CapNotAboveValuation {
            cap,
            valuation: v.map_or("+inf".into(), |v| v.to_string()),
        }),
    }
}

/// Inverse of [`parse_literal`]: `n/d` for exact values, the digit
/// expansion with its cap otherwise.
pub fn format_literal(x: &PadicNumber) -> String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::RandBigInt;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx(p: u64, n: u32) -> PadicContext {
        PadicContext::new(p, n).unwrap()
    }

    #[test]
    fn rational_delegates() {
        let c = ctx(3, 10);
        let x = parse_literal("13/4", &c).unwrap();
        let y = PadicNumber::from_rational(&13.into(), &4.into(), &c).unwrap();
        assert_eq!(x, y);
        assert_eq!(parse_literal(" -7 ", &c).unwrap(), PadicNumber::from_i64(-7, &c));
        assert_eq!(parse_literal("1/0", &c), Err(ParseError::ZeroDenominator));
    }

    #[test]
    fn capped_expansion() {
        let c = ctx(5, 10);
        let x = parse_literal("2 + 3*5 + O(5^6)", &c).unwrap();
        assert_eq!(x.valuation().unwrap(), Some(0));
        assert_eq!(x.abs_precision(), Some(6));
        // 2 + 3*5 = 17
        assert_eq!(x.residue(6).unwrap(), 17.into());
        assert!(!x.is_exact());
        let y = parse_literal("1*5^-1 + 4*5^2", &c).unwrap();
        assert_eq!(y.exact_value().unwrap(), BigRational::new(501.into(), 5.into()));
        let z = parse_literal("O(5^3)", &c).unwrap();
        assert!(z.is_zero_to_precision());
        assert_eq!(z.abs_precision(), Some(3));
    }

    #[test]
    fn errors() {
        let c = ctx(5, 10);
        assert!(matches!(parse_literal("7 + 3*5", &c), Err(ParseError::DigitTooLarge { .. })));
        assert!(matches!(parse_literal("1 + 2*5^", &c), Err(ParseError::MalformedExponent { .. })));
        assert!(matches!(parse_literal("1 + 2*5^x", &c), Err(ParseError::MalformedExponent { .. })));
        assert!(matches!(parse_literal("1 + 2*7", &c), Err(ParseError::WrongPrime { .. })));
        assert!(matches!(
            parse_literal("3*5^2 + O(5^2)", &c),
            Err(ParseError::TermBeyondCap { .. })
        ));
        assert!(matches!(
            parse_literal("0 + O(5^2)", &c),
            Err(ParseError::CapNotAboveValuation { .. })
        ));
        assert!(matches!(parse_literal("", &c), Err(ParseError::Empty)));
        assert!(matches!(parse_literal("1 + O(5^3) + 2", &c), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse_literal("1/2/3", &c), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse_literal("1 +", &c), Err(ParseError::Unexpected { .. })));
    }

    fn assert_round_trip(x: &PadicNumber) {
        let text = format_literal(x);
        let y = parse_literal(&text, x.ctx()).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(x.abs_precision(), y.abs_precision(), "{text}");
        assert_eq!(x.exact_value(), y.exact_value(), "{text}");
        if let Some(k) = x.abs_precision() {
            assert!(x.equal_to_precision(&y, k).unwrap(), "{text}");
        }
    }

    #[test]
    fn thousand_generated_literals() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..1000u64 {
            let p = [3u64, 5, 7, 11][(i % 4) as usize];
            let c = ctx(p, 12);
            let num = rng.gen_bigint(60);
            let den = rng.gen_bigint(30);
            if den.is_zero() {
                continue;
            }
            let x = PadicNumber::from_rational(&num, &den, &c).unwrap();
            assert_round_trip(&x);
            if let Some(v) = x.valuation().unwrap() {
                let cap = v + 1 + (i % 11) as i64;
                assert_round_trip(&x.with_abs_precision(cap));
            }
        }
    }

    proptest! {
        #[test]
        fn parsed_expansions_match_digits(digits in proptest::collection::vec(0u64..7, 1..12), shift in -3i64..3) {
            let c = ctx(7, 20);
            let text: Vec<String> = digits
                .iter()
                .enumerate()
                .map(|(i, d)| format!("{d}*7^{}", i as i64 + shift))
                .collect();
            let x = parse_literal(&text.join(" + "), &c).unwrap();
            let expected: BigRational = digits
                .iter()
                .enumerate()
                .map(|(i, d)| BigRational::from_integer((*d).into()) * p_pow(7, i as i64 + shift))
                .sum();
            prop_assert_eq!(x.exact_value().unwrap_or_default(), expected);
        }
    }
}
