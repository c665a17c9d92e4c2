use std::borrow::Cow;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Pow;

use super::arith::is_prime;
use crate::{Error, Result};

/// The prime `p` and the number `N` of digits carried by every element.
#[derive(Clone)]
pub struct PadicContext(Arc<Inner>);

struct Inner {
    p: u64,
    precision: u32,
    prime: BigInt,
    powers: Vec<BigInt>,
}

impl PadicContext {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::PrimeTooSmall(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if precision < 4 {
            return Err(Error::PrecisionTooSmall(precision));
        }
        let prime = BigInt::from(p);
        let mut powers = Vec::with_capacity(2 * precision as usize + 8);
        let mut acc = BigInt::from(1);
        for _ in 0..(2 * precision as usize + 8) {
            powers.push(acc.clone());
            acc *= &prime;
        }
        Ok(Self(Arc::new(Inner {
            p,
            precision,
            prime,
            powers,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn precision(&self) -> u32 {
        self.0.precision
    }

    pub fn prime(&self) -> &BigInt {
        &self.0.prime
    }

    /// `p^k` for `k >= 0`.
    pub fn pow_p(&self, k: i64) -> Cow<'_, BigInt> {
        assert!(k >= 0, "negative power of p");
        match self.0.powers.get(k as usize) {
            Some(v) => Cow::Borrowed(v),
            None => Cow::Owned(Pow::pow(&self.0.prime, k as u64)),
        }
    }

    pub fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.p() == other.p() && self.precision() == other.precision())
    }
}

impl PartialEq for PadicContext {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for PadicContext {}

impl fmt::Debug for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{}(N={})", self.p(), self.precision())
    }
}
