use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits a nonzero integer as `p^v * rest` with `p` not dividing `rest`.
pub fn split_valuation(n: &BigInt, p: &BigInt) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            break;
        }
        rest = q;
        v += 1;
    }
    (v, rest)
}

/// Inverse of `a` modulo `m`, normalised into `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let egcd = a.mod_floor(m).extended_gcd(m);
    if !egcd.gcd.abs().is_one() {
        return None;
    }
    Some(egcd.x.mod_floor(m))
}

/// Order of `p` in `(Z/mZ)^*`; `m` must be coprime to `p`.
pub fn multiplicative_order(p: u64, m: u64) -> u32 {
    if m <= 1 {
        return 1;
    }
    let mut acc = p % m;
    let mut k = 1u32;
    while acc != 1 {
        acc = ((acc as u128 * p as u128) % m as u128) as u64;
        k += 1;
    }
    k
}

/// `v_p(C(n, k))`, counted as the number of carries when adding `k` and
/// `n - k` in base `p`.
pub fn binomial_valuation(n: u64, k: u64, p: u64) -> u32 {
    assert!(k <= n, "binomial_valuation requires k <= n");
    let mut a = k;
    let mut b = n - k;
    let mut carry = 0u64;
    let mut carries = 0u32;
    while a > 0 || b > 0 || carry > 0 {
        let digit_sum = a % p + b % p + carry;
        carry = u64::from(digit_sum >= p);
        carries += carry as u32;
        a /= p;
        b /= p;
    }
    carries
}
