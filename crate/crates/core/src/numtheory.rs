//! Small integer helpers shared by the field, code and bound modules.

use num_integer::Integer;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^m` into `(p, m)`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = factors[0];
    let mut m = 0;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        m += 1;
    }
    Ok((p, m))
}

/// 2-adic valuation; `nu2(0)` is undefined and panics.
pub fn nu2(x: u64) -> u32 {
    assert!(x != 0, "2-adic valuation of zero");
    x.trailing_zeros()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Smallest `l >= 1` with `base^l = 1 (mod modulus)`.
pub fn multiplicative_order(base: u64, modulus: u64) -> Result<u64> {
    if modulus == 1 {
        return Ok(1);
    }
    if gcd(base % modulus, modulus) != 1 {
        return Err(Error::NotCoprime { base, modulus });
    }
    let b = (base % modulus) as u128;
    let m = modulus as u128;
    let mut acc = b;
    let mut l = 1u64;
    while acc != 1 {
        acc = acc * b % m;
        l += 1;
    }
    Ok(l)
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Binomial coefficient as u128; callers keep arguments small enough not to overflow.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9).unwrap(), (3, 2));
        assert_eq!(prime_power(32).unwrap(), (2, 5));
        assert_eq!(prime_power(13).unwrap(), (13, 1));
        assert!(prime_power(12).is_err());
        assert!(prime_power(1).is_err());
    }

    #[test]
    fn orders_and_valuations() {
        assert_eq!(multiplicative_order(3, 4).unwrap(), 2);
        assert_eq!(multiplicative_order(5, 6).unwrap(), 2);
        assert_eq!(multiplicative_order(4, 5).unwrap(), 2);
        assert_eq!(multiplicative_order(7, 1).unwrap(), 1);
        assert!(multiplicative_order(2, 4).is_err());
        assert_eq!(nu2(12), 2);
        assert_eq!(nu2(33), 0);
        assert_eq!(binomial(26, 3), 2600);
        assert_eq!(binomial(5, 7), 0);
    }
}
