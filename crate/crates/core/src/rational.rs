//! Rational numbers and the small amount of integer number theory the rest of
//! the crate needs (valuations, squarefree parts, trial factorization).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serde adapter writing rationals as strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => parse_rational(&s).map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(rat(i)),
        }
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization of `|n|` by trial division. `n` must be nonzero.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let two = BigInt::from(2);
    let mut p = two.clone();
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == two { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return Vec::new();
    }
    factor(n).into_iter().map(|(p, _)| p).collect()
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// p-adic valuation of a nonzero rational.
pub fn valuation_q(q: &Rational, p: &BigInt) -> i64 {
    valuation(q.numer(), p) as i64 - valuation(q.denom(), p) as i64
}

/// Squarefree integer `d` with `q = d * r^2` for some rational `r`.
pub fn squarefree_part(q: &Rational) -> BigInt {
    assert!(!q.is_zero(), "squarefree part of zero");
    let m = q.numer() * q.denom();
    let mut d = if m.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, e) in factor(&m) {
        if e % 2 == 1 {
            d *= p;
        }
    }
    d
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a rational, if it is a square in `Q`.
pub fn rational_sqrt_exact(q: &Rational) -> Option<Rational> {
    let n = integer_sqrt_exact(q.numer())?;
    let d = integer_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn modpow_u64(base: u64, exp: u64, m: u64) -> u64 {
    let mut result = 1u128 % m as u128;
    let mut b = base as u128 % m as u128;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m as u128;
        }
        b = b * b % m as u128;
        e >>= 1;
    }
    result as u64
}

pub fn modinv_u64(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = egcd(a as i128 % m as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_and_parses() {
        assert_eq!(format_rational(&frac(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-5)), "-5");
        assert_eq!(parse_rational("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&rat(-4)), BigInt::from(-1));
        assert_eq!(squarefree_part(&rat(8)), BigInt::from(2));
        assert_eq!(squarefree_part(&frac(3, 4)), BigInt::from(3));
        assert_eq!(squarefree_part(&frac(1, 2)), BigInt::from(2));
    }

    #[test]
    fn small_number_theory() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(24), 8);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(valuation(&BigInt::from(24), &BigInt::from(2)), 3);
        assert_eq!(modinv_u64(3, 7), Some(5));
        assert_eq!(modpow_u64(3, 6, 7), 1);
        assert_eq!(
            factor(&BigInt::from(-360)),
            vec![(BigInt::from(2), 3), (BigInt::from(3), 2), (BigInt::from(5), 1)]
        );
    }
}
