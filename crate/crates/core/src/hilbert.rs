//! Hilbert symbols over `Q` and norm equations from quadratic fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{integer_sqrt_exact, is_prime_u64, prime_divisors, squarefree_part, valuation, Rational};

/// A place of `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Infinity,
    Prime(BigInt),
}

impl Place {
    pub fn prime(p: u64) -> Self {
        Place::Prime(BigInt::from(p))
    }

    fn sort_key(&self) -> (u8, BigInt) {
        match self {
            Place::Infinity => (0, BigInt::zero()),
            Place::Prime(p) => (1, p.clone()),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "oo" => Ok(Place::Infinity),
            _ => s
                .parse::<BigInt>()
                .map(Place::Prime)
                .map_err(|_| Error::InvalidPlace(s.to_string())),
        }
    }
}

/// Local Hilbert symbols keyed by place, in place order (`inf` first).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LocalInvariants(pub Vec<(Place, i8)>);

impl LocalInvariants {
    /// Places where the symbol is `-1`.
    pub fn ramified(&self) -> Vec<Place> {
        self.0.iter().filter(|(_, s)| *s == -1).map(|(p, _)| p.clone()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|(_, s)| *s == 1)
    }

    pub fn product(&self) -> i8 {
        self.0.iter().map(|(_, s)| *s).product()
    }

    pub fn get(&self, place: &Place) -> Option<i8> {
        self.0.iter().find(|(p, _)| p == place).map(|(_, s)| *s)
    }
}

impl Serialize for LocalInvariants {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (p, v) in &self.0 {
            m.serialize_entry(&p.to_string(), v)?;
        }
        m.end()
    }
}

fn legendre(u: &BigInt, p: &BigInt) -> i8 {
    let r = u.mod_floor(p);
    if r.is_zero() {
        return 0;
    }
    let e = (p - 1u32) / 2u32;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Integer in the same square class as `q`.
fn integral_square_class(q: &Rational) -> BigInt {
    q.numer() * q.denom()
}

/// `(a, b)_v`: `+1` iff `z^2 = a x^2 + b y^2` has a nontrivial solution over `Q_v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::PreconditionFailed("hilbert symbol of zero".into()));
    }
    let (a, b) = (integral_square_class(a), integral_square_class(b));
    match v {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) => {
            if !p.to_u64().is_some_and(is_prime_u64) {
                return Err(Error::InvalidPlace(p.to_string()));
            }
            let alpha = valuation(&a, p);
            let beta = valuation(&b, p);
            let u = &a / p.pow(alpha);
            let w = &b / p.pow(beta);
            if *p == BigInt::from(2) {
                let eps = |x: &BigInt| -> u32 { ((x - 1u32) / 2u32).mod_floor(&BigInt::from(2)).to_u32().unwrap() };
                let omega = |x: &BigInt| -> u32 { ((x * x - 1u32) / 8u32).mod_floor(&BigInt::from(2)).to_u32().unwrap() };
                let e = eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u);
                Ok(if e % 2 == 0 { 1 } else { -1 })
            } else {
                let half = ((p - 1u32) / 2u32).mod_floor(&BigInt::from(2)).to_u32().unwrap();
                let mut s: i8 = if (alpha * beta * half) % 2 == 1 { -1 } else { 1 };
                if beta % 2 == 1 {
                    s *= legendre(&u, p);
                }
                if alpha % 2 == 1 {
                    s *= legendre(&w, p);
                }
                Ok(s)
            }
        }
    }
}

/// `{inf, 2}` together with every prime dividing one of the given nonzero rationals.
pub fn relevant_places(values: &[&Rational]) -> Vec<Place> {
    let mut primes: Vec<BigInt> = vec![BigInt::from(2)];
    for q in values {
        primes.extend(prime_divisors(q.numer()));
        primes.extend(prime_divisors(q.denom()));
    }
    primes.sort();
    primes.dedup();
    let mut out = vec![Place::Infinity];
    out.extend(primes.into_iter().map(Place::Prime));
    out
}

/// Hilbert symbols `(a, b)_v` at every place where they can be nontrivial.
pub fn local_invariants(a: &Rational, b: &Rational) -> Result<LocalInvariants> {
    let mut out = Vec::new();
    for v in relevant_places(&[a, b]) {
        out.push((v.clone(), hilbert_symbol(a, b, &v)?));
    }
    Ok(LocalInvariants(out))
}

/// Whether `a` is a norm from `Q(sqrt d)`, decided by local symbols `(d, a)_v`.
pub fn is_norm_from_quadratic(a: &Rational, d: &BigInt) -> Result<bool> {
    Ok(norm_obstructions(a, d)?.is_empty())
}

/// Places where `(d, a)_v = -1`.
pub fn norm_obstructions(a: &Rational, d: &BigInt) -> Result<Vec<Place>> {
    check_quadratic(a, d)?;
    let dq = Rational::from_integer(d.clone());
    Ok(local_invariants(&dq, a)?.ramified())
}

fn check_quadratic(a: &Rational, d: &BigInt) -> Result<()> {
    if a.is_zero() {
        return Err(Error::PreconditionFailed("norm target must be nonzero".into()));
    }
    if d.is_one() || d.is_zero() || squarefree_part(&Rational::from_integer(d.clone())) != *d {
        return Err(Error::PreconditionFailed(format!("{d} is not a squarefree integer other than 1")));
    }
    Ok(())
}

/// Rational solution of `x^2 - d y^2 = a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormWitness {
    pub x: Rational,
    pub y: Rational,
}

pub const DEFAULT_HEIGHT_BOUND: u64 = 50;

/// Finds `x^2 - d y^2 = a` by enumerating `x = X/Z`, `y = Y/Z` (after clearing
/// the denominator of `a`) with `1 <= Z <= h`, `0 <= Y <= h`, smallest first.
pub fn solve_norm_equation(a: &Rational, d: &BigInt, height_bound: u64) -> Result<NormWitness> {
    let obstructions = norm_obstructions(a, d)?;
    if !obstructions.is_empty() {
        return Err(Error::Unsolvable(obstructions.iter().map(Place::to_string).collect()));
    }
    // (q x)^2 - d (q y)^2 = p q  for a = p/q
    let target = a.numer() * a.denom();
    let q = a.denom().clone();
    for z in 1..=height_bound {
        let z = BigInt::from(z);
        let base = &target * &z * &z;
        for y in 0..=height_bound {
            let y = BigInt::from(y);
            let x2 = &base + d * &y * &y;
            if let Some(x) = integer_sqrt_exact(&x2) {
                let den = &q * &z;
                return Ok(NormWitness { x: Rational::new(x, den.clone()), y: Rational::new(y, den) });
            }
        }
    }
    Err(Error::BoundExceeded(height_bound))
}
