//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! An element is stored as its coefficient vector in the power basis
//! `1, z, ..., z^(phi(n)-1)` after reduction modulo the n-th cyclotomic
//! polynomial, so two elements of the same conductor are equal iff their
//! coefficient vectors are equal. Elements of different conductors are
//! compared and combined after lifting both to the least common multiple.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{divisors, euler_phi, format_rational, lcm_u32, parse_rational, Rational};

/// Reduction data for one conductor: `powers[k]` is `z^k` in the power basis.
struct Table {
    phi: usize,
    powers: Vec<Vec<i64>>,
}

static TABLES: LazyLock<RwLock<HashMap<u32, Arc<Table>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Coordinates of `Q(zeta_m)` inside `Q(zeta_n)`: rows picked by `positions`
/// form an invertible block whose inverse is `inverse`.
struct DownMap {
    positions: Vec<usize>,
    inverse: Vec<Vec<Rational>>,
}

static DOWN_MAPS: LazyLock<RwLock<HashMap<(u32, u32), Arc<DownMap>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by every Phi_d for proper divisors d of n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn table(n: u32) -> Arc<Table> {
    if let Some(t) = TABLES.read().unwrap().get(&n) {
        return Arc::clone(t);
    }
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by z and reduce
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * poly[i];
            }
        }
    }
    let t = Arc::new(Table { phi, powers });
    TABLES.write().unwrap().insert(n, Arc::clone(&t));
    t
}

/// Units of `Z/n`, i.e. the exponents of `Gal(Q(zeta_n)/Q)`. For `n <= 2`
/// the group is trivial and represented by the single exponent 1.
pub fn units(n: u32) -> Vec<u32> {
    if n <= 2 {
        return vec![1];
    }
    (1..n).filter(|&k| crate::rational::gcd_u64(k as u64, n as u64) == 1).collect()
}

/// An exact element of `Q(zeta_n)`.
#[derive(Clone)]
pub struct Cyclotomic {
    n: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        assert!(n >= 1, "conductor must be positive");
        Self { n, coeffs: vec![Rational::zero(); euler_phi(n) as usize] }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, Rational::one())
    }

    pub fn from_rational(n: u32, q: Rational) -> Self {
        let mut x = Self::zero(n);
        x.coeffs[0] = q;
        x
    }

    pub fn from_int(n: u32, k: i64) -> Self {
        Self::from_rational(n, Rational::from_integer(BigInt::from(k)))
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let t = table(n);
        let e = k.rem_euclid(n as i64) as usize;
        Self {
            n,
            coeffs: t.powers[e].iter().map(|&c| Rational::from_integer(c.into())).collect(),
        }
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// Builds from power-basis coefficients, reducing if more than `phi(n)` are given.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Self {
        let t = table(n);
        if coeffs.len() == t.phi {
            return Self { n, coeffs };
        }
        let mut acc = vec![Rational::zero(); n as usize];
        for (k, c) in coeffs.into_iter().enumerate() {
            acc[k % n as usize] += c;
        }
        Self::from_exponent_sums(n, &t, acc)
    }

    fn from_exponent_sums(n: u32, t: &Table, acc: Vec<Rational>) -> Self {
        let mut coeffs = vec![Rational::zero(); t.phi];
        for (k, c) in acc.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < t.phi {
                coeffs[k] += c;
            } else {
                for (i, &p) in t.powers[k].iter().enumerate() {
                    if p != 0 {
                        coeffs[i] += &c * Rational::from_integer(p.into());
                    }
                }
            }
        }
        Self { n, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Re-expresses the element in `Q(zeta_m)` for a multiple `m` of the conductor.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m % self.n != 0 {
            return Err(Error::ConductorMismatch(self.n, m));
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let t = table(m);
        let step = (m / self.n) as usize;
        let mut acc = vec![Rational::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            acc[(j * step) % m as usize] += c;
        }
        Ok(Self::from_exponent_sums(m, &t, acc))
    }

    /// Lifts to the given conductor, panicking if it is not a multiple.
    pub(crate) fn at(&self, m: u32) -> Self {
        self.lift(m).expect("conductor must divide the target")
    }

    /// Rewrites the element over `Q(zeta_m)` for a divisor `m` of the conductor,
    /// if it lies in that subfield.
    pub fn descend(&self, m: u32) -> Option<Self> {
        if self.n % m != 0 {
            return None;
        }
        if m == self.n {
            return Some(self.clone());
        }
        let dm = down_map(m, self.n);
        let coeffs: Vec<Rational> = dm
            .inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&dm.positions)
                    .fold(Rational::zero(), |acc, (r, &p)| acc + r * &self.coeffs[p])
            })
            .collect();
        let y = Self { n: m, coeffs };
        (y.at(self.n).coeffs == self.coeffs).then_some(y)
    }

    /// The least conductor `m` with this element in `Q(zeta_m)`.
    pub fn min_conductor(&self) -> u32 {
        min_conductor_of(std::slice::from_ref(self))
    }

    /// Image under `zeta_n -> zeta_n^k`.
    pub fn galois(&self, k: u32) -> Self {
        if self.n <= 2 || k % self.n == 1 {
            return self.clone();
        }
        let t = table(self.n);
        let mut acc = vec![Rational::zero(); self.n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc[(j * k as usize) % self.n as usize] += c;
            }
        }
        Self::from_exponent_sums(self.n, &t, acc)
    }

    pub fn conj(&self) -> Self {
        self.galois(self.n.saturating_sub(1).max(1))
    }

    fn same_conductor(&self, other: &Self) -> (Self, Self) {
        if self.n == other.n {
            (self.clone(), other.clone())
        } else {
            let m = lcm_u32(self.n, other.n);
            (self.at(m), other.at(m))
        }
    }

    fn mul_same(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        if self.n <= 2 {
            return Self { n: self.n, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        if other.is_rational() {
            return self.scale(&other.coeffs[0]);
        }
        if self.is_rational() {
            return other.scale(&self.coeffs[0]);
        }
        let t = table(self.n);
        let n = self.n as usize;
        let mut acc = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc[(i + j) % n] += a * b;
                }
            }
        }
        Self::from_exponent_sums(self.n, &t, acc)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Norm down to `Q`: the product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        let mut p = self.clone();
        for k in units(self.n).into_iter().skip(1) {
            p = p.mul_same(&self.galois(k));
        }
        p.to_rational().expect("norm of a cyclotomic is rational")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational(self.n, self.coeffs[0].recip()));
        }
        let mut others = Self::one(self.n);
        for k in units(self.n).into_iter().skip(1) {
            others = others.mul_same(&self.galois(k));
        }
        let norm = others.mul_same(self).to_rational().expect("norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.n);
        for _ in 0..e {
            r = r.mul_same(self);
        }
        r
    }

    /// Sign of a real element under `zeta_n -> exp(2 pi i / n)`.
    ///
    /// The value is enclosed in a rational interval built from certified bounds
    /// on pi and Taylor remainders; no floating point is involved.
    pub fn real_sign(&self) -> Result<i8> {
        if self.conj() != *self {
            return Err(Error::NotRealEmbeddable(format!("{self} is not real")));
        }
        if self.is_zero() {
            return Err(Error::NotRealEmbeddable("zero has no sign".into()));
        }
        if let Some(q) = self.to_rational() {
            return Ok(if q.is_positive() { 1 } else { -1 });
        }
        let (center, radius) = real_part_enclosure(self);
        if center.abs() > radius {
            Ok(if center.is_positive() { 1 } else { -1 })
        } else {
            Err(Error::NotRealEmbeddable("value too close to zero to certify".into()))
        }
    }
}

fn down_map(m: u32, n: u32) -> Arc<DownMap> {
    if let Some(d) = DOWN_MAPS.read().unwrap().get(&(m, n)) {
        return Arc::clone(d);
    }
    let phi_m = euler_phi(m) as usize;
    // columns: lifted basis z_m^i, rows: coordinates over Q(zeta_n)
    let cols: Vec<Vec<Rational>> =
        (0..phi_m).map(|i| Cyclotomic::zeta_pow(m, i as i64).at(n).coeffs).collect();
    let rows = cols[0].len();
    // greedily pick rows that keep the selected block nonsingular
    let mut positions = Vec::new();
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for r in 0..rows {
        let mut v: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
        for e in &echelon {
            let p = e.iter().position(|x| !x.is_zero()).unwrap();
            if !v[p].is_zero() {
                let f = &v[p] / &e[p];
                for (vi, ei) in v.iter_mut().zip(e) {
                    *vi -= &f * ei;
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            echelon.push(v);
            positions.push(r);
            if positions.len() == phi_m {
                break;
            }
        }
    }
    let block: Vec<Vec<Rational>> =
        positions.iter().map(|&r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let inverse = invert_rational(block);
    let d = Arc::new(DownMap { positions, inverse });
    DOWN_MAPS.write().unwrap().insert((m, n), Arc::clone(&d));
    d
}

fn invert_rational(mut a: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let k = a.len();
    let mut inv: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for c in 0..k {
        let p = (c..k).find(|&r| !a[r][c].is_zero()).expect("block is invertible");
        a.swap(c, p);
        inv.swap(c, p);
        let f = a[c][c].recip();
        for j in 0..k {
            a[c][j] *= &f;
            inv[c][j] *= &f;
        }
        for r in 0..k {
            if r != c && !a[r][c].is_zero() {
                let g = a[r][c].clone();
                for j in 0..k {
                    let (x, y) = (&a[c][j] * &g, &inv[c][j] * &g);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    inv
}

/// Least conductor containing every element of the slice (all of one conductor).
pub fn min_conductor_of(xs: &[Cyclotomic]) -> u32 {
    let Some(first) = xs.first() else { return 1 };
    let n = first.n;
    for m in divisors(n) {
        if xs.iter().all(|x| x.descend(m).is_some()) {
            return m;
        }
    }
    n
}

// Decimal expansion of pi; the enclosure below is exact rational arithmetic.
const PI_DIGITS: &str = "314159265358979323846264338327950288419716939937510";

const FIXED_BITS: u32 = 256;
// Accumulated truncation error of the fixed-point Taylor loop is far below 2^-200.
const FIXED_SLACK_BITS: u32 = 200;

fn real_part_enclosure(x: &Cyclotomic) -> (Rational, Rational) {
    let scale = BigInt::from(10).pow(PI_DIGITS.len() as u32 - 1);
    let pi_lo = Rational::new(PI_DIGITS.parse::<BigInt>().unwrap(), scale.clone());
    let pi_width = Rational::new(BigInt::one(), scale);
    let one = BigInt::one() << FIXED_BITS;
    let slack = Rational::new(BigInt::one(), BigInt::one() << FIXED_SLACK_BITS);
    let n = x.n as i64;
    let mut center = Rational::zero();
    let mut radius = Rational::zero();
    for (j, c) in x.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let factor = Rational::new(BigInt::from(2 * (j as i64 % n)), BigInt::from(n));
        let theta = &pi_lo * &factor;
        let width = &pi_width * &factor;
        let theta_fixed = (&theta * Rational::from_integer(one.clone())).floor().to_integer();
        let (cos, tail) = cos_taylor_fixed(&theta_fixed);
        center += c * Rational::new(cos, one.clone());
        radius += c.abs() * (width + &slack + tail);
    }
    (center, radius)
}

/// Fixed-point Taylor sum of cos (argument scaled by `2^FIXED_BITS`, |theta| <= 2 pi)
/// and a bound on the omitted tail.
fn cos_taylor_fixed(theta: &BigInt) -> (BigInt, Rational) {
    let terms = 60u64;
    let t2 = (theta * theta) >> FIXED_BITS;
    let mut sum = BigInt::zero();
    let mut term = BigInt::one() << FIXED_BITS;
    for k in 0..terms {
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        term = ((&term * &t2) >> FIXED_BITS) / BigInt::from((2 * k + 1) * (2 * k + 2));
    }
    // remaining terms alternate and decrease, bounded by the next one plus slack
    let tail = Rational::new(term.abs() + 1u32, BigInt::one() << FIXED_BITS);
    (sum, tail)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.same_conductor(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, other: &Cyclotomic) -> Cyclotomic {
        if self.n == other.n {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return Cyclotomic { n: self.n, coeffs };
        }
        let (a, b) = self.same_conductor(other);
        &a + &b
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, other: &Cyclotomic) -> Cyclotomic {
        if self.n == other.n {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
            return Cyclotomic { n: self.n, coeffs };
        }
        let (a, b) = self.same_conductor(other);
        &a - &b
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, other: &Cyclotomic) -> Cyclotomic {
        if self.n == other.n {
            return self.mul_same(other);
        }
        let (a, b) = self.same_conductor(other);
        a.mul_same(&b)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, other: Cyclotomic) -> Cyclotomic {
                (&self).$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Binary field operations, as exposed on the command line and in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn cyc_arith(a: &Cyclotomic, b: &Cyclotomic, op: ArithOp) -> Result<Cyclotomic> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mon = match j {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{}", self.n, j),
            };
            let term = if mon.is_empty() {
                format_rational(c)
            } else if c.is_one() {
                mon
            } else if *c == -Rational::one() {
                format!("-{mon}")
            } else {
                format!("{}*{mon}", format_rational(c))
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {t}")),
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({}; {})", self.n, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycDoc {
    n: u32,
    c: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycDoc { n: self.n, c: self.coeffs.iter().map(format_rational).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = CycDoc::deserialize(d)?;
        if doc.n == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let coeffs = doc
            .c
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        if coeffs.len() > euler_phi(doc.n) as usize && coeffs.len() > doc.n as usize {
            return Err(D::Error::custom("too many coefficients"));
        }
        if coeffs.is_empty() {
            return Ok(Cyclotomic::zero(doc.n));
        }
        Ok(Cyclotomic::from_coeffs(doc.n, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn z(n: u32) -> Cyclotomic {
        Cyclotomic::zeta(n)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn spec_arithmetic_examples() {
        assert_eq!(&z(4) * &z(4), Cyclotomic::from_int(4, -1));
        assert_eq!(&z(3) + &z(3).pow(2), Cyclotomic::from_int(3, -1));
        let x = &Cyclotomic::one(8) + &z(8);
        assert!(cyc_arith(&x, &x, ArithOp::Div).unwrap().is_one());
        assert_eq!(
            cyc_arith(&x, &Cyclotomic::zero(8), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(z(4).galois(3), -z(4));
        assert_eq!(z(3).galois(2), &Cyclotomic::from_int(3, -1) - &z(3));
        let q = Cyclotomic::from_rational(7, frac(5, 2));
        for k in units(7) {
            assert_eq!(q.galois(k), q);
        }
    }

    #[test]
    fn mixed_conductors_lift_to_lcm() {
        // i + zeta_3 lives in Q(zeta_12)
        let s = &z(4) + &z(3);
        assert_eq!(s.conductor(), 12);
        assert_eq!(s.min_conductor(), 12);
        assert_eq!(z(12).pow(3), z(4));
        assert_eq!(z(12).pow(4), z(3));
        // conductor 6 and 3 describe the same field
        assert_eq!(z(6), -z(3).pow(2));
        assert_eq!(z(6).min_conductor(), 3);
    }

    #[test]
    fn descend_and_min_conductor() {
        let i8 = z(8).pow(2);
        assert_eq!(i8.min_conductor(), 4);
        assert_eq!(i8.descend(4).unwrap(), z(4));
        assert!(z(8).descend(4).is_none());
        let sqrt2 = &z(8) + &z(8).pow(7);
        assert_eq!(&sqrt2 * &sqrt2, Cyclotomic::from_int(8, 2));
        assert_eq!(Cyclotomic::from_rational(12, rat(3)).min_conductor(), 1);
    }

    #[test]
    fn inverse_and_norm() {
        let x = &Cyclotomic::from_int(4, 1) + &z(4);
        assert_eq!(x.norm(), rat(2));
        assert!((&x * &x.inv().unwrap()).is_one());
        let y = &(&z(12) * &Cyclotomic::from_int(12, 3)) - &Cyclotomic::from_int(12, 1);
        assert!((&y * &y.inv().unwrap()).is_one());
    }

    #[test]
    fn real_signs() {
        let sqrt2 = &z(8) + &z(8).pow(7);
        assert_eq!(sqrt2.real_sign().unwrap(), 1);
        assert_eq!((-&sqrt2).real_sign().unwrap(), -1);
        // sqrt(3) - 2 < 0 with sqrt(3) = z12 + z12^11
        let sqrt3 = &z(12) + &z(12).pow(11);
        assert_eq!(&sqrt3 * &sqrt3, Cyclotomic::from_int(12, 3));
        assert_eq!((&sqrt3 - &Cyclotomic::from_int(12, 2)).real_sign().unwrap(), -1);
        assert!(z(4).real_sign().is_err());
    }

    #[test]
    fn serde_round_trip() {
        let x = &Cyclotomic::from_rational(8, frac(1, 2)) - &z(8).pow(3);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"n":8,"c":["1/2","0","0","-1"]}"#);
        let y: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
