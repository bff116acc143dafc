//! Galois groups of cyclotomic fields and their subfields.
//!
//! `Gal(Q(zeta_n)/Q)` is `(Z/n)^x` acting by `zeta -> zeta^k`. A subfield is
//! recorded by its stabilizer `H` together with a `Q`-basis of `H`-fixed
//! cyclotomics; subfields never get their own arithmetic.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::cyclotomic::{units, Cyclotomic};
use crate::error::{Error, Result};
use crate::rational::{divisors, euler_phi, gcd_u64, lcm_u32, squarefree_part, Rational};

/// The automorphism `zeta_n -> zeta_n^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisAutomorphism {
    conductor: u32,
    exponent: u32,
}

impl GaloisAutomorphism {
    pub fn new(conductor: u32, exponent: u32) -> Result<Self> {
        let exponent = if conductor <= 2 { 1 } else { exponent % conductor };
        if conductor == 0 || gcd_u64(exponent as u64, conductor as u64) != 1 {
            return Err(Error::NotASubgroup(conductor));
        }
        Ok(Self { conductor, exponent })
    }

    pub fn identity(conductor: u32) -> Self {
        Self { conductor, exponent: 1 }
    }

    pub fn complex_conjugation(conductor: u32) -> Self {
        Self { conductor, exponent: if conductor <= 2 { 1 } else { conductor - 1 } }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_identity(&self) -> bool {
        self.exponent == 1
    }

    /// `self` after `other`: exponents multiply.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.conductor, other.conductor);
        Self { conductor: self.conductor, exponent: mul_mod(self.exponent, other.exponent, self.conductor) }
    }

    pub fn apply(&self, x: &Cyclotomic) -> Result<Cyclotomic> {
        apply_automorphism(x, self)
    }
}

impl fmt::Display for GaloisAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{} -> z{}^{}", self.conductor, self.conductor, self.exponent)
    }
}

/// Applies `s` to `x`. `x` may live in any subfield `Q(zeta_m)` with `m | n`;
/// the result is expressed at conductor `n`.
pub fn apply_automorphism(x: &Cyclotomic, s: &GaloisAutomorphism) -> Result<Cyclotomic> {
    if s.conductor % x.conductor() != 0 {
        return Err(Error::ConductorMismatch(x.conductor(), s.conductor));
    }
    Ok(x.lift(s.conductor)?.galois(s.exponent))
}

pub(crate) fn mul_mod(a: u32, b: u32, n: u32) -> u32 {
    if n <= 2 {
        return 1;
    }
    ((a as u64 * b as u64) % n as u64) as u32
}

/// Multiplicative order of `k` modulo `n`.
pub fn unit_order(k: u32, n: u32) -> u32 {
    let mut x = k % n.max(1);
    let mut ord = 1;
    while n > 2 && x != 1 {
        x = mul_mod(x, k, n);
        ord += 1;
    }
    ord
}

/// Subgroup of `(Z/n)^x` generated by `gens`, sorted.
pub fn subgroup_closure(n: u32, gens: &[u32]) -> Vec<u32> {
    let mut set: BTreeSet<u32> = BTreeSet::new();
    set.insert(1);
    let mut frontier = vec![1u32];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = mul_mod(x, g, n);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

pub fn is_subgroup(n: u32, h: &[u32]) -> bool {
    let set: BTreeSet<u32> = h.iter().map(|&k| if n <= 2 { 1 } else { k % n }).collect();
    set.contains(&1)
        && set.iter().all(|&k| gcd_u64(k as u64, n.max(1) as u64) == 1 || n <= 2)
        && set.iter().all(|&a| set.iter().all(|&b| set.contains(&mul_mod(a, b, n))))
}

/// Every subgroup of `within` (itself a subgroup of `(Z/n)^x`), sorted by
/// decreasing order then lexicographically.
pub fn subgroups_of(n: u32, within: &[u32]) -> Vec<Vec<u32>> {
    let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
    found.insert(vec![1]);
    let mut frontier = vec![vec![1u32]];
    while let Some(h) = frontier.pop() {
        for &g in within {
            if h.contains(&g) {
                continue;
            }
            let mut gens = h.clone();
            gens.push(g);
            let k = subgroup_closure(n, &gens);
            if found.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    let mut out: Vec<Vec<u32>> = found.into_iter().collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out
}

/// Least exponent generating `h`, if `h` is cyclic.
pub fn cyclic_generator(n: u32, h: &[u32]) -> Option<u32> {
    if h.len() == 1 {
        return Some(1);
    }
    h.iter().copied().find(|&g| unit_order(g, n) as usize == h.len())
}

/// Exponents of `(Z/N)^x` reducing into `h` modulo `n`, for `n | N`.
pub fn lift_subgroup(n: u32, h: &[u32], big: u32) -> Vec<u32> {
    debug_assert_eq!(big % n, 0);
    units(big)
        .into_iter()
        .filter(|&k| {
            let r = if n <= 2 { 1 } else { k % n };
            h.contains(&r)
        })
        .collect()
}

/// A subfield of `Q(zeta_n)`: the fixed field of `stabilizer`.
#[derive(Clone)]
pub struct Subfield {
    conductor: u32,
    stabilizer: Vec<u32>,
    basis: Vec<Cyclotomic>,
}

/// Fixed field of `h`, with a `Q`-basis obtained by echelonizing the
/// `h`-orbit sums of the power basis.
pub fn fixed_subfield(n: u32, h: &[u32]) -> Result<Subfield> {
    if n == 0 || !is_subgroup(n, h) {
        return Err(Error::NotASubgroup(n));
    }
    let mut stabilizer: Vec<u32> = h.iter().map(|&k| if n <= 2 { 1 } else { k % n }).collect();
    stabilizer.sort_unstable();
    stabilizer.dedup();
    let phi = euler_phi(n) as usize;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for j in 0..phi {
        let z = Cyclotomic::zeta_pow(n, j as i64);
        let mut sum = Cyclotomic::zero(n);
        for &k in &stabilizer {
            sum = &sum + &z.galois(k);
        }
        rows.push(sum.coeffs().to_vec());
    }
    let basis = rational_row_basis(rows)
        .into_iter()
        .map(|r| Cyclotomic::from_coeffs(n, r))
        .collect::<Vec<_>>();
    debug_assert_eq!(basis.len(), phi / stabilizer.len());
    Ok(Subfield { conductor: n, stabilizer, basis })
}

/// Nonzero rows of the reduced echelon form.
fn rational_row_basis(mut rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let f = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &f;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let g = rows[r][col].clone();
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &g * y;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

impl Subfield {
    pub fn rationals(n: u32) -> Self {
        fixed_subfield(n, &units(n)).expect("full group is a subgroup")
    }

    pub fn full(n: u32) -> Self {
        fixed_subfield(n, &[1]).expect("trivial group is a subgroup")
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `Gal(Q(zeta_n)/F)` as sorted exponents.
    pub fn stabilizer(&self) -> &[u32] {
        &self.stabilizer
    }

    pub fn basis(&self) -> &[Cyclotomic] {
        &self.basis
    }

    /// Degree over `Q`.
    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    /// Whether `x` lies in this field.
    pub fn contains(&self, x: &Cyclotomic) -> bool {
        let m = lcm_u32(self.conductor, x.conductor());
        let f = self.lift(m);
        let y = x.at(m);
        f.stabilizer.iter().all(|&k| y.galois(k) == y)
    }

    /// The same field viewed inside `Q(zeta_m)` for a multiple `m` of the conductor.
    pub fn lift(&self, m: u32) -> Subfield {
        if m == self.conductor {
            return self.clone();
        }
        let h = lift_subgroup(self.conductor, &self.stabilizer, m);
        fixed_subfield(m, &h).expect("lifted stabilizer is a subgroup")
    }

    /// Least `m` with this field inside `Q(zeta_m)`.
    pub fn min_conductor(&self) -> u32 {
        let n = self.conductor;
        for m in divisors(n) {
            let kernel = units(n).into_iter().filter(|&k| m <= 2 || k % m == 1);
            if kernel.into_iter().all(|k| self.stabilizer.contains(&k)) {
                return m;
            }
        }
        n
    }

    /// Re-expresses the field at conductor `m`, lifting or pushing down.
    pub fn at_conductor(&self, m: u32) -> Result<Subfield> {
        let base = self.min_conductor();
        if m % base != 0 {
            return Err(Error::NotASubfield);
        }
        let h: Vec<u32> = {
            let mut v: Vec<u32> = self
                .stabilizer
                .iter()
                .map(|&k| if base <= 2 { 1 } else { k % base })
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        Ok(fixed_subfield(base, &h)?.lift(m))
    }

    /// Whether `self` is contained in `other`.
    pub fn is_subfield_of(&self, other: &Subfield) -> bool {
        let m = lcm_u32(self.conductor, other.conductor);
        let (a, b) = (self.lift(m), other.lift(m));
        b.stabilizer.iter().all(|k| a.stabilizer.contains(k))
    }

    /// A primitive element over `Q` (a basis element outside `Q`), if any.
    pub fn primitive_element(&self) -> Option<&Cyclotomic> {
        self.basis.iter().find(|b| !b.is_rational())
    }

    /// Squarefree `d` with this field equal to `Q(sqrt d)`.
    pub fn quadratic_discriminant(&self) -> Result<BigInt> {
        if self.degree() != 2 {
            return Err(Error::NotQuadratic(self.degree()));
        }
        let (_, square) = self.sqrt_discriminant_element();
        Ok(squarefree_part(&square))
    }

    /// Returns `(u, u^2)` where `u = 2t - Tr(t)` for the primitive element `t`.
    pub(crate) fn sqrt_discriminant_element(&self) -> (Cyclotomic, Rational) {
        let t = self.primitive_element().expect("quadratic field has a primitive element").clone();
        let n = self.conductor;
        let full = units(n);
        // the conjugate of t is its image under any automorphism outside the stabilizer
        let other = full.iter().find(|k| !self.stabilizer.contains(k)).copied().unwrap_or(1);
        let trace = &t + &t.galois(other);
        let u = &(&t + &t) - &trace;
        let sq = (&u * &u).to_rational().expect("square of (2t - Tr t) is rational");
        (u, sq)
    }

    /// An element `w` of the field with `w^2 = d`, `d` the squarefree discriminant.
    pub fn sqrt_discriminant(&self) -> Result<(BigInt, Cyclotomic)> {
        let d = self.quadratic_discriminant()?;
        let (u, sq) = self.sqrt_discriminant_element();
        let ratio = &sq / Rational::from_integer(d.clone());
        let m = crate::rational::rational_sqrt_exact(&ratio).expect("ratio is a square");
        Ok((d, u.scale(&m.recip())))
    }

    pub fn name(&self) -> String {
        match self.degree() {
            1 => return "Q".into(),
            2 => {
                let d = self.quadratic_discriminant().expect("degree two");
                return if d == BigInt::from(-1) { "Q(i)".into() } else { format!("Q(sqrt({d}))") };
            }
            _ => {}
        }
        let m = self.min_conductor();
        let low = self.at_conductor(m).expect("min conductor is valid");
        if low.stabilizer == [1] {
            format!("Q(z{m})")
        } else {
            let ks: Vec<String> = low.stabilizer.iter().map(u32::to_string).collect();
            format!("fixed:{m}:{}", ks.join(","))
        }
    }

    /// Parses `Q`, `Q(i)`, `Q(zN)`, `Q(sqrt(d))` or `fixed:N:k1,k2,...`.
    pub fn parse(spec: &str) -> Result<Subfield> {
        let s = spec.trim();
        let bad = || Error::Parse(format!("invalid subfield spec {s:?}"));
        if s == "Q" {
            return Ok(Subfield::rationals(1));
        }
        if s == "Q(i)" {
            return Ok(Subfield::full(4));
        }
        if let Some(rest) = s.strip_prefix("Q(sqrt(").and_then(|r| r.strip_suffix("))")) {
            let d: i64 = rest.trim().parse().map_err(|_| bad())?;
            return quadratic_field(d);
        }
        if let Some(rest) = s.strip_prefix("Q(z").and_then(|r| r.strip_suffix(')')) {
            let n: u32 = rest.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(Subfield::full(n));
        }
        if let Some(rest) = s.strip_prefix("fixed:") {
            let (n, ks) = rest.split_once(':').ok_or_else(bad)?;
            let n: u32 = n.parse().map_err(|_| bad())?;
            let ks = ks
                .split(',')
                .filter(|k| !k.is_empty())
                .map(|k| k.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            return fixed_subfield(n, &ks);
        }
        Err(bad())
    }
}

/// `Q(sqrt d)` for a squarefree `d != 1`, inside its minimal cyclotomic field.
pub fn quadratic_field(d: i64) -> Result<Subfield> {
    let dq = Rational::from_integer(d.into());
    if d == 0 || squarefree_part(&dq) != BigInt::from(d) || d == 1 {
        return Err(Error::Parse(format!("{d} is not a squarefree integer other than 1")));
    }
    let disc = if d.rem_euclid(4) == 1 { d.unsigned_abs() } else { 4 * d.unsigned_abs() };
    let n = disc as u32;
    let all = units(n);
    for h in subgroups_of(n, &all) {
        if h.len() * 2 != all.len() {
            continue;
        }
        let f = fixed_subfield(n, &h)?;
        if f.quadratic_discriminant()? == BigInt::from(d) {
            return Ok(f);
        }
    }
    Err(Error::NotQuadratic(0))
}

impl PartialEq for Subfield {
    fn eq(&self, other: &Self) -> bool {
        let m = lcm_u32(self.conductor, other.conductor);
        self.lift(m).stabilizer == other.lift(m).stabilizer
    }
}

impl Eq for Subfield {}

impl fmt::Debug for Subfield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subfield({} in Q(z{}), H={:?})", self.name(), self.conductor, self.stabilizer)
    }
}

impl fmt::Display for Subfield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Serialize)]
struct SubfieldDoc {
    name: String,
    conductor: u32,
    stabilizer: Vec<u32>,
    degree: usize,
}

impl Serialize for Subfield {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubfieldDoc {
            name: self.name(),
            conductor: self.conductor,
            stabilizer: self.stabilizer.clone(),
            degree: self.degree(),
        }
        .serialize(s)
    }
}

/// `N_{Q(zeta_n)/F}(x)`: the product of the images of `x` under `Gal(Q(zeta_n)/F)`.
pub fn relative_norm(x: &Cyclotomic, f: &Subfield) -> Result<Cyclotomic> {
    let m = lcm_u32(x.conductor(), f.conductor());
    let f = f.lift(m);
    let y = x.lift(m)?;
    let mut p = Cyclotomic::one(m);
    for &k in f.stabilizer() {
        p = &p * &y.galois(k);
    }
    if !f.contains(&p) {
        return Err(Error::ConductorMismatch(x.conductor(), f.conductor()));
    }
    Ok(p)
}

/// Coordinates of `x` in the `Q`-basis of a subfield, if `x` lies in it.
pub fn subfield_coordinates(x: &Cyclotomic, f: &Subfield) -> Option<Vec<Rational>> {
    let m = lcm_u32(x.conductor(), f.conductor());
    let f = f.lift(m);
    let x = x.at(m);
    // basis rows are in reduced echelon form, so coordinates sit at pivot columns
    let mut coords = Vec::with_capacity(f.degree());
    let mut rest = x.clone();
    for b in f.basis() {
        let p = b.coeffs().iter().position(|c| !c.is_zero())?;
        let c = &rest.coeffs()[p] / &b.coeffs()[p];
        rest = &rest - &b.scale(&c);
        coords.push(c);
    }
    rest.is_zero().then_some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn automorphisms_compose_by_multiplication() {
        let a = GaloisAutomorphism::new(8, 3).unwrap();
        let b = GaloisAutomorphism::new(8, 5).unwrap();
        assert_eq!(a.compose(&b).exponent(), 7);
        assert!(GaloisAutomorphism::new(8, 4).is_err());
        let x = &Cyclotomic::zeta(8) + &Cyclotomic::from_int(8, 2);
        let ab = a.compose(&b).apply(&x).unwrap();
        assert_eq!(a.apply(&b.apply(&x).unwrap()).unwrap(), ab);
        assert!(apply_automorphism(&Cyclotomic::zeta(3), &a).is_err());
    }

    #[test]
    fn fixed_subfield_examples() {
        assert_eq!(fixed_subfield(4, &[1, 3]).unwrap().degree(), 1);
        assert_eq!(fixed_subfield(4, &[1]).unwrap().degree(), 2);
        let f = fixed_subfield(8, &[1, 7]).unwrap();
        assert_eq!(f.degree(), 2);
        let t = f.primitive_element().unwrap();
        let z = Cyclotomic::zeta(8);
        // the basis element is a rational multiple of z + z^-1, which squares to 2
        let w = &z + &z.galois(7);
        let ratio = t.checked_div(&w).unwrap();
        assert!(ratio.is_rational());
        assert_eq!(&w * &w, Cyclotomic::from_int(8, 2));
        assert!(matches!(fixed_subfield(8, &[1, 3, 5]), Err(Error::NotASubgroup(8))));
    }

    #[test]
    fn discriminants() {
        assert_eq!(Subfield::full(4).quadratic_discriminant().unwrap(), BigInt::from(-1));
        assert_eq!(fixed_subfield(8, &[1, 7]).unwrap().quadratic_discriminant().unwrap(), BigInt::from(2));
        assert_eq!(fixed_subfield(8, &[1, 3]).unwrap().quadratic_discriminant().unwrap(), BigInt::from(-2));
        assert_eq!(Subfield::full(3).quadratic_discriminant().unwrap(), BigInt::from(-3));
        assert_eq!(Subfield::full(8).quadratic_discriminant(), Err(Error::NotQuadratic(4)));
    }

    #[test]
    fn relative_norm_examples() {
        let one_i = &Cyclotomic::one(4) + &Cyclotomic::zeta(4);
        assert_eq!(relative_norm(&one_i, &Subfield::rationals(4)).unwrap(), Cyclotomic::from_int(4, 2));
        assert!(relative_norm(&Cyclotomic::one(5), &Subfield::rationals(5)).unwrap().is_one());
        assert!(relative_norm(&Cyclotomic::zeta(3), &Subfield::rationals(3)).unwrap().is_one());
        // norm from Q(zeta_8) to Q(i) of zeta_8 is zeta_8 * zeta_8^5 = -i... lands in Q(i)
        let qi = fixed_subfield(8, &[1, 5]).unwrap();
        let nz = relative_norm(&Cyclotomic::zeta(8), &qi).unwrap();
        assert!(qi.contains(&nz));
        assert_eq!(nz, -Cyclotomic::zeta(4));
    }

    #[test]
    fn names_and_parsing_round_trip() {
        for spec in ["Q", "Q(i)", "Q(z3)", "Q(z8)", "Q(sqrt(-2))", "Q(sqrt(2))", "Q(sqrt(5))", "fixed:24:1,5,7,11"] {
            let f = Subfield::parse(spec).unwrap();
            let g = Subfield::parse(&f.name()).unwrap();
            assert_eq!(f, g, "{spec}");
        }
        assert_eq!(Subfield::parse("Q(sqrt(-1))").unwrap().name(), "Q(i)");
        assert_eq!(Subfield::parse("fixed:8:1,3").unwrap().name(), "Q(sqrt(-2))");
        assert_eq!(Subfield::parse("fixed:12:1").unwrap().name(), "Q(z12)");
        assert!(Subfield::parse("Q(j)").is_err());
    }

    #[test]
    fn lifting_and_pushing_down() {
        let qi = Subfield::full(4);
        let up = qi.lift(8);
        assert_eq!(up.stabilizer(), &[1, 5]);
        assert_eq!(up.min_conductor(), 4);
        assert_eq!(up.at_conductor(4).unwrap().stabilizer(), &[1]);
        assert!(Subfield::rationals(1).is_subfield_of(&qi));
        assert!(!qi.is_subfield_of(&Subfield::full(3)));
        assert_eq!(Subfield::rationals(12).min_conductor(), 1);
    }

    #[test]
    fn subgroup_enumeration() {
        let all = units(8);
        assert_eq!(subgroups_of(8, &all).len(), 5);
        assert_eq!(cyclic_generator(8, &all), None);
        assert_eq!(cyclic_generator(5, &units(5)), Some(2));
        assert_eq!(subfield_coordinates(&Cyclotomic::from_rational(4, rat(3)), &Subfield::rationals(4)), Some(vec![rat(3)]));
    }
}
