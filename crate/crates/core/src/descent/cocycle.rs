use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::galois::{cyclic_generator, fixed_subfield, is_subgroup, mul_mod, Subfield};
use crate::hilbert::{local_invariants, solve_norm_equation, LocalInvariants};
use crate::matrix::Matrix;
use crate::rational::{euler_phi, Rational};
use crate::rep::Representation;

/// Order in which the chooser tries unit matrices `E_ab`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChooserOrder {
    #[default]
    Lexicographic,
    Reversed,
}

impl ChooserOrder {
    pub fn positions(self, rows: usize, cols: usize) -> Vec<(usize, usize)> {
        let mut p = Representation::lexicographic_order(rows, cols);
        if self == ChooserOrder::Reversed {
            p.reverse();
        }
        p
    }
}

fn normalize_group(n: u32, gamma: &[u32]) -> Result<Vec<u32>> {
    if !is_subgroup(n, gamma) {
        return Err(Error::NotASubgroup(n));
    }
    let mut g: Vec<u32> = gamma.iter().map(|&k| if n <= 2 { 1 } else { k % n }).collect();
    g.sort_unstable();
    g.dedup();
    Ok(g)
}

fn position(gamma: &[u32], k: u32) -> usize {
    gamma.binary_search(&k).expect("exponent lies in the acting group")
}

/// Isomorphisms `phi_s : s rho -> rho` for `s` in an acting group, with `phi_1 = I`.
#[derive(Debug, Clone)]
pub struct DescentMaps {
    conductor: u32,
    gamma: Vec<u32>,
    maps: Vec<Matrix>,
}

impl DescentMaps {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn gamma(&self) -> &[u32] {
        &self.gamma
    }

    pub fn map(&self, s: u32) -> Option<&Matrix> {
        self.gamma.binary_search(&s).ok().map(|i| &self.maps[i])
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Rescales `phi_s` by `c_s^{-1}`.
    pub fn rescaled(&self, cochain: &[Cyclotomic]) -> Result<Self> {
        let maps = self
            .maps
            .iter()
            .zip(cochain)
            .map(|(m, c)| Ok(m.scale(&c.inv()?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { conductor: self.conductor, gamma: self.gamma.clone(), maps })
    }
}

/// `phi_s` is the first nonzero averaged intertwiner `s rho -> rho` in the chooser order.
pub fn choose_descent_maps(rho: &Representation, gamma: &[u32], order: ChooserOrder) -> Result<DescentMaps> {
    let n = rho.conductor();
    let gamma = normalize_group(n, gamma)?;
    let d = rho.dim();
    let positions = order.positions(d, d);
    let mut maps = Vec::with_capacity(gamma.len());
    for &s in &gamma {
        if s == 1 {
            maps.push(Matrix::identity(d, n));
            continue;
        }
        let phi = rho.twist(s).averaged_intertwiner(rho, &positions)?.ok_or(Error::NoIntertwiner(s))?;
        if phi.rank() != d {
            return Err(Error::NoIntertwiner(s));
        }
        maps.push(phi.at(n));
    }
    Ok(DescentMaps { conductor: n, gamma, maps })
}

/// A 2-cocycle of an acting group `Gamma <= (Z/n)^x` with values in `Q(zeta_n)^x`.
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleClass {
    conductor: u32,
    gamma: Vec<u32>,
    table: Vec<Vec<Cyclotomic>>,
}

/// Norm class `a` of a quadratic cocycle over `Q` and the invariants `(d, a)_v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticClass {
    #[serde(with = "crate::rational::serde_rational")]
    pub a: Rational,
    #[serde(serialize_with = "serialize_bigint")]
    pub d: BigInt,
    pub invariants: LocalInvariants,
}

fn serialize_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl QuadraticClass {
    pub fn is_trivial(&self) -> bool {
        self.invariants.is_trivial()
    }
}

impl CocycleClass {
    /// Validates shape, nonvanishing values and the cocycle identity.
    pub fn new(conductor: u32, gamma: &[u32], table: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let gamma = normalize_group(conductor, gamma)?;
        let k = gamma.len();
        if table.len() != k || table.iter().any(|r| r.len() != k) {
            return Err(Error::ShapeMismatch(format!("cocycle table must be {k}x{k}")));
        }
        if table.iter().flatten().any(Cyclotomic::is_zero) {
            return Err(Error::DivisionByZero);
        }
        let table = table.into_iter().map(|r| r.into_iter().map(|x| x.at(conductor)).collect()).collect();
        let c = Self { conductor, gamma, table };
        c.verify_identity()?;
        Ok(c)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn gamma(&self) -> &[u32] {
        &self.gamma
    }

    pub fn table(&self) -> &[Vec<Cyclotomic>] {
        &self.table
    }

    pub fn value(&self, s: u32, t: u32) -> &Cyclotomic {
        &self.table[position(&self.gamma, s)][position(&self.gamma, t)]
    }

    fn compose(&self, s: u32, t: u32) -> u32 {
        mul_mod(s, t, self.conductor)
    }

    /// Fixed field of the acting group.
    pub fn base_field(&self) -> Subfield {
        fixed_subfield(self.conductor, &self.gamma).expect("acting group is a subgroup")
    }

    pub fn is_normalized(&self) -> bool {
        self.gamma.iter().all(|&s| self.value(1, s).is_one() && self.value(s, 1).is_one())
    }

    pub fn is_identically_one(&self) -> bool {
        self.table.iter().flatten().all(Cyclotomic::is_one)
    }

    /// `s(b(t,r)) b(s,tr) = b(s,t) b(st,r)` for every triple.
    pub fn verify_identity(&self) -> Result<()> {
        for &s in &self.gamma {
            for &t in &self.gamma {
                for &r in &self.gamma {
                    let lhs = &self.value(t, r).galois(s) * self.value(s, self.compose(t, r));
                    let rhs = self.value(s, t) * self.value(self.compose(s, t), r);
                    if lhs != rhs {
                        return Err(Error::CocycleIdentity(s, t, r));
                    }
                }
            }
        }
        Ok(())
    }

    /// `b * delta(c)`, with `c` aligned to the acting group.
    pub fn times_coboundary(&self, cochain: &[Cyclotomic]) -> Result<Self> {
        let delta = coboundary(self.conductor, &self.gamma, cochain)?;
        let table = self
            .table
            .iter()
            .zip(&delta)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x * y).collect())
            .collect();
        CocycleClass::new(self.conductor, &self.gamma, table)
    }

    /// Whether `Q(zeta_n)` is quadratic over `Q` and `Gamma` is its full Galois group.
    pub fn is_quadratic_over_rationals(&self) -> bool {
        self.gamma.len() == 2 && euler_phi(self.conductor) == 2
    }

    pub fn quadratic_class(&self) -> Result<QuadraticClass> {
        if !self.is_quadratic_over_rationals() {
            return Err(Error::NotQuadratic(euler_phi(self.conductor) as usize / self.gamma.len().max(1)));
        }
        let s = self.gamma[1];
        let a = self
            .value(s, s)
            .to_rational()
            .ok_or_else(|| Error::LiftFailure("quadratic norm class is not rational".into()))?;
        let d = Subfield::full(self.conductor).quadratic_discriminant()?;
        let invariants = local_invariants(&Rational::from_integer(d.clone()), &a)?;
        Ok(QuadraticClass { a, d, invariants })
    }
}

#[derive(Serialize)]
struct CocycleDoc<'a> {
    conductor: u32,
    gamma: &'a [u32],
    base_field: String,
    normalized: bool,
    table: &'a [Vec<Cyclotomic>],
    norm_class: Option<Cyclotomic>,
    invariants: Option<LocalInvariants>,
}

impl Serialize for CocycleClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CocycleDoc {
            conductor: self.conductor,
            gamma: &self.gamma,
            base_field: self.base_field().name(),
            normalized: self.is_normalized(),
            table: &self.table,
            norm_class: cocycle_norm_class(self).ok(),
            invariants: self.quadratic_class().ok().map(|q| q.invariants),
        }
        .serialize(s)
    }
}

/// `b(s,t) I = phi_s s(phi_t) phi_st^{-1}`, each defect checked to be scalar.
pub fn borel_tits_cocycle(rho: &Representation, maps: &DescentMaps) -> Result<CocycleClass> {
    let n = maps.conductor;
    if rho.conductor() != n {
        return Err(Error::ConductorMismatch(rho.conductor(), n));
    }
    let inverses = maps.maps.iter().map(Matrix::invert).collect::<Result<Vec<_>>>()?;
    let mut table = Vec::with_capacity(maps.gamma.len());
    for (i, &s) in maps.gamma.iter().enumerate() {
        let mut row = Vec::with_capacity(maps.gamma.len());
        for (j, &t) in maps.gamma.iter().enumerate() {
            let st = position(&maps.gamma, mul_mod(s, t, n));
            let defect = &(&maps.maps[i] * &maps.maps[j].galois(s)) * &inverses[st];
            row.push(defect.scalar_value().ok_or(Error::NonScalarDefect(s, t))?);
        }
        table.push(row);
    }
    CocycleClass::new(n, &maps.gamma, table)
}

/// `delta(c)(s,t) = c_s s(c_t) c_st^{-1}`.
pub fn coboundary(n: u32, gamma: &[u32], cochain: &[Cyclotomic]) -> Result<Vec<Vec<Cyclotomic>>> {
    let gamma = normalize_group(n, gamma)?;
    if cochain.len() != gamma.len() {
        return Err(Error::ShapeMismatch(format!("cochain has {} values for {} elements", cochain.len(), gamma.len())));
    }
    let inverses = cochain.iter().map(Cyclotomic::inv).collect::<Result<Vec<_>>>()?;
    Ok(gamma
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            gamma
                .iter()
                .enumerate()
                .map(|(j, &t)| {
                    let st = position(&gamma, mul_mod(s, t, n));
                    (&(&cochain[i] * &cochain[j].galois(s)) * &inverses[st]).at(n)
                })
                .collect()
        })
        .collect())
}

/// `a = prod_{i<m} b(s^i, s)` for the least generator `s` of a cyclic acting group;
/// coboundaries change `a` by the norm `N(c_s)`.
pub fn cocycle_norm_class(c: &CocycleClass) -> Result<Cyclotomic> {
    let n = c.conductor;
    let s = cyclic_generator(n, &c.gamma).ok_or(Error::NotCyclic)?;
    let mut a = Cyclotomic::one(n);
    let mut power = 1;
    for _ in 0..c.gamma.len() {
        a = &a * c.value(power, s);
        power = mul_mod(power, s, n);
    }
    if !c.gamma.iter().all(|&k| a.galois(k) == a) {
        return Err(Error::LiftFailure("norm class is not fixed by the acting group".into()));
    }
    Ok(a)
}

/// Scalars `l_s` with `phi'_s = l_s phi_s`; the cocycles then differ by `delta(l)`.
pub fn relating_cochain(from: &DescentMaps, to: &DescentMaps) -> Result<Vec<Cyclotomic>> {
    if from.gamma != to.gamma || from.conductor != to.conductor {
        return Err(Error::ShapeMismatch("descent maps over different acting groups".into()));
    }
    from.maps
        .iter()
        .zip(&to.maps)
        .zip(&from.gamma)
        .map(|((a, b), &s)| (b * &a.invert()?).scalar_value().ok_or(Error::NonScalarDefect(s, s)))
        .collect()
}

/// `c_s = x + y sqrt(d)` from a solution of `x^2 - d y^2 = b(s,s)`.
pub fn split_cocycle_quadratic(c: &CocycleClass, height_bound: u64) -> Result<Vec<Cyclotomic>> {
    let class = c.quadratic_class()?;
    let witness = solve_norm_equation(&class.a, &class.d, height_bound)?;
    let (_, w) = Subfield::full(c.conductor).sqrt_discriminant()?;
    let n = c.conductor;
    let cs = &Cyclotomic::from_rational(n, witness.x) + &w.scale(&witness.y);
    let cochain = vec![Cyclotomic::one(n), cs.at(n)];
    check_split(c, &cochain)?;
    Ok(cochain)
}

fn check_split(c: &CocycleClass, cochain: &[Cyclotomic]) -> Result<()> {
    if coboundary(c.conductor, &c.gamma, cochain)? == c.table {
        Ok(())
    } else {
        Err(Error::CocycleNotSplit)
    }
}

/// Extends `c_s` with `N(c_s) = a` to a full splitting cochain by
/// `c_{s^{i+1}} = c_{s^i} s^i(c_s) / b(s^i, s)`.
pub fn split_cocycle_cyclic(c: &CocycleClass, c_generator: &Cyclotomic) -> Result<Vec<Cyclotomic>> {
    let n = c.conductor;
    let s = cyclic_generator(n, &c.gamma).ok_or(Error::NotCyclic)?;
    let mut cochain = vec![Cyclotomic::zero(n); c.gamma.len()];
    let mut power = 1;
    let mut current = Cyclotomic::one(n);
    for _ in 0..c.gamma.len() {
        cochain[position(&c.gamma, power)] = current.clone();
        current = (&current * &c_generator.galois(power)).checked_div(c.value(power, s))?.at(n);
        power = mul_mod(power, s, n);
    }
    if !current.is_one() {
        return Err(Error::CocycleNotSplit);
    }
    check_split(c, &cochain)?;
    Ok(cochain)
}

/// Coefficient radius for the bounded search in `Q(zeta_n)`.
fn search_radius(phi: u32, height_bound: u64) -> i64 {
    let mut r: i64 = 0;
    while (r as u64) < height_bound && (2 * (r + 1) + 1).checked_pow(phi).is_some_and(|c| c <= 20_000) {
        r += 1;
    }
    r.max(1)
}

fn exact_root(q: &Rational, m: u32) -> Option<Rational> {
    if q.is_zero() {
        return None;
    }
    if q.is_negative() && m % 2 == 0 {
        return None;
    }
    let root = |x: &BigInt| -> Option<BigInt> {
        let r = x.abs().nth_root(m);
        (r.pow(m) == x.abs()).then_some(r)
    };
    let (num, den) = (root(q.numer())?, root(q.denom())?);
    let r = Rational::new(num, den);
    Some(if q.is_negative() { -r } else { r })
}

/// Bounded search for `c` in `Q(zeta_n)` with `prod_{k in Gamma} k(c) = a`: integral
/// power-basis vectors `v` by increasing max-norm, rescaled by a rational `t`
/// when `N(v)/a = t^|Gamma|`.
pub fn search_norm_preimage(a: &Cyclotomic, n: u32, gamma: &[u32], height_bound: u64) -> Option<Cyclotomic> {
    if a.is_one() {
        return Some(Cyclotomic::one(n));
    }
    let gamma = normalize_group(n, gamma).ok()?;
    let phi = euler_phi(n);
    let m = gamma.len() as u32;
    let radius = search_radius(phi, height_bound);
    let ainv = a.inv().ok()?;
    for r in 1..=radius {
        let mut v = vec![-r; phi as usize];
        loop {
            if v.iter().any(|x| x.abs() == r) {
                let x = Cyclotomic::from_coeffs(n, v.iter().map(|&k| Rational::from_integer(k.into())).collect());
                let norm = gamma.iter().fold(Cyclotomic::one(n), |acc, &k| &acc * &x.galois(k));
                if let Some(t) = (&norm * &ainv).to_rational().and_then(|q| exact_root(&q, m)) {
                    return Some(x.scale(&t.recip()));
                }
            }
            let Some(i) = v.iter().position(|&x| x < r) else { break };
            v[i] += 1;
            for x in v.iter_mut().take(i) {
                *x = -r;
            }
        }
    }
    None
}

/// A cochain `c` with `b = delta(c)`: trivial tables directly, quadratic classes over
/// `Q` through the norm equation, other cyclic classes through bounded search.
pub fn split_cocycle(c: &CocycleClass, height_bound: u64) -> Result<Vec<Cyclotomic>> {
    let n = c.conductor;
    if c.is_identically_one() {
        return Ok(vec![Cyclotomic::one(n); c.gamma.len()]);
    }
    if c.is_quadratic_over_rationals() {
        return split_cocycle_quadratic(c, height_bound);
    }
    let a = cocycle_norm_class(c)?;
    let cs = search_norm_preimage(&a, n, &c.gamma, height_bound).ok_or(Error::BoundExceeded(height_bound))?;
    split_cocycle_cyclic(c, &cs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::rat;

    fn conj_maps(rho: &Representation) -> DescentMaps {
        choose_descent_maps(rho, &[1, rho.conductor() - 1], ChooserOrder::Lexicographic).unwrap()
    }

    #[test]
    fn trivial_group_gives_trivial_table() {
        let rho = catalog::q8_2dim().unwrap();
        let maps = choose_descent_maps(&rho, &[1], ChooserOrder::Lexicographic).unwrap();
        assert!(maps.map(1).unwrap().is_identity());
        let c = borel_tits_cocycle(&rho, &maps).unwrap();
        assert!(c.is_identically_one());
        assert!(cocycle_norm_class(&c).unwrap().is_one());
    }

    #[test]
    fn s3_base_change_has_identity_map() {
        let rho = catalog::s3_2dim_over_qi().unwrap();
        let maps = conj_maps(&rho);
        assert!(maps.map(3).unwrap().is_identity());
        let c = borel_tits_cocycle(&rho, &maps).unwrap();
        assert!(c.is_identically_one());
        assert!(c.quadratic_class().unwrap().is_trivial());
    }

    #[test]
    fn q8_map_squares_to_minus_identity() {
        let rho = catalog::q8_2dim().unwrap();
        let maps = conj_maps(&rho);
        let phi = maps.map(3).unwrap();
        let square = phi * &phi.galois(3);
        let s = square.scalar_value().unwrap();
        assert_eq!(s.to_rational().map(|q| q.is_negative()), Some(true));
        let c = borel_tits_cocycle(&rho, &maps).unwrap();
        assert!(c.is_normalized());
        assert_eq!(c.value(3, 3), &Cyclotomic::from_int(4, -1));
        assert_eq!(cocycle_norm_class(&c).unwrap(), Cyclotomic::from_int(4, -1));
        let q = c.quadratic_class().unwrap();
        let ramified: Vec<String> = q.invariants.ramified().iter().map(ToString::to_string).collect();
        assert_eq!(ramified, vec!["inf", "2"]);
    }

    #[test]
    fn norm_class_moves_by_norms_under_coboundaries() {
        // cyclic group of order 4 acting on Q(zeta_5)
        let n = 5;
        let gamma = vec![1, 2, 3, 4];
        let one = vec![vec![Cyclotomic::one(n); 4]; 4];
        let base = CocycleClass::new(n, &gamma, one).unwrap();
        let z = Cyclotomic::zeta(n);
        let cochain = vec![
            Cyclotomic::one(n),
            &Cyclotomic::from_int(n, 2) + &z,
            &Cyclotomic::from_int(n, 1) - &z.pow(3),
            Cyclotomic::from_int(n, 3),
        ];
        let twisted = base.times_coboundary(&cochain).unwrap();
        let a = cocycle_norm_class(&twisted).unwrap();
        let cs = &cochain[position(&gamma, 2)];
        let norm = Cyclotomic::from_rational(n, cs.norm());
        assert_eq!(a, norm);
        let back = split_cocycle_cyclic(&twisted, cs).unwrap();
        assert_eq!(coboundary(n, &gamma, &back).unwrap(), twisted.table().to_vec());
    }

    #[test]
    fn quadratic_splitting_examples() {
        let n = 4;
        let two = CocycleClass::new(
            n,
            &[1, 3],
            vec![vec![Cyclotomic::one(n), Cyclotomic::one(n)], vec![Cyclotomic::one(n), Cyclotomic::from_int(n, 2)]],
        )
        .unwrap();
        let c = split_cocycle_quadratic(&two, 50).unwrap();
        assert_eq!(c[1], &Cyclotomic::one(4) + &Cyclotomic::zeta(4));
        let minus = CocycleClass::new(
            n,
            &[1, 3],
            vec![vec![Cyclotomic::one(n), Cyclotomic::one(n)], vec![Cyclotomic::one(n), Cyclotomic::from_int(n, -1)]],
        )
        .unwrap();
        assert!(matches!(split_cocycle_quadratic(&minus, 50), Err(Error::Unsolvable(_))));
        let trivial = CocycleClass::new(n, &[1, 3], vec![vec![Cyclotomic::one(n); 2]; 2]).unwrap();
        assert!(split_cocycle(&trivial, 50).unwrap().iter().all(Cyclotomic::is_one));
    }

    #[test]
    fn broken_table_is_rejected() {
        let n = 4;
        let bad = vec![vec![Cyclotomic::one(n), Cyclotomic::from_int(n, 2)], vec![Cyclotomic::one(n), Cyclotomic::one(n)]];
        assert!(matches!(CocycleClass::new(n, &[1, 3], bad), Err(Error::CocycleIdentity(..))));
    }

    #[test]
    fn preimage_search_finds_relative_norms() {
        // N_{Q(zeta_8)/Q(sqrt -2)}(1 - z + z^3) = -1
        let found = search_norm_preimage(&Cyclotomic::from_int(8, -1), 8, &[1, 3], 50).unwrap();
        assert_eq!(&found * &found.galois(3), Cyclotomic::from_int(8, -1));
        assert!(exact_root(&rat(-8), 3).is_some());
        assert!(exact_root(&rat(-4), 2).is_none());
    }
}
