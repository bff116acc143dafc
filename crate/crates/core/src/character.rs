//! Class functions on finite groups: inner products, indicators, Galois orbits
//! and character tables.

use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::cyclotomic::{min_conductor_of, units, Cyclotomic};
use crate::dixon;
use crate::error::{Error, Result};
use crate::galois::{fixed_subfield, Subfield};
use crate::group::{FiniteGroup, SubgroupEmbedding};
use crate::rational::{lcm_u32, rat, Rational};

/// A class function, one value per conjugacy class, all at one conductor.
#[derive(Clone)]
pub struct Character {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
    conductor: u32,
}

impl Character {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != group.num_classes() {
            return Err(Error::ShapeMismatch(format!(
                "{} values for {} classes",
                values.len(),
                group.num_classes()
            )));
        }
        let conductor = values.iter().fold(1, |m, v| lcm_u32(m, v.conductor()));
        let values = values.into_iter().map(|v| v.at(conductor)).collect();
        Ok(Self { group, values, conductor })
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        let values = vec![Cyclotomic::one(1); group.num_classes()];
        Self { group: Arc::clone(group), values, conductor: 1 }
    }

    pub fn regular(group: &Arc<FiniteGroup>) -> Self {
        let mut values = vec![Cyclotomic::zero(1); group.num_classes()];
        values[0] = Cyclotomic::from_int(1, group.order() as i64);
        Self { group: Arc::clone(group), values, conductor: 1 }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at an element.
    pub fn at_element(&self, g: usize) -> &Cyclotomic {
        &self.values[self.group.class_of(g)]
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Degree `chi(1)` when it is a positive integer.
    pub fn degree(&self) -> Option<usize> {
        let d = self.values[0].to_rational()?;
        (d.is_integer() && d > rat(0)).then(|| d.to_integer().try_into().ok()).flatten()
    }

    pub fn lift(&self, m: u32) -> Result<Self> {
        let values = self.values.iter().map(|v| v.lift(m)).collect::<Result<_>>()?;
        Ok(Self { group: Arc::clone(&self.group), values, conductor: m })
    }

    /// The same character at the least conductor holding all its values.
    pub fn reduced(&self) -> Self {
        let m = min_conductor_of(&self.values);
        let values = self.values.iter().map(|v| v.descend(m).expect("value lies in the minimal field")).collect();
        Self { group: Arc::clone(&self.group), values, conductor: m }
    }

    /// Values under `zeta -> zeta^k` at this character's conductor.
    pub fn galois(&self, k: u32) -> Self {
        Self {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|v| v.galois(k)).collect(),
            conductor: self.conductor,
        }
    }

    /// `g -> chi(g^{-1})`.
    pub fn dual(&self) -> Self {
        let inv = self.group.inverse_classes();
        Self {
            group: Arc::clone(&self.group),
            values: inv.iter().map(|&c| self.values[c].clone()).collect(),
            conductor: self.conductor,
        }
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if self.group.same_as(&other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Self::new(Arc::clone(&self.group), values)
    }

    /// Pointwise product (character of the tensor product).
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Self::new(Arc::clone(&self.group), values)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|v| v.scale(q)).collect(),
            conductor: self.conductor,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    /// Restriction along a subgroup embedding.
    pub fn restrict(&self, emb: &SubgroupEmbedding) -> Result<Self> {
        if !emb.parent.same_as(&self.group) {
            return Err(Error::GroupMismatch);
        }
        let values = emb
            .sub
            .classes()
            .iter()
            .map(|c| self.at_element(emb.map[c[0]]).clone())
            .collect();
        Self::new(Arc::clone(&emb.sub), values)
    }

    /// `chi(g^2)` as a class function.
    pub fn adams2(&self) -> Self {
        let sq = self.group.squaring_map();
        let values = self.group.classes().iter().map(|c| self.at_element(sq[c[0]]).clone()).collect();
        Self { group: Arc::clone(&self.group), values, conductor: self.conductor }
    }

    /// Symmetric square `(chi^2 + chi(g^2)) / 2`.
    pub fn sym2(&self) -> Self {
        let sq = self.checked_mul(self).expect("same group");
        sq.checked_add(&self.adams2()).expect("same group").scale(&Rational::new(1.into(), 2.into()))
    }

    /// Exterior square `(chi^2 - chi(g^2)) / 2`.
    pub fn alt2(&self) -> Self {
        let sq = self.checked_mul(self).expect("same group");
        sq.checked_add(&self.adams2().scale(&rat(-1))).expect("same group").scale(&Rational::new(1.into(), 2.into()))
    }

    pub fn norm_squared(&self) -> Cyclotomic {
        inner_product(self, self).expect("same group")
    }

    pub fn is_irreducible(&self) -> bool {
        self.norm_squared().is_one()
    }

    /// `(1/|G|) sum_g chi(g^2)`.
    pub fn fs_indicator(&self) -> Result<Rational> {
        if !self.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        let s = average(&self.group, |g| self.at_element(self.group.mul(g, g)).clone());
        s.to_rational().ok_or_else(|| Error::LiftFailure("indicator is not rational".into()))
    }

    /// Orbit under `Gal(Q(zeta_n)/Q)` and the stabilizing exponents, `n` the conductor.
    pub fn galois_orbit(&self) -> (Vec<Character>, Vec<u32>) {
        let mut orbit: Vec<Character> = Vec::new();
        let mut stabilizer = Vec::new();
        for k in units(self.conductor) {
            let t = self.galois(k);
            if t.values == self.values {
                stabilizer.push(k);
            }
            if !orbit.iter().any(|o| o.values == t.values) {
                orbit.push(t);
            }
        }
        (orbit, stabilizer)
    }

    /// `Q(chi)`, the fixed field of the Galois stabilizer of the values.
    pub fn field_of_values(&self) -> Subfield {
        let (_, stab) = self.galois_orbit();
        fixed_subfield(self.conductor, &stab).expect("stabilizer is a subgroup")
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.values == other.values
    }
}

impl std::fmt::Debug for Character {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vals: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "Character({})", vals.join(", "))
    }
}

impl Serialize for Character {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Character", 2)?;
        let classes: Vec<&str> = self.group.classes().iter().map(|c| self.group.label(c[0])).collect();
        st.serialize_field("classes", &classes)?;
        st.serialize_field("values", &self.values)?;
        st.end()
    }
}

fn average(g: &FiniteGroup, f: impl Fn(usize) -> Cyclotomic) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(1);
    for x in 0..g.order() {
        acc = &acc + &f(x);
    }
    acc.scale(&Rational::new(1.into(), (g.order() as i64).into()))
}

/// `(1/|G|) sum_g chi(g) psi(g^{-1})`.
pub fn inner_product(chi: &Character, psi: &Character) -> Result<Cyclotomic> {
    chi.check_group(psi)?;
    let g = &chi.group;
    let inv = g.inverse_classes();
    let mut acc = Cyclotomic::zero(lcm_u32(chi.conductor, psi.conductor));
    for (c, cls) in g.classes().iter().enumerate() {
        let term = &chi.values[c] * &psi.values[inv[c]];
        acc = &acc + &term.scale(&rat(cls.len() as i64));
    }
    Ok(acc.scale(&Rational::new(1.into(), (g.order() as i64).into())))
}

/// Irreducible characters over `Q(zeta_e)`, `e` the exponent, computed once per group.
///
/// Sorted by degree and then by eigenvalue multiplicities, so the trivial
/// character comes first.
pub fn character_table(group: &Arc<FiniteGroup>) -> Result<Vec<Character>> {
    let raw = group.cached_table().get_or_init(|| dixon::irreducible_values(group));
    let rows = raw.clone()?;
    rows.into_iter().map(|v| Character::new(Arc::clone(group), v)).collect()
}

/// Installs a precomputed table, bypassing the Dixon computation.
///
/// The rows must be orthonormal with degrees summing in squares to `|G|`.
pub fn supply_character_table(group: &Arc<FiniteGroup>, rows: Vec<Vec<Cyclotomic>>) -> Result<()> {
    let chars = rows
        .iter()
        .map(|r| Character::new(Arc::clone(group), r.clone()))
        .collect::<Result<Vec<_>>>()?;
    dixon::verify_table(group, &chars)?;
    let stored = group.cached_table().get_or_init(|| Ok(rows.clone()));
    match stored {
        Ok(existing) if *existing == rows => Ok(()),
        _ => Err(Error::PreconditionFailed("a different character table is already attached".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::from_cycles;

    fn group(gens: &[Vec<usize>]) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::closure(gens).unwrap())
    }

    fn s3() -> Arc<FiniteGroup> {
        group(&[from_cycles(3, &[&[0, 1]]), from_cycles(3, &[&[0, 1, 2]])])
    }

    fn c(n: usize) -> Arc<FiniteGroup> {
        let cyc: Vec<usize> = (0..n).collect();
        group(&[from_cycles(n, &[&cyc])])
    }

    fn ints(xs: &[i64]) -> Vec<Cyclotomic> {
        xs.iter().map(|&x| Cyclotomic::from_int(1, x)).collect()
    }

    #[test]
    fn inner_product_examples() {
        let g = s3();
        let t = Character::trivial(&g);
        assert!(inner_product(&t, &t).unwrap().is_one());
        assert!(inner_product(&Character::regular(&g), &t).unwrap().is_one());
        let other = Character::trivial(&c(3));
        assert_eq!(inner_product(&t, &other), Err(Error::GroupMismatch));
    }

    #[test]
    fn indicator_examples() {
        let g = c(3);
        let t = Character::trivial(&g);
        assert_eq!(t.fs_indicator().unwrap(), rat(1));
        let z = Cyclotomic::zeta(3);
        let chi = Character::new(g.clone(), vec![Cyclotomic::one(3), z.clone(), &z * &z]).unwrap();
        assert_eq!(chi.fs_indicator().unwrap(), rat(0));
        let reg = Character::regular(&g);
        assert_eq!(reg.fs_indicator(), Err(Error::NotIrreducible));
    }

    #[test]
    fn orbit_examples() {
        let g = c(3);
        let z = Cyclotomic::zeta(3);
        let chi = Character::new(g.clone(), vec![Cyclotomic::one(3), z.clone(), &z * &z]).unwrap();
        let (orbit, stab) = chi.galois_orbit();
        assert_eq!(orbit.len(), 2);
        assert_eq!(stab, vec![1]);
        assert_eq!(chi.field_of_values().degree(), 2);
        let (orbit, stab) = Character::trivial(&g).lift(3).unwrap().galois_orbit();
        assert_eq!((orbit.len(), stab), (1, vec![1, 2]));
    }

    #[test]
    fn tables_of_small_groups() {
        let t = character_table(&c(2)).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].values(), ints(&[1, 1]).as_slice());
        assert_eq!(t[1].values(), ints(&[1, -1]).as_slice());
        let t = character_table(&s3()).unwrap();
        let degrees: Vec<usize> = t.iter().map(|c| c.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
        assert_eq!(t[2].values(), ints(&[2, 0, -1]).as_slice());
    }

    #[test]
    fn supplied_tables_are_checked() {
        let g = c(2);
        assert!(supply_character_table(&g, vec![ints(&[1, 1]), ints(&[1, 1])]).is_err());
        let g = c(2);
        supply_character_table(&g, vec![ints(&[1, 1]), ints(&[1, -1])]).unwrap();
        assert_eq!(character_table(&g).unwrap().len(), 2);
    }
}
