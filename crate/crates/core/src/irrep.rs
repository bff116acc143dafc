//! Explicit irreducible representations built from their characters.
//!
//! For an irreducible `chi` pick an abelian subgroup `A` and a linear
//! character `lambda` of `A` occurring once in `chi|_A`; the left ideal
//! `K[G] e_chi e_lambda` is then a copy of the irreducible module.

use std::collections::HashSet;
use std::sync::Arc;

use crate::character::{character_table, inner_product, Character};
use crate::cyclotomic::{min_conductor_of, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::{vectors_rank, Matrix};
use crate::rational::{lcm_u32, Rational};
use crate::rep::Representation;

/// An abelian subgroup `A` (parent element indices) with a linear character on it.
struct Inducing {
    elements: Vec<usize>,
    lambda: Vec<Cyclotomic>,
    conductor: u32,
}

fn abelian_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            if !g.commute(a, b) {
                continue;
            }
            let h = g.subgroup_generated(&[a, b]);
            if seen.insert(h.clone()) {
                out.push(h);
            }
        }
    }
    out
}

fn choose_inducing(chi: &Character) -> Result<Inducing> {
    let g = chi.group();
    let chi_cond = min_conductor_of(chi.values());
    let mut best: Option<Inducing> = None;
    for elements in abelian_subgroups(g) {
        let emb = g.subgroup(&elements)?;
        let restricted = chi.restrict(&emb)?;
        for lambda in character_table(&emb.sub)? {
            if !inner_product(&restricted, &lambda)?.is_one() {
                continue;
            }
            let conductor = lcm_u32(chi_cond, min_conductor_of(lambda.values()));
            if best.as_ref().is_none_or(|b| conductor < b.conductor) {
                let lambda = lambda.reduced();
                let values = (0..elements.len()).map(|a| lambda.at_element(a).clone()).collect();
                best = Some(Inducing { elements: elements.clone(), lambda: values, conductor });
            }
            if conductor == chi_cond {
                return Ok(best.unwrap());
            }
        }
    }
    best.ok_or_else(|| Error::PreconditionFailed("no abelian subgroup carries a multiplicity-one linear character".into()))
}

fn left_multiply(g: &FiniteGroup, s: usize, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let mut w = v.to_vec();
    for (h, x) in v.iter().enumerate() {
        w[g.mul(s, h)] = x.clone();
    }
    w
}

/// An irreducible representation with the given character, at the least
/// conductor reached by the construction.
pub fn irreducible_from_character(chi: &Character) -> Result<Representation> {
    if !chi.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let g = chi.group();
    let d = chi.degree().ok_or(Error::NotIrreducible)?;
    if d == 1 {
        return Ok(Representation::from_linear_character(&chi.reduced())?.reduced());
    }
    let ind = choose_inducing(chi)?;
    let n = ind.conductor;
    let chi = chi.reduced().lift(n)?;
    let order = g.order();
    let e_chi: Vec<Cyclotomic> = (0..order)
        .map(|x| chi.at_element(g.inv(x)).scale(&Rational::new((d as i64).into(), (order as i64).into())))
        .collect();
    let a_inv = Rational::new(1.into(), (ind.elements.len() as i64).into());
    let mut x = vec![Cyclotomic::zero(n); order];
    for (h, coeff) in e_chi.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        for (i, &a) in ind.elements.iter().enumerate() {
            // lambda(a^{-1}) is the conjugate value for a root of unity
            let l = ind.lambda[i].conj().at(n).scale(&a_inv);
            let idx = g.mul(h, a);
            x[idx] = &x[idx] + &(coeff * &l);
        }
    }
    let mut basis = vec![x];
    let mut i = 0;
    while i < basis.len() {
        for &s in g.generators() {
            let w = left_multiply(g, s, &basis[i]);
            let mut trial = basis.clone();
            trial.push(w);
            if vectors_rank(&trial) == trial.len() {
                basis = trial;
            }
        }
        i += 1;
    }
    if basis.len() != d {
        return Err(Error::LiftFailure(format!("spun module has dimension {} instead of {d}", basis.len())));
    }
    let b = Matrix::from_rows(basis.clone())?.at(n);
    let pivots = b.rref().pivots;
    let rows: Vec<usize> = (0..d).collect();
    let block_inv = b.submatrix(&rows, &pivots).invert()?;
    let mut images = Vec::new();
    for &s in g.generators() {
        let w = Matrix::from_rows(basis.iter().map(|v| left_multiply(g, s, v)).collect())?.at(n);
        let coords = &w.submatrix(&rows, &pivots) * &block_inv;
        images.push((s, coords.transpose()));
    }
    Ok(Representation::from_generators(Arc::clone(g), &images)?.reduced())
}

/// One explicit representation per irreducible character, in table order.
pub fn irreducible_representations(g: &Arc<FiniteGroup>) -> Result<Vec<Representation>> {
    character_table(g)?.iter().map(irreducible_from_character).collect()
}
