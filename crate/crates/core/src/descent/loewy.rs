use serde::Serialize;

use super::decide::descent_exists;
use super::endalg::{end_algebra, is_simple_over, orbit_indices, EndClassification, Simplicity};
use super::scalars::restriction_of_scalars_between;
use crate::character::{inner_product, Character};
use crate::error::{Error, Result};
use crate::galois::{fixed_subfield, lift_subgroup, Subfield};
use crate::irrep::irreducible_from_character;
use crate::rational::{euler_phi, lcm_u32, to_i64};
use crate::rep::Representation;

/// How the simple object over `F` was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimpleKind {
    /// `Res_{E/F}` of a form over `E = F(chi)F`.
    Descended,
    /// `Res_{K/F}` of the representation over its cyclotomic field `K`.
    Restriction,
    Undecidable,
}

#[derive(Debug, Clone, Serialize)]
pub struct LoewyDescriptor {
    /// Table indices of the orbit under `Gal(/F)`.
    pub orbit: Vec<usize>,
    pub degree: usize,
    pub field_of_values: Subfield,
    pub fs_indicator: i64,
    pub kind: SimpleKind,
    pub simple_dim: Option<usize>,
    pub end: Option<EndClassification>,
    pub center_dim: Option<usize>,
    pub simplicity: Simplicity,
    /// The absolutely irreducible constituents of the simple are exactly the orbit.
    pub constituents_match: bool,
    #[serde(skip)]
    pub simple: Option<Representation>,
}

/// Partition of the table rows into orbits under `Gal(/field)`, ordered by first index.
pub fn galois_orbits_over(table: &[Character], field: &Subfield) -> Vec<Vec<usize>> {
    let mut seen = vec![false; table.len()];
    let mut out = Vec::new();
    for i in 0..table.len() {
        if seen[i] {
            continue;
        }
        let orbit = orbit_indices(table, i, field);
        for &j in &orbit {
            seen[j] = true;
        }
        out.push(orbit);
    }
    out
}

fn compositum(a: &Subfield, b: &Subfield) -> Result<Subfield> {
    let n = lcm_u32(a.conductor(), b.conductor());
    let ha = lift_subgroup(a.conductor(), a.stabilizer(), n);
    let hb = lift_subgroup(b.conductor(), b.stabilizer(), n);
    let common: Vec<u32> = ha.into_iter().filter(|k| hb.contains(k)).collect();
    fixed_subfield(n, &common)
}

/// The simple over `field` attached to `rho` and whether it came from a form.
fn simple_for(rho: &Representation, e: &Subfield, field: &Subfield, table: &[Character], height_bound: u64) -> Result<(SimpleKind, Option<Representation>)> {
    match descent_exists(rho, e, height_bound) {
        Ok(d) if d.form.is_some() => {
            let form = d.form.expect("checked");
            return Ok((SimpleKind::Descended, Some(restriction_of_scalars_between(&form, e, field)?)));
        }
        Ok(_) | Err(Error::Undecidable(_)) => {}
        Err(err) => return Err(err),
    }
    let m = lcm_u32(rho.min_conductor(), e.min_conductor());
    let res = restriction_of_scalars_between(&rho.reduced().lift(m)?, &Subfield::full(m), field)?;
    let quadratic = euler_phi(m) as usize == 2 * e.degree();
    if quadratic || is_simple_over(&res, table) == Simplicity::Simple {
        Ok((SimpleKind::Restriction, Some(res)))
    } else {
        Ok((SimpleKind::Undecidable, None))
    }
}

/// One descriptor per `Gal(/field)`-orbit of the character table.
pub fn loewy_correspondence(table: &[Character], field: &Subfield, height_bound: u64) -> Result<Vec<LoewyDescriptor>> {
    let mut out = Vec::new();
    for orbit in galois_orbits_over(table, field) {
        let chi = &table[orbit[0]];
        let rho = irreducible_from_character(chi)?;
        let field_of_values = chi.field_of_values();
        let e = compositum(field, &field_of_values)?;
        let (kind, simple) = simple_for(&rho, &e, field, table, height_bound)?;
        let mut descriptor = LoewyDescriptor {
            degree: chi.degree().ok_or(Error::NotIrreducible)?,
            field_of_values,
            fs_indicator: to_i64(&chi.fs_indicator()?).expect("integer indicator"),
            kind,
            simple_dim: None,
            end: None,
            center_dim: None,
            simplicity: Simplicity::Undecided,
            constituents_match: false,
            simple: None,
            orbit,
        };
        if let Some(s) = simple {
            let end = end_algebra(&s)?;
            descriptor.simplicity = match end.classification.is_division() {
                Some(true) => Simplicity::Simple,
                Some(false) => Simplicity::NotSimple,
                None => is_simple_over(&s, table),
            };
            let psi = s.character();
            let mut present = Vec::new();
            for (j, c) in table.iter().enumerate() {
                let m = inner_product(&psi, c)?;
                if !m.is_zero() {
                    present.push((j, m));
                }
            }
            descriptor.constituents_match = present.len() == descriptor.orbit.len()
                && present.iter().all(|(j, m)| descriptor.orbit.contains(j) && *m == present[0].1);
            descriptor.simple_dim = Some(s.dim());
            descriptor.center_dim = Some(end.center.len());
            descriptor.end = Some(end.classification);
            descriptor.simple = Some(s);
        }
        out.push(descriptor);
    }
    Ok(out)
}
