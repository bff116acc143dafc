use serde::Serialize;

use super::acting_group;
use super::cocycle::{borel_tits_cocycle, choose_descent_maps, cocycle_norm_class, search_norm_preimage, ChooserOrder};
use super::rationality::rationality_data;
use crate::character::Character;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::galois::Subfield;
use crate::group::SubgroupEmbedding;
use crate::hilbert::LocalInvariants;
use crate::rational::lcm_u32;
use crate::rep::Representation;

#[derive(Debug, Clone, Serialize)]
pub struct ClassSummary {
    pub conductor: u32,
    pub dim: usize,
    pub norm_class: Cyclotomic,
    pub invariants: Option<LocalInvariants>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransferReport {
    pub class_v: ClassSummary,
    pub class_tau: ClassSummary,
    pub equal: bool,
}

fn precondition(msg: &str) -> Error {
    Error::PreconditionFailed(msg.into())
}

fn summarize(rho: &Representation, gamma: &[u32]) -> Result<ClassSummary> {
    let maps = choose_descent_maps(rho, gamma, ChooserOrder::Lexicographic)?;
    let cocycle = borel_tits_cocycle(rho, &maps)?;
    Ok(ClassSummary {
        conductor: rho.conductor(),
        dim: rho.dim(),
        norm_class: cocycle_norm_class(&cocycle)?,
        invariants: cocycle.quadratic_class().ok().map(|q| q.invariants),
    })
}

/// Compares the class of `v` with the class of its `tau`-isotypic part on `H`,
/// both for the acting group of `field`.
pub fn multiplicity_one_transfer(
    v: &Representation,
    emb: &SubgroupEmbedding,
    tau: &Character,
    field: &Subfield,
    height_bound: u64,
) -> Result<TransferReport> {
    if !v.is_absolutely_irreducible() {
        return Err(precondition("V is not absolutely irreducible"));
    }
    if !tau.is_irreducible() {
        return Err(precondition("tau is not irreducible"));
    }
    let n = lcm_u32(lcm_u32(v.conductor(), tau.conductor()), field.min_conductor());
    let gamma = acting_group(field, n)?;
    let vn = v.lift(n)?;
    if !rationality_data(&vn)?.stabilizes(&gamma) {
        return Err(precondition("V is not self-conjugate over the field"));
    }
    let tau_n = tau.lift(n)?;
    if gamma.iter().any(|&k| tau_n.galois(k) != tau_n) {
        return Err(precondition("tau is not self-conjugate over the field"));
    }
    let res = vn.restrict(emb)?;
    let mult = res.multiplicity(tau)?;
    if mult != 1 {
        return Err(Error::PreconditionFailed(format!("tau occurs with multiplicity {mult} in V restricted to H")));
    }
    let p = res.isotypic_projector(tau)?.at(n);
    let pivots = p.rref().pivots;
    let rows: Vec<usize> = (0..p.rows()).collect();
    let w = res.subrepresentation(&p.submatrix(&rows, &pivots))?;
    let class_v = summarize(&vn, &gamma)?;
    let class_tau = summarize(&w, &gamma)?;
    let equal = match (&class_v.invariants, &class_tau.invariants) {
        (Some(a), Some(b)) => a == b,
        _ => {
            let ratio = class_v.norm_class.checked_div(&class_tau.norm_class)?;
            if ratio.is_one() || search_norm_preimage(&ratio, n, &gamma, height_bound).is_some() {
                true
            } else {
                return Err(Error::Undecidable(format!("quotient of norm classes {ratio}")));
            }
        }
    };
    Ok(TransferReport { class_v, class_tau, equal })
}
