use num_bigint::BigInt;
use serde::Serialize;

use super::cocycle::{
    borel_tits_cocycle, choose_descent_maps, cocycle_norm_class, split_cocycle, split_cocycle_quadratic, ChooserOrder,
    CocycleClass,
};
use super::rationality::rationality_data;
use super::system::{build_descent_system, rational_form, DescentSystem};
use super::acting_group;
use crate::cyclotomic::{units, Cyclotomic};
use crate::error::{Error, Result};
use crate::galois::{subgroup_closure, Subfield};
use crate::hilbert::{hilbert_symbol, local_invariants, LocalInvariants, Place};
use crate::rational::{euler_phi, lcm_u32, Rational};
use crate::rep::Representation;

/// Evidence behind a descent decision.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Twists in the acting group with no intertwiner to the representation.
    NotSelfConjugate { missing: Vec<u32> },
    /// The entries already lie in the target field.
    AlreadyDefined,
    /// An explicit cochain `c` with `b = delta(c)`.
    Split { cochain: Vec<Cyclotomic> },
    /// Every local invariant is trivial but no witness was found within the bound.
    LocallyTrivial { height_bound: u64 },
    /// The target field has even local degree at every place where the class over `Q` ramifies.
    LocalDegrees { ramified: Vec<String> },
    /// Places with a nontrivial local obstruction.
    Obstructed { places: Vec<String> },
}

#[derive(Debug, Clone, Serialize)]
pub struct DescentDecision {
    pub self_conjugate: bool,
    pub exists: bool,
    pub working_conductor: u32,
    pub cocycle: Option<CocycleClass>,
    pub norm_class: Option<Cyclotomic>,
    pub invariants: Option<LocalInvariants>,
    pub certificate: Certificate,
    pub system: Option<DescentSystem>,
    pub form: Option<Representation>,
}

fn place_names(places: &[Place]) -> Vec<String> {
    places.iter().map(ToString::to_string).collect()
}

/// Decides whether `rho` has a form over `field`.
///
/// The cocycle is computed over the least cyclotomic field containing the entries
/// and `field`, unless the input field is already quadratic over `Q`. Quadratic extensions of `Q` are decided by Hilbert symbols; other
/// cases try a bounded splitting witness and, when the field of rationality is `Q`,
/// the local degrees of `field` at the ramified places of the class over `Q`.
pub fn descent_exists(rho: &Representation, field: &Subfield, height_bound: u64) -> Result<DescentDecision> {
    if !rho.is_absolutely_irreducible() {
        return Err(Error::NotAbsolutelyIrreducible);
    }
    let n = lcm_u32(rho.conductor(), field.min_conductor());
    let gamma_n = acting_group(field, n)?;
    let data = rationality_data(&rho.lift(n)?)?;
    let missing: Vec<u32> = gamma_n.iter().copied().filter(|&k| !data.stabilizer.contains(&k)).collect();
    if !missing.is_empty() {
        return Ok(DescentDecision {
            self_conjugate: false,
            exists: false,
            working_conductor: n,
            cocycle: None,
            norm_class: None,
            invariants: None,
            certificate: Certificate::NotSelfConjugate { missing },
            system: None,
            form: None,
        });
    }
    let m = if euler_phi(n) == 2 { n } else { lcm_u32(rho.min_conductor(), field.min_conductor()) };
    let work = rho.reduced().lift(m)?;
    let gamma = acting_group(field, m)?;
    let maps = choose_descent_maps(&work, &gamma, ChooserOrder::Lexicographic)?;
    let cocycle = borel_tits_cocycle(&work, &maps)?;
    let mut decision = DescentDecision {
        self_conjugate: true,
        exists: false,
        working_conductor: m,
        norm_class: cocycle_norm_class(&cocycle).ok(),
        invariants: cocycle.quadratic_class().ok().map(|q| q.invariants),
        cocycle: Some(cocycle.clone()),
        certificate: Certificate::AlreadyDefined,
        system: None,
        form: None,
    };
    let attach = |decision: &mut DescentDecision, cochain: Vec<Cyclotomic>| -> Result<()> {
        let system = build_descent_system(&work, &maps, &cochain)?;
        decision.form = Some(rational_form(&system)?);
        decision.system = Some(system);
        decision.exists = true;
        decision.certificate = Certificate::Split { cochain };
        Ok(())
    };
    if gamma.len() == 1 {
        decision.exists = true;
        decision.system = Some(DescentSystem::trivial(&work));
        decision.form = Some(work.reduced());
        return Ok(decision);
    }
    if cocycle.is_quadratic_over_rationals() {
        let places = cocycle.quadratic_class()?.invariants.ramified();
        if !places.is_empty() {
            decision.certificate = Certificate::Obstructed { places: place_names(&places) };
            return Ok(decision);
        }
        decision.exists = true;
        match split_cocycle_quadratic(&cocycle, height_bound) {
            Ok(c) => attach(&mut decision, c)?,
            Err(Error::BoundExceeded(_)) => decision.certificate = Certificate::LocallyTrivial { height_bound },
            Err(e) => return Err(e),
        }
        return Ok(decision);
    }
    if let Ok(c) = split_cocycle(&cocycle, height_bound) {
        attach(&mut decision, c)?;
        return Ok(decision);
    }
    if data.field_of_rationality.is_rationals() {
        if let Some(class) = rational_brauer_class(rho)? {
            let failing = splits_rational_class(field, &class.ramified);
            decision.exists = failing.is_empty();
            decision.certificate = if decision.exists {
                Certificate::LocalDegrees { ramified: place_names(&class.ramified) }
            } else {
                Certificate::Obstructed { places: place_names(&failing) }
            };
            return Ok(decision);
        }
    }
    Err(Error::Undecidable(match &decision.norm_class {
        Some(a) => format!("norm class representative {a} over {}", field.name()),
        None => format!("acting group {gamma:?} is not cyclic"),
    }))
}

/// Class over `Q` of a representation with field of rationality `Q`, as the
/// quaternion algebra `(d, a)` of a realization over a quadratic field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalClass {
    #[serde(with = "crate::rational::serde_rational")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub b: Rational,
    pub ramified: Vec<Place>,
}

/// `None` when the field of rationality is larger than `Q` or the entries need a
/// cyclotomic field of degree above two.
pub fn rational_brauer_class(rho: &Representation) -> Result<Option<RationalClass>> {
    let data = rationality_data(rho)?;
    if !data.field_of_rationality.is_rationals() {
        return Ok(None);
    }
    let r = rho.reduced();
    let one = Rational::from_integer(1.into());
    match euler_phi(r.conductor()) {
        1 => Ok(Some(RationalClass { a: one.clone(), b: one, ramified: Vec::new() })),
        2 => {
            let gamma = units(r.conductor());
            let maps = choose_descent_maps(&r, &gamma, ChooserOrder::Lexicographic)?;
            let q = borel_tits_cocycle(&r, &maps)?.quadratic_class()?;
            let ramified = q.invariants.ramified();
            Ok(Some(RationalClass { a: Rational::from_integer(q.d), b: q.a, ramified }))
        }
        _ => Ok(None),
    }
}

/// Local degree of an abelian field at a place of `Q`: the index of
/// `D_v cap H` in the decomposition group `D_v`.
pub(crate) fn local_degree(field: &Subfield, place: &Place) -> usize {
    let f = field.at_conductor(field.min_conductor()).expect("minimal conductor");
    let n = f.conductor();
    if n <= 2 {
        return 1;
    }
    let decomposition: Vec<u32> = match place {
        Place::Infinity => vec![1, n - 1],
        Place::Prime(p) => {
            let p = u32::try_from(p).expect("small prime");
            let mut rest = n;
            while rest % p == 0 {
                rest /= p;
            }
            if rest <= 2 {
                units(n)
            } else {
                let frob = subgroup_closure(rest, &[p % rest]);
                units(n).into_iter().filter(|u| frob.contains(&(u % rest))).collect()
            }
        }
    };
    let inside = decomposition.iter().filter(|k| f.stabilizer().contains(k)).count();
    decomposition.len() / inside
}

/// Places among `ramified` where `field` has odd local degree; empty iff `field`
/// splits the quaternion class.
pub fn splits_rational_class(field: &Subfield, ramified: &[Place]) -> Vec<Place> {
    ramified.iter().filter(|v| local_degree(field, v) % 2 == 1).cloned().collect()
}

/// Sign of the quadratic norm class for `[Q(zeta_n) : field] = 2`: under the standard
/// embedding when `real_embedding` is set, otherwise the Hilbert symbol `(d, a)` at infinity.
pub fn index_quadratic(rho: &Representation, field: &Subfield, real_embedding: bool) -> Result<i8> {
    let n = lcm_u32(rho.conductor(), field.min_conductor());
    let work = rho.lift(n)?;
    let gamma = acting_group(field, n)?;
    if gamma.len() != 2 {
        return Err(Error::NotQuadratic(gamma.len()));
    }
    let maps = choose_descent_maps(&work, &gamma, ChooserOrder::Lexicographic)?;
    let cocycle = borel_tits_cocycle(&work, &maps)?;
    let a = cocycle_norm_class(&cocycle)?;
    if real_embedding {
        if !gamma.contains(&(n - 1)) {
            return Err(Error::NotRealEmbeddable(format!("{} is not a real field", field.name())));
        }
        return a.real_sign();
    }
    let q = cocycle.quadratic_class().map_err(|_| Error::NotRealEmbeddable(format!("{a} is not rational")))?;
    hilbert_symbol(&Rational::from_integer(q.d), &q.a, &Place::Infinity)
}

/// Frobenius-Schur type of `rho` from descent along complex conjugation: `0` when
/// not self-conjugate, otherwise the sign of the norm class in the maximal real subfield.
pub fn archimedean_index(rho: &Representation) -> Result<i8> {
    if !rho.is_absolutely_irreducible() {
        return Err(Error::NotAbsolutelyIrreducible);
    }
    let work = if rho.conductor() <= 2 { rho.lift(4)? } else { rho.clone() };
    let n = work.conductor();
    let data = rationality_data(&work)?;
    if !data.stabilizer.contains(&(n - 1)) {
        return Ok(0);
    }
    let maps = choose_descent_maps(&work, &[1, n - 1], ChooserOrder::Lexicographic)?;
    let a = cocycle_norm_class(&borel_tits_cocycle(&work, &maps)?)?;
    a.real_sign()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalGlobalReport {
    #[serde(with = "crate::rational::serde_rational")]
    pub a: Rational,
    #[serde(serialize_with = "bigint_string")]
    pub d: BigInt,
    pub invariants: LocalInvariants,
    pub globally_trivial: bool,
    pub reciprocity_holds: bool,
}

fn bigint_string<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// `(d, a)_v` at infinity, 2 and the odd primes of `a` and `d`.
pub fn local_global_for(a: &Rational, d: &BigInt) -> Result<LocalGlobalReport> {
    let invariants = local_invariants(&Rational::from_integer(d.clone()), a)?;
    Ok(LocalGlobalReport {
        a: a.clone(),
        d: d.clone(),
        globally_trivial: invariants.is_trivial(),
        reciprocity_holds: invariants.product() == 1,
        invariants,
    })
}

pub fn local_global(c: &CocycleClass) -> Result<LocalGlobalReport> {
    let q = c.quadratic_class()?;
    local_global_for(&q.a, &q.d)
}
