//! Galois descent for absolutely irreducible representations over cyclotomic fields.
//!
//! Twists act strictly: `(s rho)(g)` applies `zeta -> zeta^s` to every entry, and a
//! descent map `phi_s` satisfies `phi_s (s rho)(g) = rho(g) phi_s`.

mod cocycle;
mod decide;
mod endalg;
mod loewy;
mod minfield;
mod rationality;
mod scalars;
mod system;
mod transfer;

pub use cocycle::{
    borel_tits_cocycle, choose_descent_maps, coboundary, cocycle_norm_class, relating_cochain, search_norm_preimage,
    split_cocycle, split_cocycle_cyclic, split_cocycle_quadratic, ChooserOrder, CocycleClass, DescentMaps,
    QuadraticClass,
};
pub use decide::{
    archimedean_index, descent_exists, index_quadratic, local_global, local_global_for, rational_brauer_class,
    splits_rational_class, Certificate, DescentDecision, LocalGlobalReport, RationalClass,
};
pub use endalg::{canonical_quaternion_pair, end_algebra, is_simple_over, EndAlgebra, EndClassification, Simplicity};
pub use loewy::{loewy_correspondence, galois_orbits_over, LoewyDescriptor, SimpleKind};
pub use minfield::{minimal_fields_of_definition, FieldStatus, MinimalFields, RejectedField};
pub use rationality::{rationality_data, RationalityData};
pub use scalars::{restriction_of_scalars, restriction_of_scalars_between};
pub use system::{build_descent_system, rational_form, DescentSystem};
pub use transfer::{multiplicity_one_transfer, ClassSummary, TransferReport};

use crate::error::Result;
use crate::galois::Subfield;

/// `Gal(Q(zeta_n)/F)` for a subfield `F` of `Q(zeta_n)`.
pub fn acting_group(field: &Subfield, n: u32) -> Result<Vec<u32>> {
    Ok(field.at_conductor(n)?.stabilizer().to_vec())
}
