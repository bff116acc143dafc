use serde::Serialize;

use crate::cyclotomic::units;
use crate::error::{Error, Result};
use crate::galois::{fixed_subfield, Subfield};
use crate::rep::{intertwiner_space, Representation};

/// Stabilizer `Gamma_rho` of the isomorphism class under twisting, and its fixed field.
#[derive(Debug, Clone, Serialize)]
pub struct RationalityData {
    pub conductor: u32,
    pub stabilizer: Vec<u32>,
    pub field_of_rationality: Subfield,
}

impl RationalityData {
    /// Whether `s rho ~ rho` for every exponent in `gamma`.
    pub fn stabilizes(&self, gamma: &[u32]) -> bool {
        gamma.iter().all(|k| self.stabilizer.contains(k))
    }
}

/// Twists `k` with a nonzero intertwiner `k rho -> rho`, checked against the
/// stabilizer of the character values.
pub fn rationality_data(rho: &Representation) -> Result<RationalityData> {
    if !rho.is_absolutely_irreducible() {
        return Err(Error::NotAbsolutelyIrreducible);
    }
    let n = rho.conductor();
    let chi = rho.character().lift(n)?;
    let mut stabilizer = Vec::new();
    for k in units(n) {
        let by_intertwiner = k == 1 || !intertwiner_space(&rho.twist(k), rho)?.is_empty();
        let by_character = chi.galois(k) == chi;
        if by_intertwiner != by_character {
            return Err(Error::LiftFailure(format!("twist by {k}: intertwiners and character disagree")));
        }
        if by_intertwiner {
            stabilizer.push(k);
        }
    }
    let field_of_rationality = fixed_subfield(n, &stabilizer)?;
    Ok(RationalityData { conductor: n, stabilizer, field_of_rationality })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn examples() {
        let s3 = rationality_data(&catalog::s3_2dim().unwrap()).unwrap();
        assert!(s3.field_of_rationality.is_rationals());
        let c4 = rationality_data(&catalog::cyclic_char(4).unwrap()).unwrap();
        assert_eq!(c4.stabilizer, vec![1]);
        assert_eq!(c4.field_of_rationality.name(), "Q(i)");
        let q8 = rationality_data(&catalog::q8_2dim().unwrap()).unwrap();
        assert_eq!(q8.stabilizer, vec![1, 3]);
        assert!(q8.field_of_rationality.is_rationals());
    }

    #[test]
    fn reducible_is_rejected() {
        let g = catalog::group("S3").unwrap();
        let rho = Representation::regular(&g);
        assert_eq!(rationality_data(&rho).unwrap_err(), Error::NotAbsolutelyIrreducible);
    }
}
