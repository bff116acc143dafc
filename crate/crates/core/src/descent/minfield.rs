use serde::Serialize;

use super::decide::{descent_exists, Certificate};
use super::rationality::rationality_data;
use crate::error::{Error, Result};
use crate::galois::{fixed_subfield, subgroups_of, Subfield};
use crate::rep::Representation;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FieldStatus {
    /// A form exists over `field`; `form` is present when a witness was constructed.
    Defined { field: Subfield, form: Option<Representation> },
    Undecidable { field: Subfield, reason: String },
}

impl FieldStatus {
    pub fn field(&self) -> &Subfield {
        match self {
            FieldStatus::Defined { field, .. } | FieldStatus::Undecidable { field, .. } => field,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, FieldStatus::Defined { .. })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RejectedField {
    pub field: Subfield,
    pub places: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalFields {
    pub conductor: u32,
    pub field_of_rationality: Subfield,
    /// Degree over `Q` of the minimal fields found, if any.
    pub degree: Option<usize>,
    pub fields: Vec<FieldStatus>,
    pub rejected: Vec<RejectedField>,
}

impl MinimalFields {
    pub fn defined(&self) -> Vec<&Subfield> {
        self.fields.iter().filter(|s| s.is_defined()).map(FieldStatus::field).collect()
    }
}

/// Subfields `E` of `Q(zeta_n)` containing `F(rho)` of least degree over which
/// `rho` has a form, `n` the conductor of `rho`.
///
/// Candidates are scanned by `(degree, name)` and the scan stops after the first
/// degree with a defined field. Undecidable candidates up to that degree are kept.
pub fn minimal_fields_of_definition(rho: &Representation, height_bound: u64) -> Result<MinimalFields> {
    let data = rationality_data(rho)?;
    let n = data.conductor;
    let mut candidates: Vec<Subfield> =
        subgroups_of(n, &data.stabilizer).iter().map(|h| fixed_subfield(n, h)).collect::<Result<_>>()?;
    candidates.sort_by_cached_key(|e| (e.degree(), e.name()));
    let mut fields = Vec::new();
    let mut rejected = Vec::new();
    let mut found: Option<usize> = None;
    for e in candidates {
        if found.is_some_and(|deg| e.degree() > deg) {
            break;
        }
        match descent_exists(rho, &e, height_bound) {
            Ok(d) if d.exists => {
                found = Some(e.degree());
                fields.push(FieldStatus::Defined { field: e, form: d.form });
            }
            Ok(d) => {
                let places = match d.certificate {
                    Certificate::Obstructed { places } => places,
                    other => return Err(Error::LiftFailure(format!("unexpected certificate {other:?}"))),
                };
                rejected.push(RejectedField { field: e, places });
            }
            Err(Error::Undecidable(reason)) => fields.push(FieldStatus::Undecidable { field: e, reason }),
            Err(e) => return Err(e),
        }
    }
    if let Some(deg) = found {
        fields.retain(|s| s.field().degree() <= deg);
    }
    Ok(MinimalFields { conductor: n, field_of_rationality: data.field_of_rationality, degree: found, fields, rejected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn names(m: &MinimalFields) -> Vec<String> {
        m.defined().iter().map(|f| f.name()).collect()
    }

    #[test]
    fn q8_in_conductor_eight() {
        let m = minimal_fields_of_definition(&catalog::representation("q8_2dim").unwrap(), 50).unwrap();
        assert_eq!(m.degree, Some(2));
        assert_eq!(names(&m), vec!["Q(i)", "Q(sqrt(-2))"]);
        let rejected: Vec<(String, Vec<String>)> = m.rejected.iter().map(|r| (r.field.name(), r.places.clone())).collect();
        assert!(rejected.contains(&("Q(sqrt(2))".into(), vec!["inf".into()])), "{rejected:?}");
        assert!(rejected.iter().any(|(f, _)| f == "Q"));
        for s in &m.fields {
            let FieldStatus::Defined { field, form: Some(form) } = s else { panic!("{s:?}") };
            assert!(form.matrices().iter().all(|m| m.entries().iter().all(|x| field.contains(x))));
        }
    }

    #[test]
    fn s3_and_c4() {
        let s3 = minimal_fields_of_definition(&catalog::s3_2dim_over_qi().unwrap(), 50).unwrap();
        assert_eq!(names(&s3), vec!["Q"]);
        let c4 = minimal_fields_of_definition(&catalog::cyclic_char(4).unwrap(), 50).unwrap();
        assert_eq!(names(&c4), vec!["Q(i)"]);
    }
}
