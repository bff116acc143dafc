//! JSON documents for groups and representations, and the `catalog:` scheme.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::character::supply_character_table;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupDoc};
use crate::matrix::Matrix;
use crate::rep::Representation;

pub const CATALOG_SCHEME: &str = "catalog:";

/// `{"group", "conductor", "dim", "generators" | "matrices", "element_words"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDoc {
    pub group: GroupDoc,
    pub conductor: u32,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<BTreeMap<String, Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element_words: Option<Vec<String>>,
}

/// A group document that may carry its character table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(flatten)]
    pub group: GroupDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character_table: Option<Vec<Vec<Cyclotomic>>>,
}

fn group_from_doc(doc: GroupDoc) -> Result<Arc<FiniteGroup>> {
    if doc.order <= 1 {
        return Err(Error::InvalidGroup("the trivial group is not accepted".into()));
    }
    Ok(Arc::new(doc.into_group()?))
}

impl RepDoc {
    pub fn from_rep(rho: &Representation) -> Self {
        let g = rho.group();
        let generators = g.generators().iter().map(|&s| (g.label(s).to_string(), rho.matrix(s).clone())).collect();
        RepDoc {
            group: g.to_doc(),
            conductor: rho.conductor(),
            dim: rho.dim(),
            generators: Some(generators),
            matrices: None,
            element_words: Some(g.labels().to_vec()),
        }
    }

    pub fn into_rep(self) -> Result<Representation> {
        let group = group_from_doc(self.group)?;
        if self.conductor == 0 {
            return Err(Error::Parse("conductor must be positive".into()));
        }
        if let Some(words) = &self.element_words {
            if words.len() != group.order() {
                return Err(Error::InvalidRepresentation(format!(
                    "{} element words for a group of order {}",
                    words.len(),
                    group.order()
                )));
            }
        }
        let check = |m: &Matrix| -> Result<Matrix> {
            if m.rows() != self.dim || m.cols() != self.dim {
                return Err(Error::InvalidRepresentation(format!(
                    "{}x{} matrix in a representation of dimension {}",
                    m.rows(),
                    m.cols(),
                    self.dim
                )));
            }
            m.lift(self.conductor)
                .map_err(|_| Error::InvalidRepresentation(format!("entries do not lie in Q(zeta_{})", self.conductor)))
        };
        let rho = match (self.generators, self.matrices) {
            (Some(gens), None) => {
                let mut images = Vec::with_capacity(gens.len());
                for (label, m) in &gens {
                    let g = group
                        .element_by_label(label)
                        .ok_or_else(|| Error::InvalidRepresentation(format!("unknown element label {label:?}")))?;
                    images.push((g, check(m)?));
                }
                Representation::from_generators(group, &images)?
            }
            (None, Some(ms)) => Representation::new(group, ms.iter().map(check).collect::<Result<_>>()?)?,
            _ => return Err(Error::Parse("exactly one of \"generators\" and \"matrices\" is required".into())),
        };
        Ok(rho.lift(self.conductor)?)
    }
}

impl Serialize for Representation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RepDoc::from_rep(self).serialize(s)
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn rep_from_json(text: &str) -> Result<Representation> {
    parse_json::<RepDoc>(text)?.into_rep()
}

/// Parses a group document; a supplied character table is verified and attached.
pub fn group_from_json(text: &str) -> Result<Arc<FiniteGroup>> {
    let file: GroupFile = parse_json(text)?;
    let group = group_from_doc(file.group)?;
    if let Some(rows) = file.character_table {
        supply_character_table(&group, rows)?;
    }
    Ok(group)
}

/// Catalog name behind a `catalog:` URI.
pub fn catalog_name(uri: &str) -> Option<&str> {
    uri.strip_prefix(CATALOG_SCHEME)
}

/// A representation from a `catalog:` URI or from JSON text read by `read`.
pub fn load_rep(source: &str, read: impl FnOnce(&str) -> Result<String>) -> Result<Representation> {
    match catalog_name(source) {
        Some(name) => catalog::representation(name),
        None => rep_from_json(&read(source)?),
    }
}

/// A group from a `catalog:` URI, or from a group or representation document.
pub fn load_group(source: &str, read: impl FnOnce(&str) -> Result<String>) -> Result<Arc<FiniteGroup>> {
    if let Some(name) = catalog_name(source) {
        return match catalog::group(name) {
            Ok(g) => Ok(g),
            Err(_) => catalog::representation(name).map(|r| Arc::clone(r.group())),
        };
    }
    let text = read(source)?;
    let value: serde_json::Value = parse_json(&text)?;
    if value.get("group").is_some() {
        Ok(Arc::clone(rep_from_json(&text)?.group()))
    } else {
        group_from_json(&text)
    }
}
