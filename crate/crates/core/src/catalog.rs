//! The bundled catalog of small p-groups.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::io::GroupFile;
use crate::structure::StructureProfile;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub group: GroupFile,
    /// Frozen profile fields; compared key by key.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expected: BTreeMap<String, Value>,
}

impl CatalogEntry {
    pub fn build(&self, max_order: usize) -> Result<FiniteGroup> {
        self.group.build(max_order)
    }

    /// Fields of `expected` that disagree with `profile`, as
    /// `(field, expected, computed)`.
    pub fn profile_mismatches(&self, profile: &StructureProfile) -> Vec<(String, Value, Value)> {
        let computed = serde_json::to_value(profile).expect("profile serializes");
        self.expected
            .iter()
            .filter_map(|(k, want)| {
                let got = computed.get(k).cloned().unwrap_or(Value::Null);
                (got != *want).then(|| (k.clone(), want.clone(), got))
            })
            .collect()
    }
}

static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();

pub fn bundled_catalog() -> &'static [CatalogEntry] {
    CATALOG.get_or_init(|| serde_json::from_str(include_str!("../data/catalog.json")).expect("bundled catalog parses"))
}

pub fn find(id: &str) -> Result<&'static CatalogEntry> {
    bundled_catalog().iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownGroup(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_ORDER;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = bundled_catalog().iter().map(|e| e.id.as_str()).collect();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn named_entries() {
        let heis = find("heis27").unwrap().build(DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(heis.order(), 27);
        assert_eq!(crate::structure::nilpotency_class(&heis).unwrap(), 2);
        let c9 = find("c9").unwrap().build(DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(c9.order(), 9);
        assert!(c9.elements().any(|x| c9.element_order(x) == 9));
        assert!(matches!(find("nope"), Err(Error::UnknownGroup(_))));
    }
}
