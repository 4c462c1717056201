//! Default data compiled into the crate: the concept registry, the pinned
//! DPV catalog, the mapping table and the six jurisdiction profiles.
//!
//! The shipped files are checked by this crate's tests, so the accessors
//! below panic rather than return errors.

use crate::mapping::{self, DpvCatalog, MappingEntry, DEFAULT_EXTENSION_NAMESPACE};
use crate::model::Jurisdiction;
use crate::profile::{load_profile, JurisdictionProfile};
use crate::registry::ConceptRegistry;

pub const REGISTRY_JSON: &str = include_str!("../data/registry.json");
pub const CATALOG_JSON: &str = include_str!("../data/dpv_catalog.json");
pub const MAPPING_TABLE_JSON: &str = include_str!("../data/mapping_table.json");

pub const PROFILE_JSON: [(Jurisdiction, &str); 6] = [
    (Jurisdiction::BE, include_str!("../data/profiles/be.json")),
    (Jurisdiction::CY, include_str!("../data/profiles/cy.json")),
    (Jurisdiction::DK, include_str!("../data/profiles/dk.json")),
    (Jurisdiction::FI, include_str!("../data/profiles/fi.json")),
    (Jurisdiction::LU, include_str!("../data/profiles/lu.json")),
    (Jurisdiction::UK, include_str!("../data/profiles/uk.json")),
];

pub fn registry() -> ConceptRegistry {
    ConceptRegistry::from_json(REGISTRY_JSON).expect("shipped registry is valid")
}

pub fn catalog() -> DpvCatalog {
    DpvCatalog::from_json(CATALOG_JSON).expect("shipped catalog is valid")
}

/// The mapping table with `ext:` names expanded under the default
/// extension namespace.
pub fn mapping_table() -> Vec<MappingEntry> {
    mapping_table_in(DEFAULT_EXTENSION_NAMESPACE)
}

pub fn mapping_table_in(extension_namespace: &str) -> Vec<MappingEntry> {
    mapping::load_mapping_table(MAPPING_TABLE_JSON.as_bytes(), extension_namespace)
        .expect("shipped mapping table is valid")
}

pub fn profile(code: Jurisdiction) -> JurisdictionProfile {
    let registry = registry();
    profile_with(code, &registry)
}

pub fn profile_with(code: Jurisdiction, registry: &ConceptRegistry) -> JurisdictionProfile {
    let (_, text) = PROFILE_JSON
        .iter()
        .find(|(j, _)| *j == code)
        .expect("every jurisdiction ships a profile");
    load_profile(text.as_bytes(), registry).expect("shipped profile is valid")
}

/// All six profiles, ordered by jurisdiction code.
pub fn profiles(registry: &ConceptRegistry) -> Vec<JurisdictionProfile> {
    Jurisdiction::ALL
        .into_iter()
        .map(|j| profile_with(j, registry))
        .collect()
}
