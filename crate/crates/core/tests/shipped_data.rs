//! Checks on the data compiled into the crate, mostly against counts made
//! straight from the raw JSON files.

use std::collections::BTreeSet;

use ropa_core::mapping::{self, count_value_coverage, MappingCategory, DPV_NAMESPACE};
use ropa_core::{shipped, Jurisdiction, ValueKind};
use serde_json::Value;

fn raw(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn raw_concepts() -> Vec<Value> {
    match raw(shipped::REGISTRY_JSON) {
        Value::Object(mut o) => o.remove("concepts").unwrap().as_array().unwrap().clone(),
        Value::Array(a) => a,
        other => panic!("unexpected registry shape {other}"),
    }
}

#[test]
fn registry_census_matches_raw_counts() {
    let concepts = raw_concepts();
    let mandatory = concepts.iter().filter(|c| c["mandatory_art30"] == true).count();
    let specified = concepts
        .iter()
        .filter(|c| c["specified_values"].as_array().is_some_and(|a| !a.is_empty()))
        .count();
    assert_eq!((concepts.len(), mandatory, specified), (43, 12, 7));

    let census = shipped::registry().census();
    assert_eq!((census.total, census.mandatory, census.with_specified_values), (43, 12, 7));
}

#[test]
fn mapping_census_matches_raw_counts() {
    let table = raw(shipped::MAPPING_TABLE_JSON);
    let count = |cat: &str| table.as_array().unwrap().iter().filter(|e| e["category"] == cat).count();
    assert_eq!([count("exact"), count("partial"), count("complex"), count("none")], [14, 15, 3, 11]);

    let census = mapping::mapping_census(&shipped::mapping_table(), &shipped::registry()).unwrap();
    assert_eq!(
        [census.exact_count, census.partial_count, census.complex_count, census.none_count],
        [14, 15, 3, 11]
    );
    assert_eq!(census.total(), 43);
}

#[test]
fn named_anchors() {
    let reg = shipped::registry();
    let catalog = shipped::catalog();
    let table = shipped::mapping_table();
    let get = |name: &str| mapping::classify(reg.concept(name).unwrap(), &catalog, &table).unwrap();

    let purposes = get("purposes_of_processing");
    assert_eq!(purposes.category, MappingCategory::Exact);
    assert_eq!(purposes.target_iris, [format!("{DPV_NAMESPACE}Purpose")]);

    let transfer = get("transfer_to_third_country");
    assert_eq!(transfer.category, MappingCategory::Partial);
    assert_eq!(transfer.target_iris, [format!("{DPV_NAMESPACE}LegalBasis")]);

    assert_eq!(get("data_subject_rights").category, MappingCategory::None);
}

#[test]
fn purposes_value_coverage_both_routes() {
    let reg = shipped::registry();
    let table = shipped::mapping_table();
    let concept = reg.concept("purposes_of_processing").unwrap();
    let entry = table.iter().find(|e| e.concept_name == concept.name).unwrap();
    let stored = mapping::value_coverage(concept, entry).unwrap();
    assert_eq!((stored.template_values, stored.dpv_values), (65, 33));

    let counted = count_value_coverage(concept, &shipped::catalog()).unwrap();
    assert_eq!(counted, stored);

    // third route: raw JSON, labels compared case-insensitively
    let catalog = raw(shipped::CATALOG_JSON);
    let labels: BTreeSet<String> = catalog["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["label"].as_str().unwrap().trim().to_lowercase())
        .collect();
    let purposes = raw_concepts()
        .into_iter()
        .find(|c| c["name"] == "purposes_of_processing")
        .unwrap();
    let values: Vec<String> = purposes["specified_values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().trim().to_lowercase())
        .collect();
    let distinct: BTreeSet<&String> = values.iter().collect();
    assert_eq!(distinct.len(), 65);
    assert_eq!(values.iter().filter(|v| labels.contains(*v)).count(), 33);
}

#[test]
fn extension_terms_cover_named_labels() {
    let terms = mapping::extension_terms(
        &shipped::mapping_table(),
        &shipped::registry(),
        mapping::DEFAULT_EXTENSION_NAMESPACE,
    )
    .unwrap();
    assert_eq!(terms.len(), 11);
    let labels: BTreeSet<&str> = terms.iter().map(|t| t.label.as_str()).collect();
    for want in [
        "International Transfers",
        "Controller Contact Details",
        "Original Source of Data",
        "Data Protection Officer",
        "Data Protection Impact Assessment",
        "Data Subject Rights",
        "Risk",
        "Privacy Notice",
        "Representative",
        "Data Breach",
    ] {
        assert!(labels.contains(want), "missing {want}");
    }
    assert!(terms.iter().any(|t| t.iri.ends_with("#DataBreach")));
    assert!(terms.iter().any(|t| t.iri.ends_with("#Risk")));
}

#[test]
fn profiles_have_expected_shape() {
    let reg = shipped::registry();
    for p in shipped::profiles(&reg) {
        let mapped = p.concepts().count();
        match p.code {
            Jurisdiction::FI | Jurisdiction::DK | Jurisdiction::LU => {
                assert!(p.art30_transcription_only, "{}", p.code);
                assert_eq!(mapped, 12, "{}", p.code);
                let mandatory: BTreeSet<&str> = reg.mandatory().map(|c| c.name.as_str()).collect();
                assert_eq!(p.concepts().collect::<BTreeSet<_>>(), mandatory);
            }
            _ => {
                assert!(!p.art30_transcription_only, "{}", p.code);
                assert!(mapped > 12, "{}", p.code);
            }
        }
    }
    let be = shipped::profile(Jurisdiction::BE);
    assert!(be.controlled_vocabularies.values().any(|v| !v.is_empty()));
}

#[test]
fn every_concept_appears_in_some_profile() {
    let reg = shipped::registry();
    let profiles = shipped::profiles(&reg);
    for c in reg.concepts() {
        assert!(profiles.iter().any(|p| p.maps_concept(&c.name)), "{} is in no profile", c.name);
    }
}

#[test]
fn every_dpv_target_is_in_the_catalog() {
    let catalog = shipped::catalog();
    for entry in shipped::mapping_table() {
        for iri in &entry.target_iris {
            if iri.starts_with(DPV_NAMESPACE) {
                assert!(catalog.contains(iri), "{iri}");
            }
        }
    }
}

#[test]
fn only_enumerated_concepts_carry_values() {
    for c in shipped::registry().concepts() {
        if !c.specified().is_empty() {
            assert_eq!(c.value_kind, ValueKind::Enumerated, "{}", c.name);
        }
    }
}

#[test]
fn extension_namespace_is_configurable() {
    let ns = "urn:example:ext:";
    let table = shipped::mapping_table_in(ns);
    let terms = mapping::extension_terms(&table, &shipped::registry(), ns).unwrap();
    assert!(terms.iter().all(|t| t.iri.starts_with(ns)));
}
