//! Correspondence between registry concepts and the Data Privacy Vocabulary.
//!
//! The mapping table is curated data: every concept carries one of four
//! categories.
//!
//! * `exact`: an existing DPV term represents the concept unchanged.
//! * `partial`: a DPV term exists but needs extending.
//! * `complex`: a combination of DPV terms expresses the concept.
//! * `none`: DPV has no term, so one is minted in the extension namespace.
//!
//! This module verifies the table against a pinned catalog, counts the
//! categories and generates the extension terms. It never infers mappings.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Read;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::registry::{normalize_key, ConceptDefinition, ConceptRegistry};

pub const DPV_NAMESPACE: &str = "http://www.w3.org/ns/dpv#";
pub const DEFAULT_EXTENSION_NAMESPACE: &str = "https://w3id.org/ropa-model/ext#";

#[derive(Debug, Error)]
pub enum MappingError {
    #[error("mapping document is not valid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("failed to read mapping data: {0}")]
    Io(#[from] std::io::Error),
    #[error("catalog term `{0}` is listed twice")]
    DuplicateTerm(String),
    #[error("catalog term `{0}` is outside the DPV namespace")]
    ForeignTerm(String),
    #[error("concept `{0}` has no mapping entry")]
    UnmappedConcept(String),
    #[error("concept `{0}` has more than one mapping entry")]
    DuplicateEntry(String),
    #[error("mapping entry `{0}` names a concept missing from the registry")]
    UnknownConcept(String),
    #[error("registry concept `{0}` is not covered by the mapping table")]
    CoverageGap(String),
    #[error("mapping entry `{concept}` cites `{iri}`, which the catalog does not contain")]
    DanglingIri { concept: String, iri: String },
    #[error("mapping entry `{concept}` is malformed: {reason}")]
    MalformedEntry { concept: String, reason: String },
    #[error("extension labels for `{first}` and `{second}` both derive `{iri}`")]
    ExtensionCollision {
        iri: String,
        first: String,
        second: String,
    },
    #[error("concept `{0}` has no specified-value counts")]
    CountsUnavailable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Class,
    Property,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpvTerm {
    pub iri: String,
    pub label: String,
    pub kind: TermKind,
}

#[derive(Serialize, Deserialize)]
struct CatalogDocument {
    snapshot_date: NaiveDate,
    terms: Vec<DpvTerm>,
}

/// A pinned snapshot of DPV term IRIs and labels.
#[derive(Debug, Clone)]
pub struct DpvCatalog {
    snapshot_date: NaiveDate,
    terms: Vec<DpvTerm>,
    index: HashMap<String, usize>,
}

impl DpvCatalog {
    pub fn new(snapshot_date: NaiveDate, terms: Vec<DpvTerm>) -> Result<Self, MappingError> {
        let mut index = HashMap::with_capacity(terms.len());
        for (i, t) in terms.iter().enumerate() {
            if !t.iri.starts_with(DPV_NAMESPACE) {
                return Err(MappingError::ForeignTerm(t.iri.clone()));
            }
            if index.insert(t.iri.clone(), i).is_some() {
                return Err(MappingError::DuplicateTerm(t.iri.clone()));
            }
        }
        Ok(DpvCatalog { snapshot_date, terms, index })
    }

    pub fn from_reader(source: impl Read) -> Result<Self, MappingError> {
        let doc: CatalogDocument = serde_json::from_reader(source)?;
        Self::new(doc.snapshot_date, doc.terms)
    }

    pub fn from_json(text: &str) -> Result<Self, MappingError> {
        Self::from_reader(text.as_bytes())
    }

    pub fn snapshot_date(&self) -> NaiveDate {
        self.snapshot_date
    }

    pub fn terms(&self) -> &[DpvTerm] {
        &self.terms
    }

    pub fn contains(&self, iri: &str) -> bool {
        self.index.contains_key(iri)
    }

    pub fn term(&self, iri: &str) -> Option<&DpvTerm> {
        self.index.get(iri).map(|&i| &self.terms[i])
    }

    /// Term whose label equals `label` after header normalization.
    pub fn term_by_label(&self, label: &str) -> Option<&DpvTerm> {
        let key = normalize_key(label);
        self.terms.iter().find(|t| normalize_key(&t.label) == key)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MappingCategory {
    Exact,
    Partial,
    Complex,
    None,
}

impl MappingCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            MappingCategory::Exact => "exact",
            MappingCategory::Partial => "partial",
            MappingCategory::Complex => "complex",
            MappingCategory::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingEntry {
    pub concept_name: String,
    pub category: MappingCategory,
    pub target_iris: Vec<String>,
    #[serde(default)]
    pub extension_note: String,
    #[serde(default)]
    pub specified_value_count: Option<u32>,
    #[serde(default)]
    pub dpv_property_count: Option<u32>,
}

impl MappingEntry {
    /// Structural rules that hold for any entry regardless of catalog.
    pub fn check_shape(&self) -> Result<(), MappingError> {
        let fail = |reason: &str| {
            Err(MappingError::MalformedEntry {
                concept: self.concept_name.clone(),
                reason: reason.to_string(),
            })
        };
        let n = self.target_iris.len();
        match self.category {
            MappingCategory::Exact | MappingCategory::Partial | MappingCategory::None if n != 1 => {
                return fail("exact, partial and none entries carry exactly one IRI")
            }
            MappingCategory::Complex if n < 2 => return fail("complex entries carry at least two IRIs"),
            _ => {}
        }
        let note_empty = self.extension_note.trim().is_empty();
        match self.category {
            MappingCategory::Exact if !note_empty => return fail("exact entries take no extension note"),
            MappingCategory::Partial | MappingCategory::None if note_empty => {
                return fail("partial and none entries need an extension note")
            }
            _ => {}
        }
        let in_dpv = self.target_iris.iter().map(|i| i.starts_with(DPV_NAMESPACE));
        match self.category {
            MappingCategory::None if self.target_iris[0].starts_with(DPV_NAMESPACE) => {
                fail("a none entry's IRI must lie outside the DPV namespace")
            }
            MappingCategory::None => Ok(()),
            _ if in_dpv.clone().any(|d| !d) => fail("non-none entries may only cite DPV IRIs"),
            _ => Ok(()),
        }
    }
}

fn expand_curie(value: &str, extension_namespace: &str) -> String {
    if let Some(local) = value.strip_prefix("dpv:") {
        format!("{DPV_NAMESPACE}{local}")
    } else if let Some(local) = value.strip_prefix("ext:") {
        format!("{extension_namespace}{local}")
    } else {
        value.to_string()
    }
}

/// Reads a mapping table (a JSON array of entries). Target IRIs may be
/// written in full or as `dpv:` / `ext:` prefixed names; `ext:` expands
/// under `extension_namespace`.
pub fn load_mapping_table(
    source: impl Read,
    extension_namespace: &str,
) -> Result<Vec<MappingEntry>, MappingError> {
    let mut entries: Vec<MappingEntry> = serde_json::from_reader(source)?;
    let mut seen = HashSet::new();
    for entry in &mut entries {
        for iri in &mut entry.target_iris {
            *iri = expand_curie(iri, extension_namespace);
        }
        entry.check_shape()?;
        if !seen.insert(entry.concept_name.clone()) {
            return Err(MappingError::DuplicateEntry(entry.concept_name.clone()));
        }
        if entry.category == MappingCategory::None
            && !entry.target_iris[0].starts_with(extension_namespace)
        {
            return Err(MappingError::MalformedEntry {
                concept: entry.concept_name.clone(),
                reason: format!("none entry outside extension namespace `{extension_namespace}`"),
            });
        }
    }
    Ok(entries)
}

/// Returns the table's entry for `concept` after checking it against the
/// catalog: DPV IRIs must exist there, extension IRIs must not.
pub fn classify(
    concept: &ConceptDefinition,
    catalog: &DpvCatalog,
    mapping_table: &[MappingEntry],
) -> Result<MappingEntry, MappingError> {
    let entry = mapping_table
        .iter()
        .find(|e| e.concept_name == concept.name)
        .ok_or_else(|| MappingError::UnmappedConcept(concept.name.clone()))?;
    entry.check_shape()?;
    for iri in &entry.target_iris {
        let is_dpv = iri.starts_with(DPV_NAMESPACE);
        if is_dpv != catalog.contains(iri) {
            return Err(MappingError::DanglingIri {
                concept: concept.name.clone(),
                iri: iri.clone(),
            });
        }
    }
    Ok(entry.clone())
}

/// Per-category counts over a table covering the registry.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingCensus {
    pub exact_count: usize,
    pub partial_count: usize,
    pub complex_count: usize,
    pub none_count: usize,
}

impl MappingCensus {
    pub fn total(&self) -> usize {
        self.exact_count + self.partial_count + self.complex_count + self.none_count
    }

    pub fn count(&self, category: MappingCategory) -> usize {
        match category {
            MappingCategory::Exact => self.exact_count,
            MappingCategory::Partial => self.partial_count,
            MappingCategory::Complex => self.complex_count,
            MappingCategory::None => self.none_count,
        }
    }
}

/// Counts categories; the table must cover exactly the registry's concepts.
pub fn mapping_census(
    mapping_table: &[MappingEntry],
    registry: &ConceptRegistry,
) -> Result<MappingCensus, MappingError> {
    check_coverage(mapping_table, registry)?;
    let mut census = MappingCensus::default();
    for entry in mapping_table {
        *match entry.category {
            MappingCategory::Exact => &mut census.exact_count,
            MappingCategory::Partial => &mut census.partial_count,
            MappingCategory::Complex => &mut census.complex_count,
            MappingCategory::None => &mut census.none_count,
        } += 1;
    }
    Ok(census)
}

pub fn check_coverage(
    mapping_table: &[MappingEntry],
    registry: &ConceptRegistry,
) -> Result<(), MappingError> {
    let mut mapped = HashSet::new();
    for entry in mapping_table {
        if registry.concept(&entry.concept_name).is_none() {
            return Err(MappingError::UnknownConcept(entry.concept_name.clone()));
        }
        if !mapped.insert(entry.concept_name.as_str()) {
            return Err(MappingError::DuplicateEntry(entry.concept_name.clone()));
        }
    }
    match registry.concepts().iter().find(|c| !mapped.contains(c.name.as_str())) {
        Some(c) => Err(MappingError::CoverageGap(c.name.clone())),
        None => Ok(()),
    }
}

/// Classifies every registry concept; fails on the first problem.
pub fn verify_table(
    registry: &ConceptRegistry,
    catalog: &DpvCatalog,
    mapping_table: &[MappingEntry],
) -> Result<(), MappingError> {
    check_coverage(mapping_table, registry)?;
    registry
        .concepts()
        .iter()
        .try_for_each(|c| classify(c, catalog, mapping_table).map(drop))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionTerm {
    pub iri: String,
    pub label: String,
    pub definition: String,
}

/// CamelCase local name: alphanumeric runs, each with its first letter
/// upper-cased and the rest kept as written.
pub fn camel_case(label: &str) -> String {
    label
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(|w| {
            let mut chars = w.chars();
            let first = chars.next().expect("non-empty word");
            first.to_uppercase().chain(chars).collect::<String>()
        })
        .collect()
}

/// One extension term per `none` entry, labelled with the concept's display
/// name. The derived IRI must agree with the entry's target.
pub fn extension_terms(
    mapping_table: &[MappingEntry],
    registry: &ConceptRegistry,
    extension_namespace: &str,
) -> Result<Vec<ExtensionTerm>, MappingError> {
    let labelled = mapping_table
        .iter()
        .filter(|e| e.category == MappingCategory::None)
        .map(|e| {
            registry
                .concept(&e.concept_name)
                .map(|c| (c.display_name.as_str(), e))
                .ok_or_else(|| MappingError::UnknownConcept(e.concept_name.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let terms = derive_extension_terms(labelled.iter().copied(), extension_namespace)?;
    for ((_, entry), term) in labelled.iter().zip(&terms) {
        if entry.target_iris[0] != term.iri {
            return Err(MappingError::MalformedEntry {
                concept: entry.concept_name.clone(),
                reason: format!("target `{}` differs from derived `{}`", entry.target_iris[0], term.iri),
            });
        }
    }
    Ok(terms)
}

/// IRI derivation behind [`extension_terms`]; labels whose CamelCase forms
/// coincide are a collision.
pub fn derive_extension_terms<'a>(
    labelled: impl IntoIterator<Item = (&'a str, &'a MappingEntry)>,
    extension_namespace: &str,
) -> Result<Vec<ExtensionTerm>, MappingError> {
    let mut owners: BTreeMap<String, String> = BTreeMap::new();
    let mut terms = Vec::new();
    for (label, entry) in labelled {
        if entry.category != MappingCategory::None {
            continue;
        }
        let iri = format!("{extension_namespace}{}", camel_case(label));
        if let Some(first) = owners.insert(iri.clone(), entry.concept_name.clone()) {
            return Err(MappingError::ExtensionCollision {
                iri,
                first,
                second: entry.concept_name.clone(),
            });
        }
        terms.push(ExtensionTerm {
            iri,
            label: label.to_string(),
            definition: entry.extension_note.clone(),
        });
    }
    Ok(terms)
}

/// The recorded pair of template-value and DPV-value counts. The pair is
/// reported as is; no ratio is derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueCoverage {
    pub template_values: u32,
    pub dpv_values: u32,
}

pub fn value_coverage(
    concept: &ConceptDefinition,
    entry: &MappingEntry,
) -> Result<ValueCoverage, MappingError> {
    match (concept.specified().is_empty(), entry.specified_value_count, entry.dpv_property_count) {
        (false, Some(template_values), Some(dpv_values)) => Ok(ValueCoverage {
            template_values,
            dpv_values,
        }),
        _ => Err(MappingError::CountsUnavailable(concept.name.clone())),
    }
}

/// Counts a concept's specified values and how many of them name a catalog
/// term (label match after normalization). `None` for unconstrained concepts.
pub fn count_value_coverage(concept: &ConceptDefinition, catalog: &DpvCatalog) -> Option<ValueCoverage> {
    let values = concept.specified();
    if values.is_empty() {
        return None;
    }
    let matched = values.iter().filter(|v| catalog.term_by_label(v).is_some()).count();
    Some(ValueCoverage {
        template_values: values.len() as u32,
        dpv_values: matched as u32,
    })
}
