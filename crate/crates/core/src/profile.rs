//! Jurisdiction profiles: the machine-readable description of one
//! regulator's ROPA template.

use std::collections::{BTreeMap, HashSet};
use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::Jurisdiction;
use crate::registry::{normalize_key, ConceptRegistry, ValueKind};

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("profile document is not valid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("profile {profile}: concept `{concept}` is not in the registry")]
    UnresolvedConcept {
        profile: Jurisdiction,
        concept: String,
    },
    #[error("profile {profile} is inconsistent: {reason}")]
    Inconsistency {
        profile: Jurisdiction,
        reason: String,
    },
    #[error("failed to read profile: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnMapping {
    pub column_header: String,
    pub concept_name: String,
    /// Set when the column was reconstructed rather than quoted from the
    /// regulator's published template.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reconstructed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JurisdictionProfile {
    pub code: Jurisdiction,
    pub display_name: String,
    pub column_map: Vec<ColumnMapping>,
    pub required_concepts: Vec<String>,
    #[serde(default)]
    pub controlled_vocabularies: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub art30_transcription_only: bool,
}

/// Parses a profile document and validates it against `registry`.
pub fn load_profile(
    source: impl Read,
    registry: &ConceptRegistry,
) -> Result<JurisdictionProfile, ProfileError> {
    let profile: JurisdictionProfile = serde_json::from_reader(source)?;
    profile.check(registry)?;
    Ok(profile)
}

impl JurisdictionProfile {
    pub fn check(&self, registry: &ConceptRegistry) -> Result<(), ProfileError> {
        let inconsistent = |reason: String| ProfileError::Inconsistency {
            profile: self.code,
            reason,
        };
        let unresolved = |concept: &str| ProfileError::UnresolvedConcept {
            profile: self.code,
            concept: concept.to_string(),
        };

        let mut headers = HashSet::new();
        let mut mapped = HashSet::new();
        for col in &self.column_map {
            if registry.concept(&col.concept_name).is_none() {
                return Err(unresolved(&col.concept_name));
            }
            if !headers.insert(normalize_key(&col.column_header)) {
                return Err(inconsistent(format!(
                    "column header `{}` appears twice",
                    col.column_header
                )));
            }
            if !mapped.insert(col.concept_name.as_str()) {
                return Err(inconsistent(format!(
                    "concept `{}` is mapped by more than one column",
                    col.concept_name
                )));
            }
        }
        for req in &self.required_concepts {
            if registry.concept(req).is_none() {
                return Err(unresolved(req));
            }
            if !mapped.contains(req.as_str()) {
                return Err(inconsistent(format!(
                    "required concept `{req}` has no column"
                )));
            }
        }
        for concept in self.controlled_vocabularies.keys() {
            let def = registry.concept(concept).ok_or_else(|| unresolved(concept))?;
            if !mapped.contains(concept.as_str()) {
                return Err(inconsistent(format!(
                    "controlled vocabulary for `{concept}` which has no column"
                )));
            }
            if def.value_kind != ValueKind::Enumerated {
                return Err(inconsistent(format!(
                    "controlled vocabulary on non-enumerated concept `{concept}`"
                )));
            }
        }
        if self.art30_transcription_only {
            let mandatory: HashSet<&str> = registry.mandatory().map(|c| c.name.as_str()).collect();
            if mapped != mandatory {
                return Err(inconsistent(
                    "an Article 30 transcription must map exactly the mandatory concepts".into(),
                ));
            }
        }
        Ok(())
    }

    /// Concepts referenced by the template, in column order.
    pub fn concepts(&self) -> impl Iterator<Item = &str> {
        self.column_map.iter().map(|c| c.concept_name.as_str())
    }

    pub fn maps_concept(&self, concept: &str) -> bool {
        self.concepts().any(|c| c == concept)
    }

    pub fn requires(&self, concept: &str) -> bool {
        self.required_concepts.iter().any(|c| c == concept)
    }

    /// Resolves a header through the column map only.
    pub fn column_concept(&self, header: &str) -> Option<&str> {
        let key = normalize_key(header);
        self.column_map
            .iter()
            .find(|c| normalize_key(&c.column_header) == key)
            .map(|c| c.concept_name.as_str())
    }

    pub fn vocabulary(&self, concept: &str) -> &[String] {
        self.controlled_vocabularies
            .get(concept)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shipped;

    fn profile_json(body: &str) -> String {
        format!(
            r#"{{"code":"FI","display_name":"test","column_map":[{body}],"required_concepts":[]}}"#
        )
    }

    #[test]
    fn unknown_concept_is_unresolved() {
        let reg = shipped::registry();
        let doc = profile_json(r#"{"column_header":"Galaxy","concept_name":"galactic_id"}"#);
        match load_profile(doc.as_bytes(), &reg) {
            Err(ProfileError::UnresolvedConcept { concept, .. }) => assert_eq!(concept, "galactic_id"),
            other => panic!("expected unresolved-concept, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_concept_columns_are_inconsistent() {
        let reg = shipped::registry();
        let doc = profile_json(
            r#"{"column_header":"Risk","concept_name":"risk"},{"column_header":"Risks","concept_name":"risk"}"#,
        );
        assert!(matches!(
            load_profile(doc.as_bytes(), &reg),
            Err(ProfileError::Inconsistency { .. })
        ));
    }

    #[test]
    fn transcription_flag_requires_the_mandatory_set() {
        let reg = shipped::registry();
        let mut p = shipped::profile(Jurisdiction::FI);
        p.column_map.pop();
        p.required_concepts.pop();
        assert!(matches!(p.check(&reg), Err(ProfileError::Inconsistency { .. })));
    }

    #[test]
    fn required_must_be_mapped() {
        let reg = shipped::registry();
        let mut p = shipped::profile(Jurisdiction::FI);
        p.art30_transcription_only = false;
        p.required_concepts.push("risk".into());
        assert!(matches!(p.check(&reg), Err(ProfileError::Inconsistency { .. })));
    }

    #[test]
    fn vocabulary_only_on_enumerated_concepts() {
        let reg = shipped::registry();
        let mut p = shipped::profile(Jurisdiction::BE);
        p.controlled_vocabularies
            .insert("processing_operations".into(), vec!["Collection".into()]);
        assert!(matches!(p.check(&reg), Err(ProfileError::Inconsistency { .. })));
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        let reg = shipped::registry();
        assert!(matches!(
            load_profile(&b"{not json"[..], &reg),
            Err(ProfileError::Parse(_))
        ));
    }
}
