//! The concept registry: the consolidated set of ROPA concepts and the
//! synonym index used to resolve template headers onto them.

use std::collections::HashMap;
use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("registry must contain at least one concept")]
    Empty,
    #[error("duplicate concept name `{0}`")]
    DuplicateName(String),
    #[error("header key `{key}` is claimed by both `{first}` and `{second}`")]
    SynonymCollision {
        key: String,
        first: String,
        second: String,
    },
    #[error("concept `{concept}` violates a registry constraint: {reason}")]
    ConstraintViolation { concept: String, reason: String },
    #[error("registry document is not valid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("failed to read registry: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cardinality {
    Single,
    Multi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueKind {
    FreeText,
    Party,
    DateOrDuration,
    Enumerated,
    Boolean,
    Reference,
}

/// One consolidated ROPA concept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptDefinition {
    /// Canonical lower-snake identifier.
    pub name: String,
    pub display_name: String,
    /// Header strings observed across regulator templates.
    #[serde(default)]
    pub synonyms: Vec<String>,
    /// GDPR citations such as `30.1(b)`.
    #[serde(default)]
    pub article30_refs: Vec<String>,
    pub mandatory_art30: bool,
    pub cardinality: Cardinality,
    pub value_kind: ValueKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub specified_values: Option<Vec<String>>,
}

impl ConceptDefinition {
    /// Convenience constructor for a free-text concept with no citations.
    pub fn free_text(name: &str, display_name: &str) -> Self {
        ConceptDefinition {
            name: name.to_string(),
            display_name: display_name.to_string(),
            synonyms: Vec::new(),
            article30_refs: Vec::new(),
            mandatory_art30: false,
            cardinality: Cardinality::Multi,
            value_kind: ValueKind::FreeText,
            specified_values: None,
        }
    }

    /// The controlled value list, empty when the concept is unconstrained.
    pub fn specified(&self) -> &[String] {
        self.specified_values.as_deref().unwrap_or(&[])
    }

    fn lookup_keys(&self) -> impl Iterator<Item = String> + '_ {
        std::iter::once(self.name.as_str())
            .chain(std::iter::once(self.display_name.as_str()))
            .chain(self.synonyms.iter().map(String::as_str))
            .map(normalize_key)
    }

    fn check(&self) -> Result<(), RegistryError> {
        let fail = |reason: &str| {
            Err(RegistryError::ConstraintViolation {
                concept: self.name.clone(),
                reason: reason.to_string(),
            })
        };
        if !is_lower_snake(&self.name) {
            return fail("name must be a lower-snake token");
        }
        if self.display_name.trim().is_empty() {
            return fail("display_name must not be empty");
        }
        if !self.specified().is_empty() && self.value_kind != ValueKind::Enumerated {
            return fail("specified_values require value_kind = enumerated");
        }
        if self.mandatory_art30 && self.article30_refs.is_empty() {
            return fail("a mandatory Article 30 field needs at least one article reference");
        }
        Ok(())
    }
}

fn is_lower_snake(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && s.chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// Header normalization shared by the registry and template profiles:
/// surrounding whitespace (and a stray byte-order mark) removed, then
/// lower-cased.
pub fn normalize_key(s: &str) -> String {
    s.trim_matches(|c: char| c.is_whitespace() || c == '\u{feff}')
        .to_lowercase()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryCensus {
    pub total: usize,
    pub mandatory: usize,
    pub with_specified_values: usize,
}

#[derive(Serialize, Deserialize)]
struct RegistryDocument {
    version: String,
    concepts: Vec<ConceptDefinition>,
}

/// An immutable, validated set of concepts.
#[derive(Debug, Clone)]
pub struct ConceptRegistry {
    version: String,
    concepts: Vec<ConceptDefinition>,
    by_name: HashMap<String, usize>,
    by_key: HashMap<String, usize>,
}

impl PartialEq for ConceptRegistry {
    fn eq(&self, other: &Self) -> bool {
        self.version == other.version && self.concepts == other.concepts
    }
}

impl Eq for ConceptRegistry {}

/// Validates `definitions` and indexes every name, display name and synonym.
pub fn build_registry(
    definitions: Vec<ConceptDefinition>,
    version: impl Into<String>,
) -> Result<ConceptRegistry, RegistryError> {
    if definitions.is_empty() {
        return Err(RegistryError::Empty);
    }
    let mut by_name = HashMap::with_capacity(definitions.len());
    let mut by_key: HashMap<String, usize> = HashMap::new();
    for (idx, def) in definitions.iter().enumerate() {
        if by_name.insert(def.name.clone(), idx).is_some() {
            return Err(RegistryError::DuplicateName(def.name.clone()));
        }
        def.check()?;
        for key in def.lookup_keys() {
            match by_key.get(&key) {
                Some(&other) if other != idx => {
                    return Err(RegistryError::SynonymCollision {
                        key,
                        first: definitions[other].name.clone(),
                        second: def.name.clone(),
                    });
                }
                Some(_) => {}
                None => {
                    by_key.insert(key, idx);
                }
            }
        }
    }
    Ok(ConceptRegistry {
        version: version.into(),
        concepts: definitions,
        by_name,
        by_key,
    })
}

impl ConceptRegistry {
    /// Reads a `{version, concepts}` JSON document.
    pub fn from_reader(source: impl Read) -> Result<Self, RegistryError> {
        let doc: RegistryDocument = serde_json::from_reader(source)?;
        build_registry(doc.concepts, doc.version)
    }

    pub fn from_json(text: &str) -> Result<Self, RegistryError> {
        Self::from_reader(text.as_bytes())
    }

    pub fn to_json(&self) -> String {
        let doc = RegistryDocument {
            version: self.version.clone(),
            concepts: self.concepts.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("registry serializes")
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn concepts(&self) -> &[ConceptDefinition] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// Exact lookup by canonical name.
    pub fn concept(&self, name: &str) -> Option<&ConceptDefinition> {
        self.by_name.get(name).map(|&i| &self.concepts[i])
    }

    /// Resolves a template header against names, display names and synonyms.
    /// Matching is exact after [`normalize_key`]; there is no fuzzy fallback.
    pub fn lookup_concept(&self, header: &str) -> Option<&ConceptDefinition> {
        self.by_key
            .get(&normalize_key(header))
            .map(|&i| &self.concepts[i])
    }

    pub fn mandatory(&self) -> impl Iterator<Item = &ConceptDefinition> {
        self.concepts.iter().filter(|c| c.mandatory_art30)
    }

    pub fn census(&self) -> RegistryCensus {
        RegistryCensus {
            total: self.concepts.len(),
            mandatory: self.mandatory().count(),
            with_specified_values: self
                .concepts
                .iter()
                .filter(|c| !c.specified().is_empty())
                .count(),
        }
    }
}

/// Free-function form of [`ConceptRegistry::lookup_concept`].
pub fn lookup_concept<'r>(
    registry: &'r ConceptRegistry,
    header: &str,
) -> Option<&'r ConceptDefinition> {
    registry.lookup_concept(header)
}

/// Free-function form of [`ConceptRegistry::census`].
pub fn registry_census(registry: &ConceptRegistry) -> RegistryCensus {
    registry.census()
}
