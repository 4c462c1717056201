//! Records of processing activities and the parties named on them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::registry::ConceptRegistry;

/// The six regulator templates the consolidated model was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Jurisdiction {
    BE,
    CY,
    DK,
    FI,
    LU,
    UK,
}

impl Jurisdiction {
    pub const ALL: [Jurisdiction; 6] = [
        Jurisdiction::BE,
        Jurisdiction::CY,
        Jurisdiction::DK,
        Jurisdiction::FI,
        Jurisdiction::LU,
        Jurisdiction::UK,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Jurisdiction::BE => "BE",
            Jurisdiction::CY => "CY",
            Jurisdiction::DK => "DK",
            Jurisdiction::FI => "FI",
            Jurisdiction::LU => "LU",
            Jurisdiction::UK => "UK",
        }
    }
}

impl fmt::Display for Jurisdiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown jurisdiction code `{0}`")]
pub struct UnknownJurisdiction(pub String);

impl FromStr for Jurisdiction {
    type Err = UnknownJurisdiction;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Jurisdiction::ALL
            .into_iter()
            .find(|j| j.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownJurisdiction(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartyRole {
    Controller,
    JointController,
    Representative,
    Dpo,
    Processor,
    Recipient,
}

impl PartyRole {
    pub const ALL: [PartyRole; 6] = [
        PartyRole::Controller,
        PartyRole::JointController,
        PartyRole::Representative,
        PartyRole::Dpo,
        PartyRole::Processor,
        PartyRole::Recipient,
    ];
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Contact {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub address: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub email: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phone: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Party {
    pub role: PartyRole,
    pub name: String,
    #[serde(default)]
    pub contact: Contact,
}

/// One processing activity: concept name to cell values, plus parties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RopaRecord {
    pub record_id: String,
    pub jurisdiction: Jurisdiction,
    #[serde(default)]
    pub values: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub parties: Vec<Party>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecordError {
    #[error("record `{record_id}` carries unknown concept `{concept}`")]
    UnresolvedValue { record_id: String, concept: String },
    #[error("record `{record_id}` has a {role:?} party with an empty name")]
    EmptyPartyName { record_id: String, role: PartyRole },
    #[error("record id `{0}` appears more than once")]
    DuplicateRecordId(String),
}

impl RopaRecord {
    pub fn new(record_id: impl Into<String>, jurisdiction: Jurisdiction) -> Self {
        RopaRecord {
            record_id: record_id.into(),
            jurisdiction,
            values: BTreeMap::new(),
            parties: Vec::new(),
        }
    }

    /// Builder-style helper used heavily in tests and fixtures.
    pub fn with_values<I, S>(mut self, concept: &str, values: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.values
            .entry(concept.to_string())
            .or_default()
            .extend(values.into_iter().map(Into::into));
        self
    }

    pub fn values_of(&self, concept: &str) -> &[String] {
        self.values.get(concept).map(Vec::as_slice).unwrap_or(&[])
    }

    /// A field counts as present when at least one value is not blank.
    pub fn has_value(&self, concept: &str) -> bool {
        self.values_of(concept).iter().any(|v| !v.trim().is_empty())
    }

    /// Checks that every value key resolves and every party is named.
    pub fn check_structure(&self, registry: &ConceptRegistry) -> Result<(), RecordError> {
        if let Some(concept) = self.values.keys().find(|k| registry.concept(k).is_none()) {
            return Err(RecordError::UnresolvedValue {
                record_id: self.record_id.clone(),
                concept: concept.clone(),
            });
        }
        if let Some(p) = self.parties.iter().find(|p| p.name.trim().is_empty()) {
            return Err(RecordError::EmptyPartyName {
                record_id: self.record_id.clone(),
                role: p.role,
            });
        }
        Ok(())
    }

    /// Values sorted per concept, empty lists dropped and parties sorted.
    /// Two records describe the same activity iff their normalized forms are equal.
    pub fn normalized(&self) -> RopaRecord {
        let values = self
            .values
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(k, v)| {
                let mut v = v.clone();
                v.sort();
                (k.clone(), v)
            })
            .collect();
        let mut parties = self.parties.clone();
        parties.sort();
        RopaRecord {
            record_id: self.record_id.clone(),
            jurisdiction: self.jurisdiction,
            values,
            parties,
        }
    }
}

/// Structural check over a whole dataset, including record-id uniqueness.
pub fn check_dataset(records: &[RopaRecord], registry: &ConceptRegistry) -> Result<(), RecordError> {
    let mut seen = std::collections::HashSet::new();
    for r in records {
        if !seen.insert(r.record_id.as_str()) {
            return Err(RecordError::DuplicateRecordId(r.record_id.clone()));
        }
        r.check_structure(registry)?;
    }
    Ok(())
}
