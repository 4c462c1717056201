//! Per-jurisdiction validation and cross-jurisdiction gap analysis.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::model::{Jurisdiction, RopaRecord};
use crate::profile::JurisdictionProfile;
use crate::registry::{Cardinality, ConceptDefinition, ConceptRegistry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationCode {
    MissingMandatory,
    MissingJurisdictionRequired,
    VocabularyViolation,
    CardinalityViolation,
    UnknownConcept,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::MissingMandatory => "missing_mandatory",
            ViolationCode::MissingJurisdictionRequired => "missing_jurisdiction_required",
            ViolationCode::VocabularyViolation => "vocabulary_violation",
            ViolationCode::CardinalityViolation => "cardinality_violation",
            ViolationCode::UnknownConcept => "unknown_concept",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            ViolationCode::UnknownConcept => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    /// The offending concept, or the raw key for `unknown_concept`.
    pub concept_name: String,
    pub record_id: String,
    pub severity: Severity,
    pub detail: String,
}

impl Violation {
    fn new(code: ViolationCode, record_id: &str, concept_name: &str, detail: String) -> Self {
        Violation {
            code,
            concept_name: concept_name.to_string(),
            record_id: record_id.to_string(),
            severity: code.severity(),
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub jurisdiction: Jurisdiction,
    pub violations: Vec<Violation>,
    pub records_checked: usize,
    pub compliant: bool,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.severity == Severity::Error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = if self.compliant { "COMPLIANT" } else { "NON-COMPLIANT" };
        let errors = self.errors().count();
        let _ = writeln!(
            out,
            "{}: {status} ({} records, {errors} errors, {} warnings)",
            self.jurisdiction,
            self.records_checked,
            self.violations.len() - errors,
        );
        if self.violations.is_empty() {
            return out;
        }
        let width = |f: fn(&Violation) -> &str, title: &str| {
            self.violations.iter().map(|v| f(v).chars().count()).chain([title.len()]).max().unwrap_or(0)
        };
        let rw = width(|v| &v.record_id, "record");
        let cw = width(|v| &v.concept_name, "concept");
        let kw = width(|v| v.code.as_str(), "code");
        let _ = writeln!(out, "  {:rw$}  {:cw$}  {:kw$}  {:7}  detail", "record", "concept", "code", "level");
        for v in &self.violations {
            let level = match v.severity {
                Severity::Error => "error",
                Severity::Warning => "warning",
            };
            let _ = writeln!(
                out,
                "  {:rw$}  {:cw$}  {:kw$}  {:7}  {}",
                v.record_id,
                v.concept_name,
                v.code.as_str(),
                level,
                v.detail
            );
        }
        out
    }
}

/// Membership test of one value against the concept's specified values and
/// the profile's vocabulary for it. Concepts with neither accept anything.
/// The returned violation has an empty `record_id`.
pub fn check_vocabulary(
    value: &str,
    concept: &ConceptDefinition,
    profile: &JurisdictionProfile,
) -> Result<(), Violation> {
    let specified = concept.specified();
    let extra = profile.vocabulary(&concept.name);
    if specified.is_empty() && extra.is_empty() {
        return Ok(());
    }
    let wanted = value.trim().to_lowercase();
    if specified.iter().chain(extra).any(|allowed| allowed.trim().to_lowercase() == wanted) {
        return Ok(());
    }
    Err(Violation::new(
        ViolationCode::VocabularyViolation,
        "",
        &concept.name,
        format!("`{}` is not an accepted value for {}", value.trim(), concept.display_name),
    ))
}

fn validate_record(
    record: &RopaRecord,
    profile: &JurisdictionProfile,
    registry: &ConceptRegistry,
) -> Vec<Violation> {
    let id = record.record_id.as_str();
    let mut out = Vec::new();
    let mut missing = BTreeSet::new();
    for concept in registry.mandatory() {
        if !record.has_value(&concept.name) {
            missing.insert(concept.name.as_str());
            out.push(Violation::new(
                ViolationCode::MissingMandatory,
                id,
                &concept.name,
                format!("{} is mandatory and has no value", concept.display_name),
            ));
        }
    }
    for name in &profile.required_concepts {
        if !missing.contains(name.as_str()) && !record.has_value(name) {
            let display = registry.concept(name).map_or(name.as_str(), |c| c.display_name.as_str());
            out.push(Violation::new(
                ViolationCode::MissingJurisdictionRequired,
                id,
                name,
                format!("{display} is required by the {} template and has no value", profile.code),
            ));
        }
    }
    for (key, values) in &record.values {
        let Some(concept) = registry.concept(key) else {
            out.push(Violation::new(
                ViolationCode::UnknownConcept,
                id,
                key,
                format!("`{key}` is not a registered concept; its values are ignored"),
            ));
            continue;
        };
        let filled: Vec<&String> = values.iter().filter(|v| !v.trim().is_empty()).collect();
        if concept.cardinality == Cardinality::Single && filled.len() > 1 {
            out.push(Violation::new(
                ViolationCode::CardinalityViolation,
                id,
                key,
                format!("{} takes one value, found {}", concept.display_name, filled.len()),
            ));
        }
        for value in filled {
            if let Err(mut v) = check_vocabulary(value, concept, profile) {
                v.record_id = id.to_string();
                out.push(v);
            }
        }
    }
    // stable: several vocabulary violations on one concept keep value order
    out.sort_by(|a, b| (&a.concept_name, a.code.as_str()).cmp(&(&b.concept_name, b.code.as_str())));
    out
}

/// Validates every record against the profile. Violations are grouped by
/// record in input order and sorted by (concept, code) within a record, so
/// validating a concatenation yields the concatenated reports.
pub fn validate(
    records: &[RopaRecord],
    profile: &JurisdictionProfile,
    registry: &ConceptRegistry,
) -> ValidationReport {
    let violations: Vec<Violation> =
        records.iter().flat_map(|r| validate_record(r, profile, registry)).collect();
    let compliant = violations.iter().all(|v| v.severity != Severity::Error);
    ValidationReport {
        jurisdiction: profile.code,
        violations,
        records_checked: records.len(),
        compliant,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapStatus {
    Present,
    MissingRequired,
    MissingOptional,
    NotInTemplate,
}

impl GapStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            GapStatus::Present => "present",
            GapStatus::MissingRequired => "missing_required",
            GapStatus::MissingOptional => "missing_optional",
            GapStatus::NotInTemplate => "not_in_template",
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            GapStatus::Present => "+",
            GapStatus::MissingRequired => "!",
            GapStatus::MissingOptional => "?",
            GapStatus::NotInTemplate => ".",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapCell {
    pub concept_name: String,
    pub status: GapStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRow {
    pub jurisdiction: Jurisdiction,
    /// One cell per registry concept, in registry order.
    pub cells: Vec<GapCell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub records_checked: usize,
    pub rows: Vec<GapRow>,
}

impl GapReport {
    pub fn status(&self, jurisdiction: Jurisdiction, concept: &str) -> Option<GapStatus> {
        self.rows
            .iter()
            .find(|r| r.jurisdiction == jurisdiction)?
            .cells
            .iter()
            .find(|c| c.concept_name == concept)
            .map(|c| c.status)
    }

    pub fn count(&self, jurisdiction: Jurisdiction, status: GapStatus) -> usize {
        self.rows
            .iter()
            .filter(|r| r.jurisdiction == jurisdiction)
            .flat_map(|r| &r.cells)
            .filter(|c| c.status == status)
            .count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Concepts down, jurisdictions across. `+` present, `!` missing and
    /// required, `?` missing and optional, `.` not in the template.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let Some(first) = self.rows.first() else { return out };
        let width = first.cells.iter().map(|c| c.concept_name.len()).max().unwrap_or(0).max("concept".len());
        let _ = write!(out, "{:width$}", "concept");
        for row in &self.rows {
            let _ = write!(out, "  {}", row.jurisdiction);
        }
        out.push('\n');
        for (i, cell) in first.cells.iter().enumerate() {
            let mut line = format!("{:width$}", cell.concept_name);
            for row in &self.rows {
                let _ = write!(line, "  {:2}", row.cells[i].status.symbol());
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "\n{} records; + present, ! missing (required), ? missing (optional), . not in template",
            self.records_checked
        );
        out
    }
}

/// Classifies every registry concept for every profile, aggregated over all
/// records: `present` only when there is at least one record and every record
/// has a value for the concept.
pub fn gap_analysis(
    records: &[RopaRecord],
    profiles: &[JurisdictionProfile],
    registry: &ConceptRegistry,
) -> GapReport {
    let rows = profiles
        .iter()
        .map(|profile| GapRow {
            jurisdiction: profile.code,
            cells: registry
                .concepts()
                .iter()
                .map(|concept| {
                    let name = concept.name.as_str();
                    let status = if !profile.maps_concept(name) {
                        GapStatus::NotInTemplate
                    } else if !records.is_empty() && records.iter().all(|r| r.has_value(name)) {
                        GapStatus::Present
                    } else if concept.mandatory_art30 || profile.requires(name) {
                        GapStatus::MissingRequired
                    } else {
                        GapStatus::MissingOptional
                    };
                    GapCell { concept_name: name.to_string(), status }
                })
                .collect(),
        })
        .collect();
    GapReport { records_checked: records.len(), rows }
}
