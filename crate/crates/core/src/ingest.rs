//! CSV ingestion of regulator ROPA templates and export back into a
//! template's column layout.
//!
//! One data row is one processing activity. Headers resolve through the
//! profile's column map first and the registry's synonyms second; anything
//! else is reported and its cells dropped. Cells of multi-valued concepts
//! are split on `;`.

use std::collections::BTreeMap;
use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::RopaRecord;
use crate::profile::JurisdictionProfile;
use crate::registry::{Cardinality, ConceptRegistry};

pub const MULTI_VALUE_DELIMITER: char = ';';
pub const MULTI_VALUE_JOIN: &str = "; ";

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("malformed CSV: {0}")]
    Parse(#[from] csv::Error),
    #[error("CSV input has no header row")]
    HeaderRowMissing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknownHeader {
    pub column: usize,
    pub header: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoercionNote {
    pub record_id: String,
    pub concept_name: String,
    pub note: String,
}

/// Advisory findings from a parse. Nothing here changes record content.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestDiagnostics {
    pub unknown_headers: Vec<UnknownHeader>,
    pub empty_rows_skipped: usize,
    pub coercion_notes: Vec<CoercionNote>,
}

impl IngestDiagnostics {
    pub fn is_empty(&self) -> bool {
        self.unknown_headers.is_empty()
            && self.empty_rows_skipped == 0
            && self.coercion_notes.is_empty()
    }
}

/// Record ids are `<jurisdiction>-<data row number>`, numbered from 1 and
/// counting skipped empty rows, so ids track spreadsheet position.
pub fn record_id_for(profile: &JurisdictionProfile, data_row: usize) -> String {
    format!("{}-{:04}", profile.code, data_row)
}

pub fn parse_ropa_csv(
    source: impl Read,
    profile: &JurisdictionProfile,
    registry: &ConceptRegistry,
) -> Result<(Vec<RopaRecord>, IngestDiagnostics), IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(source);
    let mut rows = reader.records();
    let header = match rows.next() {
        Some(row) => row?,
        None => return Err(IngestError::HeaderRowMissing),
    };

    let mut diagnostics = IngestDiagnostics::default();
    let columns: Vec<Option<(&str, Cardinality)>> = header
        .iter()
        .enumerate()
        .map(|(column, h)| {
            let concept = profile
                .column_concept(h)
                .and_then(|name| registry.concept(name))
                .or_else(|| registry.lookup_concept(h));
            match concept {
                Some(def) => Some((def.name.as_str(), def.cardinality)),
                None => {
                    diagnostics.unknown_headers.push(UnknownHeader {
                        column,
                        header: h.to_string(),
                    });
                    None
                }
            }
        })
        .collect();

    let mut records = Vec::new();
    for (idx, row) in rows.enumerate() {
        let row = row?;
        if row.iter().all(|cell| cell.trim().is_empty()) {
            diagnostics.empty_rows_skipped += 1;
            continue;
        }
        let record_id = record_id_for(profile, idx + 1);
        let mut values: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let note = |diag: &mut IngestDiagnostics, concept: &str, note: String| {
            diag.coercion_notes.push(CoercionNote {
                record_id: record_id.clone(),
                concept_name: concept.to_string(),
                note,
            })
        };

        for (column, cell) in row.iter().enumerate() {
            let Some(&Some((concept, cardinality))) = columns.get(column) else {
                if column >= columns.len() && !cell.trim().is_empty() {
                    note(
                        &mut diagnostics,
                        "",
                        format!("cell in column {column} has no header and was dropped"),
                    );
                }
                continue;
            };
            let pieces: Vec<&str> = match cardinality {
                Cardinality::Multi => cell
                    .split(MULTI_VALUE_DELIMITER)
                    .map(str::trim)
                    .filter(|v| !v.is_empty())
                    .collect(),
                Cardinality::Single => Some(cell.trim()).filter(|v| !v.is_empty()).into_iter().collect(),
            };
            if pieces.is_empty() {
                continue;
            }
            let slot = values.entry(concept.to_string()).or_default();
            for piece in pieces {
                if slot.iter().any(|v| v == piece) {
                    note(&mut diagnostics, concept, format!("duplicate value `{piece}` dropped"));
                } else {
                    slot.push(piece.to_string());
                }
            }
            if cardinality == Cardinality::Single && slot.len() > 1 {
                note(
                    &mut diagnostics,
                    concept,
                    "several columns fill a single-valued concept".to_string(),
                );
            }
        }

        records.push(RopaRecord {
            record_id,
            jurisdiction: profile.code,
            values,
            parties: Vec::new(),
        });
    }
    Ok((records, diagnostics))
}

/// Writes `records` in the profile's column layout. Concepts the profile
/// has no column for are omitted.
pub fn export_template_csv(records: &[RopaRecord], profile: &JurisdictionProfile) -> Vec<u8> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer
        .write_record(profile.column_map.iter().map(|c| c.column_header.as_str()))
        .expect("writing to memory");
    for record in records {
        writer
            .write_record(
                profile
                    .concepts()
                    .map(|concept| record.values_of(concept).join(MULTI_VALUE_JOIN)),
            )
            .expect("writing to memory");
    }
    writer.into_inner().expect("flushing to memory")
}
