//! Consolidated model of the GDPR Register of Processing Activities (ROPA).
//!
//! The crate ingests regulator ROPA templates (CSV exports), normalizes them
//! into a 43-concept registry, maps those concepts onto the Data Privacy
//! Vocabulary (DPV), emits RDF and validates records per jurisdiction.
//!
//! Module map:
//!
//! | module        | role                                                   |
//! |---------------|--------------------------------------------------------|
//! | [`registry`]  | concept definitions, lookup by header, census          |
//! | [`model`]     | records, parties, jurisdictions                        |
//! | [`profile`]   | jurisdiction template profiles                         |
//! | [`ingest`]    | CSV template parsing and export                        |
//! | [`mapping`]   | DPV catalog, mapping table, extension terms            |
//! | [`rdf`]       | graph model, Turtle / N-Triples, record emission       |
//! | [`validation`]| per-jurisdiction checks and gap analysis               |
//! | [`shipped`]   | the default data files compiled into the crate         |

pub mod ingest;
pub mod mapping;
pub mod model;
pub mod profile;
pub mod rdf;
pub mod registry;
pub mod shipped;
pub mod validation;

pub use ingest::{export_template_csv, parse_ropa_csv, IngestDiagnostics, IngestError};
pub use mapping::{
    classify, extension_terms, mapping_census, value_coverage, DpvCatalog, MappingCategory,
    MappingCensus, MappingEntry, MappingError,
};
pub use model::{Contact, Jurisdiction, Party, PartyRole, RopaRecord};
pub use profile::{load_profile, JurisdictionProfile, ProfileError};
pub use registry::{
    build_registry, Cardinality, ConceptDefinition, ConceptRegistry, RegistryCensus,
    RegistryError, ValueKind,
};
pub use validation::{
    check_vocabulary, gap_analysis, validate, GapReport, GapStatus, Severity, ValidationReport,
    Violation, ViolationCode,
};
