//! Exit statuses. Every failure path funnels through [`Failure`] so the
//! process can only ever end with one of the five documented codes.

use std::fmt;
use std::process::ExitCode;

use ropa_core::mapping::MappingError;
use ropa_core::rdf::EmitError;

pub const OK: u8 = 0;
pub const NON_COMPLIANT: u8 = 1;
pub const INVALID_INPUT: u8 = 2;
pub const UNKNOWN_JURISDICTION: u8 = 3;
pub const COVERAGE_GAP: u8 = 4;

#[derive(Debug)]
pub enum Failure {
    /// Reports were written; at least one jurisdiction is non-compliant.
    NonCompliant,
    Invalid(String),
    UnknownJurisdiction(String),
    CoverageGap(String),
}

impl Failure {
    pub fn invalid(context: &str, err: impl fmt::Display) -> Self {
        Failure::Invalid(format!("{context}: {err}"))
    }

    pub fn code(&self) -> u8 {
        match self {
            Failure::NonCompliant => NON_COMPLIANT,
            Failure::Invalid(_) => INVALID_INPUT,
            Failure::UnknownJurisdiction(_) => UNKNOWN_JURISDICTION,
            Failure::CoverageGap(_) => COVERAGE_GAP,
        }
    }

    pub fn exit(self) -> ExitCode {
        match &self {
            Failure::NonCompliant => {}
            Failure::Invalid(m) | Failure::UnknownJurisdiction(m) | Failure::CoverageGap(m) => {
                eprintln!("error: {m}")
            }
        }
        ExitCode::from(self.code())
    }
}

impl From<MappingError> for Failure {
    fn from(err: MappingError) -> Self {
        match err {
            MappingError::CoverageGap(_) | MappingError::UnmappedConcept(_) => {
                Failure::CoverageGap(err.to_string())
            }
            other => Failure::invalid("mapping table", other),
        }
    }
}

impl From<EmitError> for Failure {
    fn from(err: EmitError) -> Self {
        match err {
            EmitError::Mapping(m) => m.into(),
            other => Failure::invalid("dataset", other),
        }
    }
}
