//! A small RDF graph model with deterministic serialization.
//!
//! Graphs hold a set of triples plus prefix bindings. Serialization sorts
//! triples by their canonical forms and relabels blank nodes in first-use
//! order, so the same graph always prints the same bytes regardless of the
//! labels it was built with.

mod canon;
mod emit;
mod syntax;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use canon::canonical_triples;
pub use emit::{EmitError, RdfMapper, JURISDICTION_LOCAL, PROCESSING_ACTIVITY_CLASS};
pub use syntax::{parse, serialize, Format, SyntaxError};

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const VCARD_NAMESPACE: &str = "http://www.w3.org/2006/vcard/ns#";
pub const XSD_NAMESPACE: &str = "http://www.w3.org/2001/XMLSchema#";
pub const DEFAULT_BASE_IRI: &str = "https://w3id.org/ropa-model/activity/";

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subject {
    Iri(String),
    Blank(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub lexical: String,
    pub datatype: Option<String>,
    pub language: Option<String>,
}

impl Literal {
    pub fn plain(lexical: impl Into<String>) -> Self {
        Literal { lexical: lexical.into(), datatype: None, language: None }
    }

    pub fn typed(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        Literal { lexical: lexical.into(), datatype: Some(datatype.into()), language: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Object {
    Iri(String),
    Blank(String),
    Literal(Literal),
}

impl Object {
    pub fn as_blank(&self) -> Option<&str> {
        match self {
            Object::Blank(b) => Some(b),
            _ => None,
        }
    }
}

/// A triple. The predicate is always an IRI; literals only occur as objects.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Subject,
    pub predicate: String,
    pub object: Object,
}

impl Triple {
    pub fn new(subject: Subject, predicate: impl Into<String>, object: Object) -> Self {
        Triple { subject, predicate: predicate.into(), object }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let subject = match &self.subject {
            Subject::Iri(i) => syntax::iri_ref(i),
            Subject::Blank(b) => format!("_:{b}"),
        };
        write!(f, "{subject} {} {} .", syntax::iri_ref(&self.predicate), syntax::object_nt(&self.object))
    }
}

/// Triples under set semantics plus prefix bindings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    namespaces: BTreeMap<String, String>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Returns false when the triple was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn bind(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) {
        self.namespaces.insert(prefix.into(), namespace.into());
    }

    pub fn namespaces(&self) -> &BTreeMap<String, String> {
        &self.namespaces
    }

    pub fn triples(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn blank_nodes(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for t in &self.triples {
            if let Subject::Blank(b) = &t.subject {
                out.insert(b.as_str());
            }
            if let Object::Blank(b) = &t.object {
                out.insert(b.as_str());
            }
        }
        out
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Graph { triples: iter.into_iter().collect(), namespaces: BTreeMap::new() }
    }
}
