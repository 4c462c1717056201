//! Records to RDF and back.
//!
//! Each record becomes an activity node `<base + record_id>` typed as the
//! DPV processing-activity class. Concept values hang off it according to
//! the concept's mapping entry:
//!
//! ```text
//! exact / partial / none   <act> <iri> "value"
//! complex [p1, p2, ...]    <act> <p1> _:n1 . _:n1 <p2> ... "value"
//! party                    <act> ext:has<Role> _:p . _:p vcard:fn "name"
//! ```
//!
//! The jurisdiction is carried as `ext:jurisdiction`. Literals are plain
//! unless the concept is a date/duration or boolean and the lexical form is
//! valid for the matching XSD datatype.

use std::collections::{BTreeMap, HashMap, HashSet};

use chrono::NaiveDate;
use thiserror::Error;

use super::{Graph, Literal, Object, Subject, Triple, RDF_TYPE, VCARD_NAMESPACE, XSD_NAMESPACE};
use crate::mapping::{self, DpvCatalog, MappingCategory, MappingEntry, MappingError, DPV_NAMESPACE};
use crate::model::{self, Contact, Party, PartyRole, RecordError, RopaRecord};
use crate::registry::{ConceptRegistry, ValueKind};

/// Local name, in the DPV namespace, of the class every activity is typed with.
pub const PROCESSING_ACTIVITY_CLASS: &str = "PersonalDataHandling";
/// Local name, in the extension namespace, of the jurisdiction property.
pub const JURISDICTION_LOCAL: &str = "jurisdiction";

#[derive(Debug, Error)]
pub enum EmitError {
    #[error(transparent)]
    Mapping(#[from] MappingError),
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error("catalog has no `{0}` class to type activities with")]
    MissingActivityClass(String),
    #[error("IRI `{0}` would identify more than one concept or role")]
    AmbiguousTarget(String),
    #[error("unrecognized predicate `{0}`")]
    UnrecognizedPredicate(String),
    #[error("subject `{0}` is not a processing activity under the configured base IRI")]
    UnrecognizedSubject(String),
    #[error("activity `{0}` has no jurisdiction")]
    MissingJurisdiction(String),
    #[error("activity `{subject}` is malformed: {reason}")]
    Malformed { subject: String, reason: String },
}

fn role_local(role: PartyRole) -> &'static str {
    match role {
        PartyRole::Controller => "hasController",
        PartyRole::JointController => "hasJointController",
        PartyRole::Representative => "hasRepresentative",
        PartyRole::Dpo => "hasDataProtectionOfficer",
        PartyRole::Processor => "hasProcessor",
        PartyRole::Recipient => "hasRecipient",
    }
}

const VCARD_FN: &str = "fn";
const VCARD_ADDRESS: &str = "hasAddress";
const VCARD_EMAIL: &str = "hasEmail";
const VCARD_PHONE: &str = "hasTelephone";

/// Verified view of the mapping table used to build and read graphs.
#[derive(Debug, Clone)]
pub struct RdfMapper<'r> {
    registry: &'r ConceptRegistry,
    base_iri: String,
    extension_namespace: String,
    activity_class: String,
    jurisdiction_iri: String,
    paths: HashMap<String, Vec<String>>,
    by_single: HashMap<String, String>,
    by_path: HashMap<Vec<String>, String>,
    path_heads: HashSet<String>,
    roles: HashMap<String, PartyRole>,
}

impl<'r> RdfMapper<'r> {
    /// Verifies the table against the registry and catalog and indexes it.
    /// Fails with a coverage gap, a dangling IRI, or an ambiguous target.
    pub fn new(
        registry: &'r ConceptRegistry,
        catalog: &DpvCatalog,
        mapping_table: &[MappingEntry],
        base_iri: &str,
        extension_namespace: &str,
    ) -> Result<Self, EmitError> {
        mapping::verify_table(registry, catalog, mapping_table)?;
        let activity_class = format!("{DPV_NAMESPACE}{PROCESSING_ACTIVITY_CLASS}");
        if !catalog.contains(&activity_class) {
            return Err(EmitError::MissingActivityClass(activity_class));
        }
        let jurisdiction_iri = format!("{extension_namespace}{JURISDICTION_LOCAL}");
        let roles: HashMap<String, PartyRole> = PartyRole::ALL
            .into_iter()
            .map(|r| (format!("{extension_namespace}{}", role_local(r)), r))
            .collect();

        let mut paths = HashMap::new();
        let mut by_single = HashMap::new();
        let mut by_path = HashMap::new();
        let mut path_heads = HashSet::new();
        let reserved = |iri: &str| iri == jurisdiction_iri || iri == RDF_TYPE || roles.contains_key(iri);
        for entry in mapping_table {
            let iris = entry.target_iris.clone();
            if entry.category == MappingCategory::Complex {
                if reserved(&iris[0]) {
                    return Err(EmitError::AmbiguousTarget(iris[0].clone()));
                }
                path_heads.insert(iris[0].clone());
                if by_path.insert(iris.clone(), entry.concept_name.clone()).is_some() {
                    return Err(EmitError::AmbiguousTarget(iris.join(" / ")));
                }
            } else {
                if reserved(&iris[0]) || by_single.insert(iris[0].clone(), entry.concept_name.clone()).is_some() {
                    return Err(EmitError::AmbiguousTarget(iris[0].clone()));
                }
            }
            paths.insert(entry.concept_name.clone(), iris);
        }

        Ok(RdfMapper {
            registry,
            base_iri: base_iri.to_string(),
            extension_namespace: extension_namespace.to_string(),
            activity_class,
            jurisdiction_iri,
            paths,
            by_single,
            by_path,
            path_heads,
            roles,
        })
    }

    pub fn role_predicate(&self, role: PartyRole) -> String {
        format!("{}{}", self.extension_namespace, role_local(role))
    }

    /// The three namespaces every emitted predicate (other than `rdf:type`)
    /// belongs to: DPV, the extension namespace, and vCard.
    pub fn namespaces(&self) -> [(&'static str, &str); 3] {
        [("dpv", DPV_NAMESPACE), ("ext", &self.extension_namespace), ("vcard", VCARD_NAMESPACE)]
    }

    fn empty_graph(&self) -> Graph {
        let mut g = Graph::new();
        for (prefix, ns) in self.namespaces() {
            g.bind(prefix, ns);
        }
        g
    }

    fn literal(&self, concept: &str, value: &str) -> Literal {
        let kind = self.registry.concept(concept).map(|c| c.value_kind);
        let datatype = match kind {
            Some(ValueKind::DateOrDuration) if is_xsd_date(value) => Some("date"),
            Some(ValueKind::DateOrDuration) if is_xsd_duration(value) => Some("duration"),
            Some(ValueKind::Boolean) if matches!(value, "true" | "false" | "1" | "0") => Some("boolean"),
            _ => None,
        };
        match datatype {
            Some(dt) => Literal::typed(value, format!("{XSD_NAMESPACE}{dt}")),
            None => Literal::plain(value),
        }
    }

    pub fn to_graph(&self, records: &[RopaRecord]) -> Result<Graph, EmitError> {
        model::check_dataset(records, self.registry)?;
        let mut graph = self.empty_graph();
        let mut fresh = 0usize;
        let mut blank = || {
            fresh += 1;
            format!("n{fresh}")
        };
        for record in records {
            let act = Subject::Iri(format!("{}{}", self.base_iri, record.record_id));
            graph.insert(Triple::new(act.clone(), RDF_TYPE, Object::Iri(self.activity_class.clone())));
            graph.insert(Triple::new(
                act.clone(),
                self.jurisdiction_iri.clone(),
                Object::Literal(Literal::plain(record.jurisdiction.as_str())),
            ));
            for (concept, values) in &record.values {
                let path = &self.paths[concept];
                for value in values {
                    let mut subject = act.clone();
                    for step in &path[..path.len() - 1] {
                        let node = blank();
                        graph.insert(Triple::new(subject, step.clone(), Object::Blank(node.clone())));
                        subject = Subject::Blank(node);
                    }
                    let last = path.last().expect("non-empty path").clone();
                    graph.insert(Triple::new(subject, last, Object::Literal(self.literal(concept, value))));
                }
            }
            for party in &record.parties {
                let node = blank();
                graph.insert(Triple::new(act.clone(), self.role_predicate(party.role), Object::Blank(node.clone())));
                let node = Subject::Blank(node);
                let fields = [
                    (VCARD_FN, Some(&party.name)),
                    (VCARD_ADDRESS, party.contact.address.as_ref()),
                    (VCARD_EMAIL, party.contact.email.as_ref()),
                    (VCARD_PHONE, party.contact.phone.as_ref()),
                ];
                for (local, value) in fields {
                    if let Some(v) = value {
                        graph.insert(Triple::new(
                            node.clone(),
                            format!("{VCARD_NAMESPACE}{local}"),
                            Object::Literal(Literal::plain(v.as_str())),
                        ));
                    }
                }
            }
        }
        Ok(graph)
    }

    /// Inverse of [`Self::to_graph`] up to value order. Values and parties
    /// come back sorted; records come back ordered by id.
    pub fn from_graph(&self, graph: &Graph) -> Result<Vec<RopaRecord>, EmitError> {
        let mut outgoing: HashMap<&str, Vec<&Triple>> = HashMap::new();
        let mut activities: BTreeMap<&str, String> = BTreeMap::new();
        for t in graph.triples() {
            match &t.subject {
                Subject::Blank(b) => outgoing.entry(b.as_str()).or_default().push(t),
                Subject::Iri(s) => {
                    if t.predicate == RDF_TYPE && t.object == Object::Iri(self.activity_class.clone()) {
                        let id = s
                            .strip_prefix(&self.base_iri)
                            .ok_or_else(|| EmitError::UnrecognizedSubject(s.clone()))?;
                        activities.insert(s.as_str(), id.to_string());
                    }
                }
            }
        }

        let mut consumed: HashSet<&str> = HashSet::new();
        let mut builders: BTreeMap<&str, (Option<model::Jurisdiction>, RopaRecord)> = BTreeMap::new();
        for t in graph.triples() {
            let Subject::Iri(s) = &t.subject else { continue };
            let Some(id) = activities.get(s.as_str()) else {
                return Err(EmitError::UnrecognizedSubject(s.clone()));
            };
            let malformed = |reason: String| EmitError::Malformed { subject: s.clone(), reason };
            let (jurisdiction, record) = builders
                .entry(s.as_str())
                .or_insert_with(|| (None, RopaRecord::new(id.clone(), model::Jurisdiction::BE)));

            if t.predicate == RDF_TYPE {
                if t.object != Object::Iri(self.activity_class.clone()) {
                    return Err(malformed("unexpected additional rdf:type".into()));
                }
                continue;
            }
            match &t.object {
                Object::Literal(lit) if t.predicate == self.jurisdiction_iri => {
                    let code = lit.lexical.parse().map_err(|e| malformed(format!("{e}")))?;
                    if jurisdiction.replace(code).is_some() {
                        return Err(malformed("more than one jurisdiction".into()));
                    }
                }
                Object::Literal(lit) => {
                    let concept = self
                        .by_single
                        .get(&t.predicate)
                        .ok_or_else(|| EmitError::UnrecognizedPredicate(t.predicate.clone()))?;
                    record.values.entry(concept.clone()).or_default().push(lit.lexical.clone());
                }
                Object::Blank(node) => {
                    if let Some(&role) = self.roles.get(&t.predicate) {
                        let party = self.read_party(node, role, &outgoing, &mut consumed, s)?;
                        record.parties.push(party);
                    } else if self.path_heads.contains(&t.predicate) {
                        let (path, value) = self.read_path(&t.predicate, node, &outgoing, &mut consumed, s)?;
                        let concept = self
                            .by_path
                            .get(&path)
                            .ok_or_else(|| EmitError::UnrecognizedPredicate(path.join(" / ")))?;
                        record.values.entry(concept.clone()).or_default().push(value);
                    } else {
                        return Err(EmitError::UnrecognizedPredicate(t.predicate.clone()));
                    }
                }
                Object::Iri(_) => return Err(EmitError::UnrecognizedPredicate(t.predicate.clone())),
            }
        }

        if let Some(t) = graph.triples().find(|t| match &t.subject {
            Subject::Blank(b) => !consumed.contains(b.as_str()),
            Subject::Iri(_) => false,
        }) {
            return Err(EmitError::UnrecognizedPredicate(t.predicate.clone()));
        }

        let mut records: Vec<RopaRecord> = builders
            .into_values()
            .map(|(j, mut r)| {
                r.jurisdiction = j.ok_or_else(|| EmitError::MissingJurisdiction(r.record_id.clone()))?;
                Ok(r.normalized())
            })
            .collect::<Result<_, EmitError>>()?;
        records.sort_by(|a, b| a.record_id.cmp(&b.record_id));
        Ok(records)
    }

    fn read_party<'g>(
        &self,
        node: &'g str,
        role: PartyRole,
        outgoing: &HashMap<&'g str, Vec<&'g Triple>>,
        consumed: &mut HashSet<&'g str>,
        subject: &str,
    ) -> Result<Party, EmitError> {
        if !consumed.insert(node) {
            return Err(EmitError::Malformed { subject: subject.into(), reason: format!("node _:{node} is shared") });
        }
        let mut name = None;
        let mut contact = Contact::default();
        for t in outgoing.get(node).into_iter().flatten() {
            let Object::Literal(lit) = &t.object else {
                return Err(EmitError::UnrecognizedPredicate(t.predicate.clone()));
            };
            let slot = match t.predicate.strip_prefix(VCARD_NAMESPACE) {
                Some(VCARD_FN) => &mut name,
                Some(VCARD_ADDRESS) => &mut contact.address,
                Some(VCARD_EMAIL) => &mut contact.email,
                Some(VCARD_PHONE) => &mut contact.phone,
                _ => return Err(EmitError::UnrecognizedPredicate(t.predicate.clone())),
            };
            if slot.replace(lit.lexical.clone()).is_some() {
                return Err(EmitError::Malformed {
                    subject: subject.into(),
                    reason: format!("party node _:{node} repeats `{}`", t.predicate),
                });
            }
        }
        let name = name.ok_or_else(|| EmitError::Malformed {
            subject: subject.into(),
            reason: format!("party node _:{node} has no vcard:fn"),
        })?;
        Ok(Party { role, name, contact })
    }

    fn read_path<'g>(
        &self,
        head: &str,
        mut node: &'g str,
        outgoing: &HashMap<&'g str, Vec<&'g Triple>>,
        consumed: &mut HashSet<&'g str>,
        subject: &str,
    ) -> Result<(Vec<String>, String), EmitError> {
        let malformed = |reason: String| EmitError::Malformed { subject: subject.into(), reason };
        let mut path = vec![head.to_string()];
        loop {
            if !consumed.insert(node) {
                return Err(malformed(format!("node _:{node} is shared")));
            }
            let step = match outgoing.get(node).map(Vec::as_slice) {
                Some([only]) => *only,
                _ => return Err(malformed(format!("path node _:{node} must have exactly one property"))),
            };
            path.push(step.predicate.clone());
            match &step.object {
                Object::Literal(lit) => return Ok((path, lit.lexical.clone())),
                Object::Blank(next) => node = next,
                Object::Iri(_) => return Err(malformed(format!("path through _:{node} ends in an IRI"))),
            }
        }
    }
}

fn is_xsd_date(s: &str) -> bool {
    s.len() == 10 && NaiveDate::parse_from_str(s, "%Y-%m-%d").is_ok()
}

/// ISO 8601 duration as accepted by `xsd:duration`, e.g. `P7Y`, `P1Y2M`,
/// `PT36H`, `P3DT4H5.5S`.
fn is_xsd_duration(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    let Some(rest) = s.strip_prefix('P') else { return false };
    let (date, time) = match rest.split_once('T') {
        Some((d, t)) if !t.is_empty() => (d, Some(t)),
        Some(_) => return false,
        None => (rest, None),
    };
    fn components(part: &str, designators: &str, fraction_on: Option<char>) -> Option<usize> {
        let mut count = 0;
        let mut allowed = designators.chars();
        let mut number = String::new();
        for c in part.chars() {
            if c.is_ascii_digit() || (c == '.' && fraction_on.is_some()) {
                number.push(c);
                continue;
            }
            if number.is_empty() || number.starts_with('.') || number.ends_with('.') {
                return None;
            }
            // designators must appear in order, each at most once
            allowed.by_ref().find(|&d| d == c)?;
            if number.contains('.') && Some(c) != fraction_on {
                return None;
            }
            number.clear();
            count += 1;
        }
        number.is_empty().then_some(count)
    }
    let Some(date_count) = components(date, "YMD", None) else { return false };
    let time_count = match time {
        Some(t) => match components(t, "HMS", Some('S')) {
            Some(n) if n > 0 => n,
            _ => return false,
        },
        None => 0,
    };
    date_count + time_count > 0
}
