//! Generators and independent oracles shared by the integration suites
//! (also pulled into the CLI acceptance target by path).
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use proptest::collection::{btree_set, vec};
use proptest::prelude::*;
use ropa_core::profile::ColumnMapping;
use ropa_core::rdf::{Graph, Literal, Object, Subject, Triple};
use ropa_core::{
    build_registry, Cardinality, ConceptDefinition, ConceptRegistry, Contact, Jurisdiction,
    JurisdictionProfile, Party, PartyRole, RopaRecord, ValueKind,
};

// ---------------------------------------------------------------- values

/// Cell text that survives a CSV cell round trip: no `;`, no surrounding
/// whitespace, never empty. Includes quotes, commas, newlines and non-ASCII.
pub fn csv_value() -> BoxedStrategy<String> {
    "[A-Za-z0-9éßø]([A-Za-z0-9 ,.'\"()&/\néßø-]{0,14}[A-Za-z0-9éßø)])?".boxed()
}

/// Anything non-blank; RDF literals carry it verbatim.
pub fn rdf_value() -> BoxedStrategy<String> {
    prop_oneof![
        4 => "[ -~]{1,16}".prop_filter("non-blank", |s| !s.trim().is_empty()),
        1 => "[\\\\\"\n\t;é€𝄞 a-z]{1,10}".prop_filter("non-blank", |s| !s.trim().is_empty()),
        1 => Just("P6Y".to_string()),
        1 => Just("2030-12-31".to_string()),
        1 => Just("true".to_string()),
    ]
    .boxed()
}

/// Values for one concept as ingest would produce them: distinct, at most
/// one for single-valued concepts.
fn concept_values(
    cardinality: Cardinality,
    value: impl Strategy<Value = String> + Clone + 'static,
) -> BoxedStrategy<Vec<String>> {
    match cardinality {
        Cardinality::Single => proptest::option::of(value).prop_map(|v| v.into_iter().collect()).boxed(),
        Cardinality::Multi => vec(value, 0..4)
            .prop_map(|vs| {
                let mut seen = BTreeSet::new();
                vs.into_iter().filter(|v| seen.insert(v.clone())).collect()
            })
            .boxed(),
    }
}

fn values_map(
    concepts: Vec<(String, Cardinality)>,
    value: impl Strategy<Value = String> + Clone + 'static,
) -> BoxedStrategy<BTreeMap<String, Vec<String>>> {
    let parts: Vec<_> = concepts
        .into_iter()
        .map(|(name, card)| concept_values(card, value.clone()).prop_map(move |v| (name.clone(), v)))
        .collect();
    parts
        .prop_map(|pairs| pairs.into_iter().filter(|(_, v)| !v.is_empty()).collect())
        .boxed()
}

// ---------------------------------------------------------------- datasets

/// Records the profile's CSV layout can carry exactly, with the ids the
/// parser will assign (no empty rows, so numbering is dense).
pub fn csv_dataset(profile: &JurisdictionProfile, registry: &ConceptRegistry) -> BoxedStrategy<Vec<RopaRecord>> {
    let concepts: Vec<(String, Cardinality)> = profile
        .concepts()
        .map(|c| (c.to_string(), registry.concept(c).expect("profile resolves").cardinality))
        .collect();
    let code = profile.code;
    vec(values_map(concepts, csv_value()).prop_filter("row must not be blank", |v| !v.is_empty()), 0..5)
        .prop_map(move |rows| {
            rows.into_iter()
                .enumerate()
                .map(|(i, values)| RopaRecord {
                    record_id: format!("{code}-{:04}", i + 1),
                    jurisdiction: code,
                    values,
                    parties: Vec::new(),
                })
                .collect()
        })
        .boxed()
}

fn party() -> impl Strategy<Value = Party> {
    (
        proptest::sample::select(PartyRole::ALL.to_vec()),
        rdf_value(),
        proptest::option::of(rdf_value()),
        proptest::option::of("[a-z]{1,6}@[a-z]{1,6}\\.example"),
        proptest::option::of("\\+[0-9]{6,12}"),
    )
        .prop_map(|(role, name, address, email, phone)| Party { role, name, contact: Contact { address, email, phone } })
}

/// Arbitrary records over any registry concepts, with parties.
pub fn rdf_dataset(registry: &ConceptRegistry) -> BoxedStrategy<Vec<RopaRecord>> {
    let concepts: Vec<(String, Cardinality)> =
        registry.concepts().iter().map(|c| (c.name.clone(), c.cardinality)).collect();
    let record = (
        proptest::sample::select(Jurisdiction::ALL.to_vec()),
        // sparse: most concepts absent in any one record
        values_map(concepts, rdf_value()).prop_flat_map(|m| {
            let n = m.len();
            proptest::sample::subsequence(m.into_iter().collect::<Vec<_>>(), 0..=n.min(8))
        }),
        vec(party(), 0..3),
    );
    (btree_set("[A-Za-z0-9_.-]{1,8}", 0..4), vec(record, 4))
        .prop_map(|(ids, records)| {
            ids.into_iter()
                .zip(records)
                .map(|(id, (jurisdiction, values, parties))| RopaRecord {
                    record_id: id,
                    jurisdiction,
                    values: values.into_iter().collect(),
                    parties,
                })
                .collect()
        })
        .boxed()
}

// ---------------------------------------------------------------- graphs

/// Small graphs over a handful of IRIs and up to five blank nodes.
pub fn small_graph() -> impl Strategy<Value = Graph> {
    let subject = prop_oneof![
        (0..2usize).prop_map(|i| Subject::Iri(format!("http://example.org/s{i}"))),
        (0..5usize).prop_map(|i| Subject::Blank(format!("x{i}"))),
    ];
    let object = prop_oneof![
        (0..2usize).prop_map(|i| Object::Iri(format!("http://example.org/s{i}"))),
        (0..5usize).prop_map(|i| Object::Blank(format!("x{i}"))),
        rdf_value().prop_map(|v| Object::Literal(Literal::plain(v))),
        "[0-9]{1,3}".prop_map(|v| Object::Literal(Literal::typed(v, "http://www.w3.org/2001/XMLSchema#integer"))),
        ("[a-z ]{1,5}", "[a-z]{2}").prop_map(|(v, l)| Object::Literal(Literal {
            lexical: v,
            datatype: None,
            language: Some(l)
        })),
    ];
    let predicate = (0..3usize).prop_map(|i| format!("http://example.org/p{i}"));
    vec((subject, predicate, object), 0..12).prop_map(|ts| {
        let mut g: Graph = ts.into_iter().map(|(s, p, o)| Triple::new(s, p, o)).collect();
        g.bind("ex", "http://example.org/");
        g
    })
}

/// Brute-force isomorphism: tries every bijection between blank nodes.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let xs: Vec<String> = a.blank_nodes().into_iter().map(str::to_string).collect();
    let ys: Vec<String> = b.blank_nodes().into_iter().map(str::to_string).collect();
    if xs.len() != ys.len() {
        return false;
    }
    let target: BTreeSet<Triple> = b.triples().cloned().collect();
    let mut perm: Vec<usize> = (0..ys.len()).collect();
    loop {
        let map: HashMap<&str, &str> = xs.iter().map(String::as_str).zip(perm.iter().map(|&i| ys[i].as_str())).collect();
        let mapped: BTreeSet<Triple> = a.triples().map(|t| relabel(t, &map)).collect();
        if mapped == target {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

pub fn relabel(t: &Triple, map: &HashMap<&str, &str>) -> Triple {
    let subject = match &t.subject {
        Subject::Blank(b) => Subject::Blank(map[b.as_str()].to_string()),
        s => s.clone(),
    };
    let object = match &t.object {
        Object::Blank(b) => Object::Blank(map[b.as_str()].to_string()),
        o => o.clone(),
    };
    Triple::new(subject, t.predicate.clone(), object)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Same graph with every blank node renamed (reverse order, new prefix).
pub fn rename_blanks(g: &Graph) -> Graph {
    let blanks: Vec<&str> = g.blank_nodes().into_iter().collect();
    let names: Vec<String> = (0..blanks.len()).map(|i| format!("r{}", blanks.len() - i)).collect();
    let map: HashMap<&str, &str> = blanks.iter().copied().zip(names.iter().map(String::as_str)).collect();
    let mut out: Graph = g.triples().map(|t| relabel(t, &map)).collect();
    for (p, ns) in g.namespaces() {
        out.bind(p.clone(), ns.clone());
    }
    out
}

// ---------------------------------------------------------------- validation oracle

/// (record_id, concept_name, code) for every failed (concept, requirement)
/// pair, checked one pair at a time.
pub fn brute_force_findings(
    records: &[RopaRecord],
    profile: &JurisdictionProfile,
    registry: &ConceptRegistry,
) -> Vec<(String, String, &'static str)> {
    let mut out = Vec::new();
    for r in records {
        for c in registry.concepts() {
            let filled: Vec<&String> =
                r.values.get(&c.name).into_iter().flatten().filter(|v| !v.trim().is_empty()).collect();
            let present = !filled.is_empty();
            let required_here = profile.required_concepts.iter().any(|q| q == &c.name);
            let mut allowed: Vec<String> = c.specified_values.clone().unwrap_or_default();
            allowed.extend(profile.controlled_vocabularies.get(&c.name).cloned().unwrap_or_default());

            if c.mandatory_art30 && !present {
                out.push((r.record_id.clone(), c.name.clone(), "missing_mandatory"));
            }
            if required_here && !c.mandatory_art30 && !present {
                out.push((r.record_id.clone(), c.name.clone(), "missing_jurisdiction_required"));
            }
            if c.cardinality == Cardinality::Single && filled.len() >= 2 {
                out.push((r.record_id.clone(), c.name.clone(), "cardinality_violation"));
            }
            if !allowed.is_empty() {
                for v in &filled {
                    let ok = allowed.iter().any(|a| a.trim().to_lowercase() == v.trim().to_lowercase());
                    if !ok {
                        out.push((r.record_id.clone(), c.name.clone(), "vocabulary_violation"));
                    }
                }
            }
        }
        for key in r.values.keys() {
            if registry.concepts().iter().all(|c| &c.name != key) {
                out.push((r.record_id.clone(), key.clone(), "unknown_concept"));
            }
        }
    }
    out.sort();
    out
}

/// Four concept shapes covering every requirement kind.
pub fn palette() -> Vec<ConceptDefinition> {
    let mut a = ConceptDefinition::free_text("alpha", "Alpha");
    a.mandatory_art30 = true;
    a.article30_refs = vec!["30.1(a)".into()];
    a.cardinality = Cardinality::Single;
    a.value_kind = ValueKind::Enumerated;
    a.specified_values = Some(vec!["a".into(), "b".into()]);

    let mut b = ConceptDefinition::free_text("beta", "Beta");
    b.value_kind = ValueKind::Enumerated;
    b.specified_values = Some(vec!["a".into()]);

    let mut c = ConceptDefinition::free_text("gamma", "Gamma");
    c.mandatory_art30 = true;
    c.article30_refs = vec!["30.1(b)".into()];

    let mut d = ConceptDefinition::free_text("delta", "Delta");
    d.cardinality = Cardinality::Single;
    d.value_kind = ValueKind::Boolean;

    let mut e = ConceptDefinition::free_text("epsilon", "Epsilon");
    e.value_kind = ValueKind::Enumerated;

    let mut f = ConceptDefinition::free_text("zeta", "Zeta");
    f.cardinality = Cardinality::Single;
    f.mandatory_art30 = true;
    f.article30_refs = vec!["30.1(c)".into()];
    vec![a, b, c, d, e, f]
}

pub fn registry_of(defs: Vec<ConceptDefinition>) -> ConceptRegistry {
    build_registry(defs, "test").expect("palette registries are valid")
}

/// A profile mapping every concept, requiring `required`, and adding `x` to
/// the vocabulary of every enumerated concept.
pub fn profile_over(registry: &ConceptRegistry, required: Vec<String>) -> JurisdictionProfile {
    JurisdictionProfile {
        code: Jurisdiction::BE,
        display_name: "test".into(),
        column_map: registry
            .concepts()
            .iter()
            .map(|c| ColumnMapping { column_header: c.display_name.clone(), concept_name: c.name.clone(), reconstructed: false })
            .collect(),
        required_concepts: required,
        controlled_vocabularies: registry
            .concepts()
            .iter()
            .filter(|c| c.value_kind == ValueKind::Enumerated)
            .map(|c| (c.name.clone(), vec!["x".to_string()]))
            .collect(),
        art30_transcription_only: false,
    }
}

/// Cell contents the exhaustive search draws from, by value count.
pub const VALUE_LISTS: [&[&str]; 6] = [&[], &[" "], &["a"], &["X "], &["a", "x"], &["b", "zz"]];

/// Findings of `validate` in the oracle's shape.
pub fn findings_of(report: &ropa_core::ValidationReport) -> Vec<(String, String, &'static str)> {
    let mut out: Vec<_> = report
        .violations
        .iter()
        .map(|v| (v.record_id.clone(), v.concept_name.clone(), v.code.as_str()))
        .collect();
    out.sort();
    out
}

/// Every (registry, profile, record) instance over subsets of the first
/// `palette_size` palette shapes, every required subset, and every record
/// with at most `max_values` values (plus an optional unknown key).
/// Calls `check` on each and returns the number of instances.
pub fn exhaustive_instances(
    palette_size: usize,
    max_values: usize,
    mut check: impl FnMut(&ConceptRegistry, &JurisdictionProfile, &RopaRecord),
) -> usize {
    let shapes = palette();
    let mut n = 0;
    for mask in 1u32..(1 << palette_size) {
        let defs: Vec<ConceptDefinition> =
            (0..palette_size).filter(|i| mask & (1 << i) != 0).map(|i| shapes[i].clone()).collect();
        let registry = registry_of(defs);
        let names: Vec<String> = registry.concepts().iter().map(|c| c.name.clone()).collect();
        for req_mask in 0u32..(1 << names.len()) {
            let required: Vec<String> =
                names.iter().enumerate().filter(|(i, _)| req_mask & (1 << i) != 0).map(|(_, c)| c.clone()).collect();
            let profile = profile_over(&registry, required);
            let mut choice = vec![0usize; names.len()];
            loop {
                let total: usize = choice.iter().map(|&k| VALUE_LISTS[k].len()).sum();
                for unknown in [false, true] {
                    if total + usize::from(unknown) > max_values {
                        continue;
                    }
                    let mut r = RopaRecord::new("R", Jurisdiction::BE);
                    for (name, &k) in names.iter().zip(&choice) {
                        if !VALUE_LISTS[k].is_empty() {
                            r = r.with_values(name, VALUE_LISTS[k].iter().copied());
                        }
                    }
                    if unknown {
                        r = r.with_values("unregistered", ["a"]);
                    }
                    check(&registry, &profile, &r);
                    n += 1;
                }
                // odometer over value-list choices
                let mut i = 0;
                while i < choice.len() {
                    choice[i] += 1;
                    if choice[i] < VALUE_LISTS.len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == choice.len() {
                    break;
                }
            }
        }
    }
    n
}

/// Random instances over the full six-shape palette.
pub fn random_instance() -> impl Strategy<Value = (ConceptRegistry, JurisdictionProfile, Vec<RopaRecord>)> {
    (1u32..64, any::<u32>(), vec(vec((0usize..6, 0usize..VALUE_LISTS.len()), 0..4), 0..4), any::<bool>()).prop_map(
        |(mask, req_bits, records, unknown)| {
            let shapes = palette();
            let defs: Vec<_> = (0..6).filter(|i| mask & (1 << i) != 0).map(|i| shapes[i].clone()).collect();
            let registry = registry_of(defs);
            let required: Vec<String> = registry
                .concepts()
                .iter()
                .enumerate()
                .filter(|(i, _)| req_bits & (1 << i) != 0)
                .map(|(_, c)| c.name.clone())
                .collect();
            let profile = profile_over(&registry, required);
            let names: Vec<String> = registry.concepts().iter().map(|c| c.name.clone()).collect();
            let records = records
                .into_iter()
                .enumerate()
                .map(|(i, picks)| {
                    let mut r = RopaRecord::new(format!("R{i}"), Jurisdiction::BE);
                    let mut budget = 4usize;
                    for (c, k) in picks {
                        let vals = VALUE_LISTS[k];
                        if vals.len() > budget {
                            continue;
                        }
                        budget -= vals.len();
                        r = r.with_values(&names[c % names.len()], vals.iter().copied());
                    }
                    if unknown && budget > 0 {
                        r = r.with_values("unregistered", ["a"]);
                    }
                    r
                })
                .collect();
            (registry, profile, records)
        },
    )
}
