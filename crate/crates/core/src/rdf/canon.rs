//! Canonical triple ordering and blank-node relabeling.
//!
//! Blank nodes are coloured by iterated refinement over their in- and
//! out-edges (hashed with SHA-256) until the partition stops splitting.
//! Triples are then sorted with each blank node standing in as its colour,
//! and labels `b0, b1, ...` are handed out in first-use order. Nodes that
//! keep the same colour are interchangeable in the graphs this crate emits
//! (tree-shaped blank structure), so tie order cannot change the output.

use std::collections::{BTreeMap, HashMap};

use sha2::{Digest, Sha256};

use super::{syntax, Graph, Object, Subject, Triple};

type Colours = HashMap<String, String>;

fn subject_key(s: &Subject, colours: &Colours) -> String {
    match s {
        Subject::Iri(i) => syntax::iri_ref(i),
        Subject::Blank(b) => format!("_:{}", colours[b]),
    }
}

fn object_key(o: &Object, colours: &Colours) -> String {
    match o {
        Object::Blank(b) => format!("_:{}", colours[b]),
        other => syntax::object_nt(other),
    }
}

fn refine(graph: &Graph) -> Colours {
    let blanks: Vec<String> = graph.blank_nodes().into_iter().map(str::to_string).collect();
    let mut colours: Colours = blanks.iter().map(|b| (b.clone(), String::new())).collect();
    let mut classes = 1usize.min(blanks.len());

    for _ in 0..=blanks.len() {
        let mut edges: HashMap<&str, Vec<String>> = HashMap::new();
        for t in graph.triples() {
            if let Subject::Blank(b) = &t.subject {
                edges
                    .entry(b)
                    .or_default()
                    .push(format!("out {} {}", t.predicate, object_key(&t.object, &colours)));
            }
            if let Object::Blank(b) = &t.object {
                edges
                    .entry(b)
                    .or_default()
                    .push(format!("in {} {}", subject_key(&t.subject, &colours), t.predicate));
            }
        }
        let next: Colours = blanks
            .iter()
            .map(|b| {
                let mut sig = edges.remove(b.as_str()).unwrap_or_default();
                sig.sort();
                let mut h = Sha256::new();
                h.update(colours[b].as_bytes());
                for s in &sig {
                    h.update(b"\n");
                    h.update(s.as_bytes());
                }
                let digest: String = h.finalize().iter().map(|byte| format!("{byte:02x}")).collect();
                (b.clone(), digest)
            })
            .collect();
        let next_classes = next.values().collect::<std::collections::HashSet<_>>().len();
        colours = next;
        if next_classes <= classes {
            break;
        }
        classes = next_classes;
    }
    colours
}

/// The graph's triples in canonical order with canonical blank labels.
pub fn canonical_triples(graph: &Graph) -> Vec<Triple> {
    let colours = refine(graph);
    let mut keyed: Vec<(String, &str, String, &Triple)> = graph
        .triples()
        .map(|t| (subject_key(&t.subject, &colours), t.predicate.as_str(), object_key(&t.object, &colours), t))
        .collect();
    keyed.sort_by(|a, b| (&a.0, a.1, &a.2).cmp(&(&b.0, b.1, &b.2)));

    let mut labels: BTreeMap<&str, usize> = BTreeMap::new();
    for (_, _, _, t) in &keyed {
        let subject = match &t.subject {
            Subject::Blank(b) => Some(b.as_str()),
            Subject::Iri(_) => None,
        };
        for b in subject.into_iter().chain(t.object.as_blank()) {
            let next = labels.len();
            labels.entry(b).or_insert(next);
        }
    }

    let relabel = |b: &str| format!("b{}", labels[b]);
    let mut out: Vec<((String, usize), &str, (String, usize), Triple)> = keyed
        .into_iter()
        .map(|(sk, p, ok, t)| {
            let (subject, s_ord) = match &t.subject {
                Subject::Blank(b) => (Subject::Blank(relabel(b)), labels[b.as_str()]),
                s => (s.clone(), 0),
            };
            let (object, o_ord) = match &t.object {
                Object::Blank(b) => (Object::Blank(relabel(b)), labels[b.as_str()]),
                o => (o.clone(), 0),
            };
            ((sk, s_ord), p, (ok, o_ord), Triple { subject, predicate: t.predicate.clone(), object })
        })
        .collect();
    out.sort_by(|a, b| (&a.0, a.1, &a.2).cmp(&(&b.0, b.1, &b.2)));
    out.into_iter().map(|(_, _, _, t)| t).collect()
}
