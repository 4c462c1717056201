//! Turtle and N-Triples reading and writing.
//!
//! Output is canonical: see [`super::canonical_triples`]. Lines end in
//! `\n` and never carry trailing whitespace. The reader accepts full
//! N-Triples and the commonly used part of Turtle (prefix and base
//! directives, `a`, predicate and object lists, `[]` property lists,
//! short and long string literals, numeric and boolean literals). RDF
//! collections are not supported.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use super::{canonical_triples, Graph, Literal, Object, Subject, Triple, RDF_TYPE, XSD_NAMESPACE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Turtle,
    NTriples,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Turtle => "ttl",
            Format::NTriples => "nt",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "turtle" | "ttl" => Ok(Format::Turtle),
            "ntriples" | "n-triples" | "nt" => Ok(Format::NTriples),
            other => Err(format!("unsupported RDF format `{other}` (expected turtle or ntriples)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

// ---------------------------------------------------------------- writing

pub(crate) fn iri_ref(iri: &str) -> String {
    let mut out = String::with_capacity(iri.len() + 2);
    out.push('<');
    for c in iri.chars() {
        match c {
            '\u{0}'..='\u{20}' | '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\' => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('>');
    out
}

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn literal_with(lit: &Literal, datatype: impl Fn(&str) -> String) -> String {
    let mut out = quoted(&lit.lexical);
    if let Some(lang) = &lit.language {
        out.push('@');
        out.push_str(lang);
    } else if let Some(dt) = &lit.datatype {
        out.push_str("^^");
        out.push_str(&datatype(dt));
    }
    out
}

pub(crate) fn object_nt(o: &Object) -> String {
    match o {
        Object::Iri(i) => iri_ref(i),
        Object::Blank(b) => format!("_:{b}"),
        Object::Literal(l) => literal_with(l, iri_ref),
    }
}

fn is_simple_local(local: &str) -> bool {
    let mut chars = local.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

struct Prefixer<'g> {
    bindings: Vec<(&'g str, &'g str)>,
}

impl Prefixer<'_> {
    fn iri(&self, iri: &str) -> String {
        // Longest namespace first so nested namespaces pick the tightest prefix.
        self.bindings
            .iter()
            .filter_map(|(p, ns)| iri.strip_prefix(ns).map(|local| (p, ns.len(), local)))
            .filter(|(_, _, local)| is_simple_local(local))
            .max_by_key(|(_, len, _)| *len)
            .map(|(p, _, local)| format!("{p}:{local}"))
            .unwrap_or_else(|| iri_ref(iri))
    }

    fn object(&self, o: &Object) -> String {
        match o {
            Object::Iri(i) => self.iri(i),
            Object::Blank(b) => format!("_:{b}"),
            Object::Literal(l) => literal_with(l, |dt| self.iri(dt)),
        }
    }
}

/// Deterministic serialization.
pub fn serialize(graph: &Graph, format: Format) -> String {
    let triples = canonical_triples(graph);
    let mut out = String::new();
    match format {
        Format::NTriples => {
            for t in &triples {
                let _ = writeln!(out, "{t}");
            }
        }
        Format::Turtle => {
            let prefixer = Prefixer {
                bindings: graph.namespaces().iter().map(|(p, n)| (p.as_str(), n.as_str())).collect(),
            };
            for (prefix, ns) in graph.namespaces() {
                let _ = writeln!(out, "@prefix {prefix}: {} .", iri_ref(ns));
            }
            let mut current: Option<&Subject> = None;
            let mut current_pred: Option<&str> = None;
            for t in &triples {
                if current != Some(&t.subject) {
                    if current.is_some() {
                        out.push_str(" .\n");
                    }
                    out.push('\n');
                    match &t.subject {
                        Subject::Iri(i) => out.push_str(&prefixer.iri(i)),
                        Subject::Blank(b) => {
                            let _ = write!(out, "_:{b}");
                        }
                    }
                    current = Some(&t.subject);
                    current_pred = None;
                }
                if current_pred == Some(t.predicate.as_str()) {
                    out.push_str(", ");
                } else {
                    if current_pred.is_some() {
                        out.push_str(" ;");
                    }
                    out.push_str("\n    ");
                    if t.predicate == RDF_TYPE {
                        out.push('a');
                    } else {
                        out.push_str(&prefixer.iri(&t.predicate));
                    }
                    out.push(' ');
                    current_pred = Some(&t.predicate);
                }
                out.push_str(&prefixer.object(&t.object));
            }
            if current.is_some() {
                out.push_str(" .\n");
            }
        }
    }
    out
}

// ---------------------------------------------------------------- reading

pub fn parse(text: &str, format: Format) -> Result<Graph, SyntaxError> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
        turtle: format == Format::Turtle,
        graph: Graph::new(),
        base: None,
        anon: 0,
    };
    parser.document()?;
    Ok(parser.graph)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    turtle: bool,
    graph: Graph,
    base: Option<String>,
    anon: usize,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(SyntaxError { line: self.line, column: self.column, message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.peek_at(i) == Some(c))
    }

    fn starts_with_keyword(&self, kw: &str) -> bool {
        kw.chars()
            .enumerate()
            .all(|(i, c)| self.peek_at(i).is_some_and(|p| p.eq_ignore_ascii_case(&c)))
            && !self.peek_at(kw.len()).is_some_and(|c| c.is_alphanumeric() || c == ':' || c == '_')
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected `{c}`, found `{found}`")),
                None => self.error(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while !matches!(self.peek(), None | Some('\n')) {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn document(&mut self) -> PResult<()> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            if self.turtle && self.directive()? {
                continue;
            }
            self.statement()?;
        }
    }

    fn directive(&mut self) -> PResult<bool> {
        let (sparql_style, kw) = if self.starts_with("@prefix") {
            (false, "@prefix")
        } else if self.starts_with("@base") {
            (false, "@base")
        } else if self.starts_with_keyword("PREFIX") {
            (true, "PREFIX")
        } else if self.starts_with_keyword("BASE") {
            (true, "BASE")
        } else {
            return Ok(false);
        };
        for _ in 0..kw.len() {
            self.bump();
        }
        self.skip_ws();
        if kw.eq_ignore_ascii_case("@prefix") || kw == "PREFIX" {
            let prefix = self.prefix_name()?;
            self.expect(':')?;
            self.skip_ws();
            let ns = self.iri_ref()?;
            self.graph.bind(prefix, ns);
        } else {
            let base = self.iri_ref()?;
            self.base = Some(base);
        }
        if !sparql_style {
            self.skip_ws();
            self.expect('.')?;
        }
        Ok(true)
    }

    fn prefix_name(&mut self) -> PResult<String> {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '-' || (c == '.' && !out.is_empty()) {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if out.ends_with('.') {
            return self.error("prefix may not end with `.`");
        }
        Ok(out)
    }

    fn statement(&mut self) -> PResult<()> {
        let subject = if self.turtle && self.peek() == Some('[') {
            let node = self.blank_property_list()?;
            self.skip_ws();
            if self.peek() == Some('.') {
                self.bump();
                return Ok(());
            }
            Subject::Blank(node)
        } else {
            self.subject()?
        };
        self.skip_ws();
        self.predicate_object_list(&subject)?;
        self.skip_ws();
        self.expect('.')
    }

    fn predicate_object_list(&mut self, subject: &Subject) -> PResult<()> {
        loop {
            let predicate = self.verb()?;
            loop {
                self.skip_ws();
                let object = self.object()?;
                self.graph.insert(Triple::new(subject.clone(), predicate.clone(), object));
                self.skip_ws();
                if self.turtle && self.peek() == Some(',') {
                    self.bump();
                    continue;
                }
                break;
            }
            if !(self.turtle && self.peek() == Some(';')) {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            if matches!(self.peek(), Some('.') | Some(']')) {
                return Ok(());
            }
        }
    }

    fn blank_property_list(&mut self) -> PResult<String> {
        self.expect('[')?;
        let label = format!("[{}]", self.anon);
        self.anon += 1;
        self.skip_ws();
        if self.peek() != Some(']') {
            self.predicate_object_list(&Subject::Blank(label.clone()))?;
            self.skip_ws();
        }
        self.expect(']')?;
        Ok(label)
    }

    fn subject(&mut self) -> PResult<Subject> {
        match self.peek() {
            Some('<') => Ok(Subject::Iri(self.iri_ref()?)),
            Some('_') => Ok(Subject::Blank(self.blank_label()?)),
            Some(_) if self.turtle => Ok(Subject::Iri(self.prefixed_name()?)),
            Some(c) => self.error(format!("unexpected `{c}` in subject position")),
            None => self.error("unexpected end of input"),
        }
    }

    fn verb(&mut self) -> PResult<String> {
        match self.peek() {
            Some('<') => self.iri_ref(),
            Some('a') if self.turtle && self.peek_at(1).is_some_and(|c| c.is_whitespace() || c == '<' || c == '[' || c == '"') => {
                self.bump();
                Ok(RDF_TYPE.to_string())
            }
            Some(_) if self.turtle => self.prefixed_name(),
            Some(c) => self.error(format!("unexpected `{c}` in predicate position")),
            None => self.error("unexpected end of input"),
        }
    }

    fn object(&mut self) -> PResult<Object> {
        match self.peek() {
            Some('<') => Ok(Object::Iri(self.iri_ref()?)),
            Some('_') if self.peek_at(1) == Some(':') => Ok(Object::Blank(self.blank_label()?)),
            Some('"') => Ok(Object::Literal(self.literal()?)),
            Some('\'') if self.turtle => Ok(Object::Literal(self.literal()?)),
            Some('[') if self.turtle => Ok(Object::Blank(self.blank_property_list()?)),
            Some(c) if self.turtle && (c.is_ascii_digit() || c == '+' || c == '-' || c == '.') => {
                Ok(Object::Literal(self.numeric()?))
            }
            Some(_) if self.turtle && (self.starts_with_keyword("true") || self.starts_with_keyword("false")) => {
                let value = if self.starts_with("true") { "true" } else { "false" };
                for _ in 0..value.len() {
                    self.bump();
                }
                Ok(Object::Literal(Literal::typed(value, format!("{XSD_NAMESPACE}boolean"))))
            }
            Some('(') if self.turtle => self.error("RDF collections are not supported"),
            Some(_) if self.turtle => Ok(Object::Iri(self.prefixed_name()?)),
            Some(c) => self.error(format!("unexpected `{c}` in object position")),
            None => self.error("unexpected end of input"),
        }
    }

    fn iri_ref(&mut self) -> PResult<String> {
        self.expect('<')?;
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return self.error("unterminated IRI"),
                Some('>') => break,
                Some('\\') => out.push(self.unicode_escape()?),
                Some(c) if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return self.error(format!("character `{}` is not allowed in an IRI", c.escape_default()))
                }
                Some(c) => out.push(c),
            }
        }
        match &self.base {
            Some(base) if !out.contains(':') => Ok(format!("{base}{out}")),
            _ => Ok(out),
        }
    }

    fn unicode_escape(&mut self) -> PResult<char> {
        let digits = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return self.error("only \\u and \\U escapes are allowed here"),
        };
        let mut code = 0u32;
        for _ in 0..digits {
            match self.bump().and_then(|c| c.to_digit(16)) {
                Some(d) => code = code * 16 + d,
                None => return self.error("malformed unicode escape"),
            }
        }
        match char::from_u32(code) {
            Some(c) => Ok(c),
            None => self.error(format!("escape U+{code:X} is not a scalar value")),
        }
    }

    fn blank_label(&mut self) -> PResult<String> {
        self.expect('_')?;
        self.expect(':')?;
        let mut out = String::new();
        while let Some(c) = self.peek() {
            let ok = if out.is_empty() {
                c.is_alphanumeric() || c == '_'
            } else {
                c.is_alphanumeric() || c == '_' || c == '-' || c == '.'
            };
            if !ok {
                break;
            }
            out.push(c);
            self.bump();
        }
        while out.ends_with('.') {
            out.pop();
            self.pos -= 1;
            self.column -= 1;
        }
        if out.is_empty() {
            return self.error("empty blank node label");
        }
        Ok(out)
    }

    fn prefixed_name(&mut self) -> PResult<String> {
        let prefix = self.prefix_name()?;
        if self.peek() != Some(':') {
            return match self.peek() {
                Some(c) => self.error(format!("unexpected `{c}`")),
                None => self.error("unexpected end of input"),
            };
        }
        self.bump();
        let ns = match self.graph.namespaces().get(&prefix) {
            Some(ns) => ns.clone(),
            None => return self.error(format!("undeclared prefix `{prefix}:`")),
        };
        let mut local = String::new();
        let mut raw_len = 0usize;
        while let Some(c) = self.peek() {
            if c == '\\' {
                self.bump();
                match self.bump() {
                    Some(e) if "_~.-!$&'()*+,;=/?#@%".contains(e) => local.push(e),
                    _ => return self.error("invalid escape in local name"),
                }
                raw_len = local.len();
            } else if c.is_alphanumeric() || matches!(c, '_' | '-' | ':' | '%' | '.') {
                local.push(c);
                self.bump();
                if c != '.' {
                    raw_len = local.len();
                }
            } else {
                break;
            }
        }
        // A trailing `.` ends the statement rather than the name.
        let trailing = local.len() - raw_len;
        local.truncate(raw_len);
        self.pos -= trailing;
        self.column -= trailing;
        Ok(format!("{ns}{local}"))
    }

    fn literal(&mut self) -> PResult<Literal> {
        let quote = self.peek().expect("caller checked");
        let long = self.turtle && self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote);
        let mut lexical = String::new();
        if long {
            for _ in 0..3 {
                self.bump();
            }
            loop {
                if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
                    for _ in 0..3 {
                        self.bump();
                    }
                    break;
                }
                match self.bump() {
                    None => return self.error("unterminated literal"),
                    Some('\\') => lexical.push(self.string_escape()?),
                    Some(c) => lexical.push(c),
                }
            }
        } else {
            self.bump();
            loop {
                if matches!(self.peek(), None | Some('\n') | Some('\r')) {
                    return self.error("unterminated literal");
                }
                match self.bump().expect("peeked") {
                    c if c == quote => break,
                    '\\' => lexical.push(self.string_escape()?),
                    c => lexical.push(c),
                }
            }
        }
        if self.peek() == Some('@') {
            self.bump();
            let mut lang = String::new();
            while let Some(c) = self.peek() {
                if c.is_ascii_alphanumeric() || (c == '-' && !lang.is_empty()) {
                    lang.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            if lang.is_empty() {
                return self.error("empty language tag");
            }
            return Ok(Literal { lexical, datatype: None, language: Some(lang) });
        }
        if self.starts_with("^^") {
            self.bump();
            self.bump();
            let dt = if self.peek() == Some('<') || !self.turtle {
                self.iri_ref()?
            } else {
                self.prefixed_name()?
            };
            return Ok(Literal::typed(lexical, dt));
        }
        Ok(Literal::plain(lexical))
    }

    fn string_escape(&mut self) -> PResult<char> {
        match self.peek() {
            Some('u') | Some('U') => self.unicode_escape(),
            Some(c) => {
                self.bump();
                Ok(match c {
                    't' => '\t',
                    'b' => '\u{8}',
                    'n' => '\n',
                    'r' => '\r',
                    'f' => '\u{c}',
                    '"' => '"',
                    '\'' => '\'',
                    '\\' => '\\',
                    other => return self.error(format!("unknown escape `\\{other}`")),
                })
            }
            None => self.error("unterminated literal"),
        }
    }

    fn numeric(&mut self) -> PResult<Literal> {
        let mut text = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            text.push(c);
            self.bump();
        }
        let digits = |p: &mut Parser, text: &mut String| {
            let mut n = 0;
            while let Some(c) = p.peek().filter(char::is_ascii_digit) {
                text.push(c);
                p.bump();
                n += 1;
            }
            n
        };
        let mut whole = digits(self, &mut text);
        let mut kind = "integer";
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            text.push('.');
            self.bump();
            whole += digits(self, &mut text);
            kind = "decimal";
        }
        if whole == 0 {
            return self.error("malformed numeric literal");
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            text.push(e);
            self.bump();
            if let Some(c @ ('+' | '-')) = self.peek() {
                text.push(c);
                self.bump();
            }
            if digits(self, &mut text) == 0 {
                return self.error("malformed exponent");
            }
            kind = "double";
        }
        Ok(Literal::typed(text, format!("{XSD_NAMESPACE}{kind}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Graph {
        let mut g = Graph::new();
        g.bind("ex", "http://example.org/");
        let s = Subject::Iri("http://example.org/act/1".into());
        g.insert(Triple::new(s.clone(), RDF_TYPE, Object::Iri("http://example.org/Activity".into())));
        g.insert(Triple::new(s.clone(), "http://example.org/purpose", Object::Literal(Literal::plain("Payroll"))));
        g.insert(Triple::new(s.clone(), "http://example.org/purpose", Object::Literal(Literal::plain("Say \"hi\"\n"))));
        g.insert(Triple::new(s.clone(), "http://example.org/party", Object::Blank("p".into())));
        g.insert(Triple::new(
            Subject::Blank("p".into()),
            "http://example.org/date",
            Object::Literal(Literal::typed("2020-01-01", format!("{XSD_NAMESPACE}date"))),
        ));
        g
    }

    #[test]
    fn empty_graph_ntriples_is_empty_text() {
        assert_eq!(serialize(&Graph::new(), Format::NTriples), "");
        assert!(parse("", Format::NTriples).unwrap().is_empty());
    }

    #[test]
    fn turtle_layout() {
        let expected = concat!(
            "@prefix ex: <http://example.org/> .\n",
            "\n",
            "<http://example.org/act/1>\n",
            "    ex:party _:b0 ;\n",
            "    ex:purpose \"Payroll\", \"Say \\\"hi\\\"\\n\" ;\n",
            "    a ex:Activity .\n",
            "\n",
            "_:b0\n",
            "    ex:date \"2020-01-01\"^^<http://www.w3.org/2001/XMLSchema#date> .\n",
        );
        assert_eq!(serialize(&sample(), Format::Turtle), expected);
    }

    #[test]
    fn both_formats_round_trip() {
        let g = sample();
        for format in [Format::Turtle, Format::NTriples] {
            let text = serialize(&g, format);
            let back = parse(&text, format).unwrap();
            assert_eq!(serialize(&back, Format::NTriples), serialize(&g, Format::NTriples), "{format:?}");
        }
    }

    #[test]
    fn unterminated_literal_reports_position() {
        let err = parse("<urn:a> <urn:b> \"open .\n", Format::NTriples).unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("unterminated"));
        let err = parse("\n<urn:a> <urn:b> \"open", Format::Turtle).unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn ntriples_rejects_turtle_shorthand() {
        assert!(parse("@prefix ex: <urn:x:> .", Format::NTriples).is_err());
        assert!(parse("<urn:a> a <urn:T> .", Format::NTriples).is_err());
        assert!(parse("<urn:a> <urn:b> <urn:c>", Format::NTriples).is_err());
    }

    #[test]
    fn turtle_features() {
        let text = r#"
            PREFIX ex: <http://example.org/>
            @base <http://example.org/base/> .
            <rel> a ex:Thing ; ex:n 42, -1.5, 1e3 ; ex:b true ;
                ex:l 'single', """multi
line""", "fr"@fr-BE, "x"^^ex:dt ;
                ex:p [ ex:q "nested" ] .
            [ ex:r ex:s\.t ] .
            ex:last ex:v ex:w.
        "#;
        let g = parse(text, Format::Turtle).unwrap();
        assert_eq!(g.len(), 13);
        let nt = serialize(&g, Format::NTriples);
        assert!(nt.contains("<http://example.org/base/rel> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://example.org/Thing> ."));
        assert!(nt.contains("\"42\"^^<http://www.w3.org/2001/XMLSchema#integer>"));
        assert!(nt.contains("\"multi\\nline\""));
        assert!(nt.contains("\"fr\"@fr-BE"));
        assert!(nt.contains("<http://example.org/s.t>"));
        assert!(nt.contains("<http://example.org/last> <http://example.org/v> <http://example.org/w> ."));
    }

    #[test]
    fn undeclared_prefix_is_an_error() {
        let err = parse("ex:a ex:b ex:c .", Format::Turtle).unwrap_err();
        assert!(err.message.contains("undeclared prefix"));
    }

    #[test]
    fn iri_escapes_round_trip() {
        let mut g = Graph::new();
        g.insert(Triple::new(
            Subject::Iri("urn:a b".into()),
            "urn:p",
            Object::Literal(Literal::plain("tab\there\u{1}")),
        ));
        let nt = serialize(&g, Format::NTriples);
        assert_eq!(nt, "<urn:a\\u0020b> <urn:p> \"tab\\there\\u0001\" .\n");
        assert_eq!(parse(&nt, Format::NTriples).unwrap(), g);
    }
}
