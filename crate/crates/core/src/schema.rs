//! JSON documents: surface configurations, oriented diagrams and reference
//! tables, with location-aware validation errors and a canonical writer.

use serde::Deserialize;
use serde_json::{Map, Value};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::exact::{self, Int, Rational};
use crate::lattice::GramMatrix;
use crate::oriented::{OrientedDiagram, Realization};

/// A reference table row: a label and a count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceRow {
    pub rho: String,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Surface(Configuration),
    Cy3(OrientedDiagram),
    Reference(Vec<ReferenceRow>),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Surface(_) => "surface",
            Payload::Cy3(_) => "cy3",
            Payload::Reference(_) => "reference",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub name: String,
    pub payload: Payload,
    /// Free-form annotations; keys are kept sorted.
    pub meta: Map<String, Value>,
}

impl Document {
    pub fn surface(&self) -> Option<&Configuration> {
        match &self.payload {
            Payload::Surface(c) => Some(c),
            _ => None,
        }
    }

    pub fn diagram(&self) -> Option<&OrientedDiagram> {
        match &self.payload {
            Payload::Cy3(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRealization {
    vectors: Vec<Vec<i64>>,
    form: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    rho: String,
    count: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    name: String,
    kind: String,
    labels: Option<Vec<String>>,
    gram: Option<Vec<Vec<i64>>>,
    canonical: Option<Vec<i64>>,
    k_squared: Option<i64>,
    divisor_ids: Option<Vec<String>>,
    t: Option<Vec<Vec<String>>>,
    self_k: Option<Vec<i64>>,
    realization: Option<RawRealization>,
    rows: Option<Vec<RawRow>>,
    #[serde(default)]
    meta: Map<String, Value>,
}

#[derive(Debug, Clone, Copy)]
enum Seg<'a> {
    Key(&'a str),
    Index(usize),
}

/// Byte offset of the value at a path of keys and indices, found by a
/// lightweight scan of already well-formed JSON.
struct Locator<'a> {
    b: &'a [u8],
    pos: usize,
}

impl<'a> Locator<'a> {
    fn ws(&mut self) {
        while self.pos < self.b.len() && self.b[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.b.get(self.pos).copied()
    }

    fn string(&mut self) -> Option<String> {
        if self.peek()? != b'"' {
            return None;
        }
        let start = self.pos;
        self.pos += 1;
        while self.peek()? != b'"' {
            if self.peek()? == b'\\' {
                self.pos += 1;
            }
            self.pos += 1;
        }
        self.pos += 1;
        serde_json::from_slice(&self.b[start..self.pos]).ok()
    }

    fn skip(&mut self) -> Option<()> {
        self.ws();
        match self.peek()? {
            b'"' => self.string().map(|_| ()),
            b'{' | b'[' => {
                let mut depth = 0usize;
                loop {
                    match self.peek()? {
                        b'"' => {
                            self.string()?;
                            continue;
                        }
                        b'{' | b'[' => depth += 1,
                        b'}' | b']' => {
                            depth -= 1;
                            if depth == 0 {
                                self.pos += 1;
                                return Some(());
                            }
                        }
                        _ => {}
                    }
                    self.pos += 1;
                }
            }
            _ => {
                while !matches!(self.peek()?, b',' | b']' | b'}') && !self.peek()?.is_ascii_whitespace() {
                    self.pos += 1;
                }
                Some(())
            }
        }
    }

    fn find(&mut self, path: &[Seg]) -> Option<usize> {
        self.ws();
        let Some(first) = path.first() else {
            return Some(self.pos);
        };
        match (self.peek()?, first) {
            (b'{', Seg::Key(k)) => {
                self.pos += 1;
                loop {
                    self.ws();
                    if self.peek()? == b'}' {
                        return None;
                    }
                    let key = self.string()?;
                    self.ws();
                    if self.peek()? != b':' {
                        return None;
                    }
                    self.pos += 1;
                    if key == *k {
                        return self.find(&path[1..]);
                    }
                    self.skip()?;
                    self.ws();
                    if self.peek()? == b',' {
                        self.pos += 1;
                    } else {
                        return None;
                    }
                }
            }
            (b'[', Seg::Index(i)) => {
                self.pos += 1;
                for n in 0.. {
                    self.ws();
                    if self.peek()? == b']' {
                        return None;
                    }
                    if n == *i {
                        return self.find(&path[1..]);
                    }
                    self.skip()?;
                    self.ws();
                    if self.peek()? == b',' {
                        self.pos += 1;
                    } else {
                        return None;
                    }
                }
                None
            }
            _ => None,
        }
    }
}

/// `(line, column)`, 1-based, of the deepest locatable prefix of `path`.
fn locate(text: &str, path: &[Seg]) -> (usize, usize) {
    for len in (0..=path.len()).rev() {
        let mut loc = Locator { b: text.as_bytes(), pos: 0 };
        if let Some(offset) = loc.find(&path[..len]) {
            let before = &text[..offset];
            let line = before.matches('\n').count() + 1;
            let column = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
            return (line, column);
        }
    }
    (1, 1)
}

fn located(text: &str, path: &[Seg], message: impl std::fmt::Display) -> Error {
    let (line, column) = locate(text, path);
    Error::Parse(format!("line {line}, column {column}: {message}"))
}

fn required<T>(text: &str, field: Option<T>, name: &'static str, kind: &str) -> Result<T> {
    field.ok_or_else(|| located(text, &[], format!("kind {kind:?} requires field {name:?}")))
}

fn forbid<T>(text: &str, field: &Option<T>, name: &'static str, kind: &str) -> Result<()> {
    match field {
        Some(_) => Err(located(text, &[Seg::Key(name)], format!("field {name:?} is not allowed for kind {kind:?}"))),
        None => Ok(()),
    }
}

/// Where a validation error points in the document.
fn error_path(e: &Error, kind: &str) -> Vec<Seg<'static>> {
    use Seg::*;
    let matrix = if kind == "cy3" { "t" } else { "gram" };
    match *e {
        Error::NotSymmetric { i, j, .. } => vec![Key("gram"), Index(j), Index(i)],
        Error::NegativePairing { i, j, .. } => vec![Key("gram"), Index(i), Index(j)],
        Error::NonNegativeSelfIntersection { index, .. } => vec![Key("gram"), Index(index), Index(index)],
        Error::NotSquare { row, .. } => vec![Key(matrix), Index(row)],
        Error::EmptyMatrix => vec![Key(matrix)],
        Error::BadGenus { index, .. } => vec![Key("canonical"), Index(index)],
        Error::SelfKOutOfRange { index, .. } => vec![Key("self_k"), Index(index)],
        Error::NegativeWeight { i, j, .. } => vec![Key("t"), Index(i), Index(j)],
        Error::DuplicateLabel(_) => vec![Key("labels")],
        Error::ZeroVector => vec![Key("realization"), Key("vectors")],
        _ => vec![],
    }
}

fn parse_surface(text: &str, raw: RawDocument) -> Result<Payload> {
    let kind = "surface";
    forbid(text, &raw.divisor_ids, "divisor_ids", kind)?;
    forbid(text, &raw.t, "t", kind)?;
    forbid(text, &raw.self_k, "self_k", kind)?;
    forbid(text, &raw.realization, "realization", kind)?;
    forbid(text, &raw.rows, "rows", kind)?;
    let labels = required(text, raw.labels, "labels", kind)?;
    let gram = required(text, raw.gram, "gram", kind)?;
    let wrap = |e: Error| located(text, &error_path(&e, kind), e);
    let g = GramMatrix::new(gram).map_err(wrap)?;
    let c = Configuration::new(labels, g, raw.canonical).map_err(wrap)?;
    Ok(Payload::Surface(c.with_k_squared(raw.k_squared)))
}

fn parse_cy3(text: &str, raw: RawDocument) -> Result<Payload> {
    let kind = "cy3";
    forbid(text, &raw.gram, "gram", kind)?;
    forbid(text, &raw.canonical, "canonical", kind)?;
    forbid(text, &raw.k_squared, "k_squared", kind)?;
    forbid(text, &raw.rows, "rows", kind)?;
    let labels = required(text, raw.labels, "labels", kind)?;
    let divisor_ids = required(text, raw.divisor_ids, "divisor_ids", kind)?;
    let t_text = required(text, raw.t, "t", kind)?;
    let self_k = required(text, raw.self_k, "self_k", kind)?;
    let mut t = Vec::with_capacity(t_text.len());
    for (i, row) in t_text.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, s) in row.iter().enumerate() {
            let q = exact::parse_rational(s).ok_or_else(|| {
                located(text, &[Seg::Key("t"), Seg::Index(i), Seg::Index(j)], format!("bad rational {s:?}"))
            })?;
            out.push(q);
        }
        t.push(out);
    }
    let wrap = |e: Error| located(text, &error_path(&e, kind), e);
    let realization = match raw.realization {
        Some(r) => {
            let form = GramMatrix::new(r.form)
                .map_err(|e| located(text, &[Seg::Key("realization"), Seg::Key("form")], e))?;
            let vectors = r.vectors.iter().map(|v| v.iter().map(|&x| Int::from(x)).collect()).collect();
            Some(Realization { vectors, form })
        }
        None => None,
    };
    let d = OrientedDiagram::new(labels, divisor_ids, t, self_k, realization).map_err(wrap)?;
    Ok(Payload::Cy3(d))
}

fn parse_reference(text: &str, raw: RawDocument) -> Result<Payload> {
    let kind = "reference";
    forbid(text, &raw.labels, "labels", kind)?;
    forbid(text, &raw.gram, "gram", kind)?;
    forbid(text, &raw.t, "t", kind)?;
    let rows = required(text, raw.rows, "rows", kind)?;
    Ok(Payload::Reference(rows.into_iter().map(|r| ReferenceRow { rho: r.rho, count: r.count }).collect()))
}

/// Parses and validates a document. Errors carry a 1-based line and column.
pub fn parse_document(text: &str) -> Result<Document> {
    let raw: RawDocument = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), strip_position(&e))))?;
    let name = raw.name.clone();
    let meta = raw.meta.clone();
    let payload = match raw.kind.as_str() {
        "surface" => parse_surface(text, raw)?,
        "cy3" => parse_cy3(text, raw)?,
        "reference" => parse_reference(text, raw)?,
        other => {
            return Err(located(
                text,
                &[Seg::Key("kind")],
                format!("unknown kind {other:?}; expected \"surface\", \"cy3\" or \"reference\""),
            ))
        }
    };
    Ok(Document { name, payload, meta })
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(p) => s[..p].to_string(),
        None => s,
    }
}

fn json<T: serde::Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

fn matrix_lines<T: AsRef<[String]>>(rows: &[T], indent: &str) -> String {
    let body: Vec<String> = rows.iter().map(|r| format!("{indent}  [{}]", r.as_ref().join(", "))).collect();
    format!("[\n{}\n{indent}]", body.join(",\n"))
}

fn int_rows(rows: &[Vec<i64>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn indent_block(text: &str, indent: &str) -> String {
    text.lines().enumerate().map(|(i, l)| if i == 0 { l.to_string() } else { format!("{indent}{l}") }).collect::<Vec<_>>().join("\n")
}

/// Canonical text form. `parse_document(render_document(d)) == d` and
/// rendering a parsed canonical document reproduces it byte for byte.
pub fn render_document(doc: &Document) -> String {
    let mut fields: Vec<(String, String)> = vec![
        ("name".into(), json(&doc.name)),
        ("kind".into(), json(doc.payload.kind())),
    ];
    match &doc.payload {
        Payload::Surface(c) => {
            fields.push(("labels".into(), json(c.labels())));
            fields.push(("gram".into(), matrix_lines(&int_rows(&c.gram().rows()), "  ")));
            if let Some(k) = c.canonical() {
                fields.push(("canonical".into(), json(k)));
            }
            if let Some(k2) = c.k_squared() {
                fields.push(("k_squared".into(), json(&k2)));
            }
        }
        Payload::Cy3(d) => {
            fields.push(("labels".into(), json(d.labels())));
            fields.push(("divisor_ids".into(), json(d.divisor_ids())));
            let t: Vec<Vec<String>> =
                d.weights().iter().map(|r| r.iter().map(|q| json(&exact::format_rational(q))).collect()).collect();
            fields.push(("t".into(), matrix_lines(&t, "  ")));
            fields.push(("self_k".into(), json(d.self_k())));
            if let Some(r) = d.realization() {
                let vectors: Vec<Vec<String>> =
                    r.vectors.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
                let body = format!(
                    "{{\n    \"vectors\": {},\n    \"form\": {}\n  }}",
                    matrix_lines(&vectors, "    "),
                    matrix_lines(&int_rows(&r.form.rows()), "    ")
                );
                fields.push(("realization".into(), body));
            }
        }
        Payload::Reference(rows) => {
            let body: Vec<String> =
                rows.iter().map(|r| format!("    {{\"rho\": {}, \"count\": {}}}", json(&r.rho), r.count)).collect();
            fields.push(("rows".into(), format!("[\n{}\n  ]", body.join(",\n"))));
        }
    }
    if !doc.meta.is_empty() {
        let pretty = serde_json::to_string_pretty(&Value::Object(doc.meta.clone())).expect("json value");
        fields.push(("meta".into(), indent_block(&pretty, "  ")));
    }
    let body: Vec<String> = fields.iter().map(|(k, v)| format!("  {}: {v}", json(k))).collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}

/// Rational from a document string, for callers building documents by hand.
pub fn rational(text: &str) -> Result<Rational> {
    exact::parse_rational(text).ok_or_else(|| Error::Parse(format!("bad rational {text:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
  "name": "one",
  "kind": "surface",
  "labels": ["E1"],
  "gram": [
    [-1]
  ]
}
"#;

    #[test]
    fn minimal_surface() {
        let d = parse_document(MINIMAL).unwrap();
        assert_eq!(d.surface().unwrap().len(), 1);
        assert_eq!(render_document(&d), MINIMAL);
    }

    #[test]
    fn asymmetric_gram_names_indices() {
        let text = "{\n  \"name\": \"x\",\n  \"kind\": \"surface\",\n  \"labels\": [\"a\", \"b\"],\n  \"gram\": [\n    [-2, 1],\n    [0, -2]\n  ]\n}";
        let e = parse_document(text).unwrap_err().to_string();
        assert!(e.contains("line 7"), "{e}");
        assert!(e.contains("(0,1)"), "{e}");
    }

    #[test]
    fn negative_pairing_cites_invariant() {
        let text = "{\"name\": \"x\", \"kind\": \"surface\", \"labels\": [\"a\", \"b\"], \"gram\": [[-2, -1], [-1, -2]]}";
        let e = parse_document(text).unwrap_err().to_string();
        assert!(e.contains("E.E' >= 0"), "{e}");
    }

    #[test]
    fn unknown_fields_and_kinds() {
        let text = "{\"name\": \"x\", \"kind\": \"surface\", \"labels\": [], \"gram\": [], \"extra\": 1}";
        assert!(parse_document(text).unwrap_err().to_string().contains("unknown field"));
        let text = "{\"name\": \"x\", \"kind\": \"k3\"}";
        assert!(parse_document(text).unwrap_err().to_string().contains("unknown kind"));
        assert!(parse_document("{").unwrap_err().to_string().contains("line 1"));
    }

    #[test]
    fn self_k_range() {
        let text = "{\"name\": \"x\", \"kind\": \"cy3\", \"labels\": [\"R\"], \"divisor_ids\": [\"D\"], \"t\": [[\"0\"]],\n \"self_k\": [4]}";
        let e = parse_document(text).unwrap_err().to_string();
        assert!(e.contains("line 2") && e.contains("self_k"), "{e}");
    }
}
