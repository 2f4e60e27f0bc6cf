//! Text formats: algebra expressions, boundary-path literals, graph files
//! and homomorphism files.
//!
//! Expression grammar (juxtaposition is multiplication):
//!
//! ```text
//! expr  := "0" | [sign] term (sign term)*
//! sign  := "+" | "-" | "−"
//! term  := [coeff ["·"]] atom+
//! atom  := ident ["^*"]
//! coeff := int | int "/" int | gaussian | "(" literal ")"
//! ```
//!
//! Identifiers match `[A-Za-z_][A-Za-z0-9_']*`. A bare `i` in coefficient
//! position is the imaginary unit unless the graph defines a generator `i`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::AlgebraElement;
use crate::analysis::HomSpec;
use crate::error::{AnalysisError, GraphError, GroupoidError, ParseError, RingError, SyntaxError};
use crate::graph::{Atom, Graph, GraphDescription, Path};
use crate::groupoid::BoundaryPath;
use crate::ring::{RingElement, StarRing};

const MINUS: char = '\u{2212}';
const DOT: char = '\u{b7}';

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src.char_indices().collect(),
            src,
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).map(|(_, c)| *c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    /// 1-based column of the current character.
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn byte_offset(&self, pos: usize) -> usize {
        self.chars.get(pos).map_or(self.src.len(), |(b, _)| *b)
    }

    fn slice(&self, from: usize, to: usize) -> &'a str {
        &self.src[self.byte_offset(from)..self.byte_offset(to)]
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            column: self.column(),
            message: message.into(),
        }
    }

    fn eat_digits(&mut self) -> usize {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.pos - start
    }

    fn ident(&mut self) -> Option<&'a str> {
        let start = self.pos;
        if !self
            .peek()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        {
            return None;
        }
        while self.peek().is_some_and(is_ident_char) {
            self.pos += 1;
        }
        Some(self.slice(start, self.pos))
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn is_sign(c: char) -> bool {
    matches!(c, '+' | '-' | MINUS)
}

struct ExprParser<'a, 'g> {
    cur: Cursor<'a>,
    graph: &'g Arc<Graph>,
    ring: StarRing,
}

impl ExprParser<'_, '_> {
    /// Scans an optional coefficient literal and returns its source text.
    fn coefficient(&mut self) -> Result<Option<String>, ParseError> {
        let c = &mut self.cur;
        match c.peek() {
            Some('(') => {
                let start = c.pos;
                c.bump();
                while c.peek().is_some_and(|ch| ch != ')') {
                    c.bump();
                }
                if c.bump() != Some(')') {
                    return Err(c.error("unclosed coefficient parenthesis").into());
                }
                Ok(Some(c.slice(start, c.pos).to_owned()))
            }
            Some(ch) if ch.is_ascii_digit() => {
                let start = c.pos;
                c.eat_digits();
                if c.peek() == Some('/') {
                    c.bump();
                    if c.eat_digits() == 0 {
                        return Err(c.error("expected denominator").into());
                    }
                }
                if c.peek() == Some('i') && !c.peek_at(1).is_some_and(is_ident_char) {
                    c.bump();
                } else if c.peek().is_some_and(|s| s == '+' || s == '-') {
                    // `a+bi` is one literal only when written without spaces
                    let save = c.pos;
                    c.bump();
                    c.eat_digits();
                    if c.peek() == Some('i') && !c.peek_at(1).is_some_and(is_ident_char) {
                        c.bump();
                    } else {
                        c.pos = save;
                    }
                }
                Ok(Some(c.slice(start, c.pos).to_owned()))
            }
            Some('i')
                if !c.peek_at(1).is_some_and(is_ident_char)
                    && self.graph.resolve("i").is_none() =>
            {
                c.bump();
                Ok(Some("i".to_owned()))
            }
            _ => Ok(None),
        }
    }

    fn atom(&mut self) -> Result<Option<AlgebraElement>, ParseError> {
        let Some(name) = self.cur.ident() else {
            return Ok(None);
        };
        let starred = if self.cur.peek() == Some('^') {
            self.cur.bump();
            if self.cur.bump() != Some('*') {
                return Err(SyntaxError {
                    column: self.cur.column() - 1,
                    message: "expected `*` after `^`".into(),
                }
                .into());
            }
            true
        } else {
            false
        };
        let g = self.graph;
        let el = match g.resolve(name) {
            Some(Atom::Vertex(v)) => AlgebraElement::vertex(g.clone(), self.ring, v),
            Some(Atom::Edge(e)) if starred => {
                AlgebraElement::path_star(g.clone(), self.ring, &Path::edge(g, e))
            }
            Some(Atom::Edge(e)) => AlgebraElement::path(g.clone(), self.ring, &Path::edge(g, e)),
            None => return Err(ParseError::UnknownIdentifier(name.to_owned())),
        };
        Ok(Some(el))
    }

    fn term(&mut self) -> Result<AlgebraElement, ParseError> {
        self.cur.skip_ws();
        let coeff = match self.coefficient()? {
            Some(lit) => Some(RingElement::parse(self.ring, &lit).map_err(|e| match e {
                RingError::Malformed(_) => ParseError::Syntax(SyntaxError {
                    column: self.cur.column(),
                    message: format!("malformed coefficient `{lit}`"),
                }),
                other => ParseError::CoefficientOutsideRing(other),
            })?),
            None => None,
        };
        self.cur.skip_ws();
        if self.cur.peek() == Some(DOT) {
            self.cur.bump();
        }
        let mut product: Option<AlgebraElement> = None;
        loop {
            self.cur.skip_ws();
            match self.atom()? {
                Some(a) => {
                    product = Some(match product {
                        Some(p) => p.mul(&a)?,
                        None => a,
                    })
                }
                None => break,
            }
        }
        let Some(product) = product else {
            return Err(self.cur.error("expected a generator").into());
        };
        Ok(match coeff {
            Some(c) => product.scale(&c)?,
            None => product,
        })
    }

    fn expr(&mut self) -> Result<AlgebraElement, ParseError> {
        self.cur.skip_ws();
        let mut acc = AlgebraElement::zero(self.graph.clone(), self.ring);
        if self.cur.peek() == Some('0') && {
            let save = self.cur.pos;
            self.cur.bump();
            self.cur.skip_ws();
            let zero = self.cur.at_end();
            self.cur.pos = save;
            zero
        } {
            return Ok(acc);
        }
        let mut negative = false;
        if let Some(s) = self.cur.peek().filter(|c| is_sign(*c)) {
            self.cur.bump();
            negative = s != '+';
        }
        loop {
            let t = self.term()?;
            acc = if negative { acc.sub(&t)? } else { acc.add(&t)? };
            self.cur.skip_ws();
            match self.cur.peek() {
                None => return Ok(acc),
                Some(s) if is_sign(s) => {
                    self.cur.bump();
                    negative = s != '+';
                }
                Some(other) => {
                    return Err(self.cur.error(format!("unexpected `{other}`")).into());
                }
            }
        }
    }
}

/// Parses and normalizes an expression over `graph` with coefficients in
/// `ring`.
pub fn parse_expression(
    src: &str,
    graph: &Arc<Graph>,
    ring: StarRing,
) -> Result<AlgebraElement, ParseError> {
    ExprParser {
        cur: Cursor::new(src),
        graph,
        ring,
    }
    .expr()
}

fn resolve_edges(g: &Graph, names: &[&str]) -> Result<Vec<crate::graph::EdgeId>, ParseError> {
    names
        .iter()
        .map(|n| {
            g.edge(n)
                .ok_or_else(|| ParseError::UnknownIdentifier((*n).to_owned()))
        })
        .collect()
}

/// A path given as whitespace-separated edge names, or a single vertex name.
pub fn parse_path(src: &str, g: &Graph) -> Result<Path, ParseError> {
    let names: Vec<&str> = src.split_whitespace().collect();
    if let [single] = names.as_slice() {
        if let Some(v) = g.vertex(single) {
            return Ok(Path::vertex(v));
        }
    }
    if names.is_empty() {
        return Err(SyntaxError {
            column: 1,
            message: "empty path".into(),
        }
        .into());
    }
    Ok(Path::from_edges(g, resolve_edges(g, &names)?)?)
}

/// Parses `e1 e2 !` (finite) or `[prefix .] (cycle)^inf` (eventually
/// periodic) into canonical form.
pub fn parse_boundary(src: &str, g: &Graph) -> Result<BoundaryPath, ParseError> {
    let s = src.trim();
    if let Some(body) = s.strip_suffix('!') {
        let path = parse_path(body, g)?;
        return Ok(BoundaryPath::finite(g, path)?);
    }
    let Some(open) = s.find('(') else {
        return Err(SyntaxError {
            column: 1,
            message: "expected `!` or `(cycle)^inf`".into(),
        }
        .into());
    };
    let close = s
        .rfind(')')
        .filter(|c| *c > open)
        .ok_or_else(|| SyntaxError {
            column: open + 1,
            message: "unclosed cycle parenthesis".into(),
        })?;
    if s[close + 1..].trim() != "^inf" {
        return Err(SyntaxError {
            column: s[..close + 1].chars().count() + 1,
            message: "expected `^inf` after the cycle".into(),
        }
        .into());
    }
    let cycle_names: Vec<&str> = s[open + 1..close].split_whitespace().collect();
    if cycle_names.is_empty() {
        return Err(ParseError::Groupoid(GroupoidError::EmptyCycle));
    }
    let cycle = Path::from_edges(g, resolve_edges(g, &cycle_names)?)?;
    let head = s[..open].trim();
    let head = match head.strip_suffix('.') {
        Some(h) => h.trim(),
        None if head.is_empty() => head,
        None => {
            return Err(SyntaxError {
                column: head.chars().count() + 1,
                message: "expected `.` between prefix and cycle".into(),
            }
            .into())
        }
    };
    let prefix = if head.is_empty() {
        Path::vertex(cycle.source())
    } else {
        parse_path(head, g)?
    };
    Ok(BoundaryPath::periodic(g, prefix, cycle)?)
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Graph {
        path: PathBuf,
        #[source]
        source: GraphError,
    },
    #[error("{path}: image of `{generator}`: {source}")]
    Image {
        path: PathBuf,
        generator: String,
        #[source]
        source: ParseError,
    },
    #[error("{path}: {source}")]
    Hom {
        path: PathBuf,
        #[source]
        source: AnalysisError,
    },
}

fn read(path: &FsPath) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn parse_graph_str(text: &str, path: &FsPath) -> Result<Graph, InputError> {
    let raw: GraphDescription = serde_json::from_str(text).map_err(|e| InputError::Format {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    Graph::load(&raw).map_err(|source| InputError::Graph {
        path: path.to_owned(),
        source,
    })
}

/// Reads a graph file: `{"vertices": [...], "edges": [{"id", "src", "dst"}],
/// "infinite_emitters": [...]}`.
pub fn parse_graph_file(path: &FsPath) -> Result<Graph, InputError> {
    parse_graph_str(&read(path)?, path)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomFile {
    source: PathBuf,
    target: PathBuf,
    ring: String,
    vertex_images: BTreeMap<String, String>,
    edge_images: BTreeMap<String, String>,
}

/// Reads a homomorphism file. Graph paths are resolved relative to the
/// file's directory.
pub fn parse_hom_file(path: &FsPath) -> Result<HomSpec, InputError> {
    let format = |message: String| InputError::Format {
        path: path.to_owned(),
        message,
    };
    let spec: HomFile = serde_json::from_str(&read(path)?).map_err(|e| format(e.to_string()))?;
    let base = path.parent().unwrap_or(FsPath::new("."));
    let source = Arc::new(parse_graph_file(&base.join(&spec.source))?);
    let target = if spec.source == spec.target {
        source.clone()
    } else {
        Arc::new(parse_graph_file(&base.join(&spec.target))?)
    };
    let ring: StarRing = spec
        .ring
        .parse()
        .map_err(|e: RingError| format(e.to_string()))?;

    let image = |generator: &String, expr: &String| {
        parse_expression(expr, &target, ring).map_err(|source| InputError::Image {
            path: path.to_owned(),
            generator: generator.clone(),
            source,
        })
    };
    let mut vertex_images = BTreeMap::new();
    for (name, expr) in &spec.vertex_images {
        let v = source
            .vertex(name)
            .ok_or_else(|| format(format!("`{name}` is not a vertex of the source graph")))?;
        vertex_images.insert(v, image(name, expr)?);
    }
    let mut edge_images = BTreeMap::new();
    for (name, expr) in &spec.edge_images {
        let e = source
            .edge(name)
            .ok_or_else(|| format(format!("`{name}` is not an edge of the source graph")))?;
        edge_images.insert(e, image(name, expr)?);
    }
    HomSpec::new(source, target, ring, vertex_images, edge_images).map_err(|source| {
        InputError::Hom {
            path: path.to_owned(),
            source,
        }
    })
}
