//! Text formats.
//!
//! Graph files: a header line `n m`, then `m` lines `u v` with 0-based
//! endpoints. Certificate files: a header line `k`, then one line
//! `v <i> <label>` per vertex and one line `e <u> <v> <label>` per edge.
//! Weights are never stored; they are recomputed from the labels. In both
//! formats lines starting with `#` and blank lines are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{canonical, Graph, GraphError};
use crate::labelling::{edge_weight, verify_irregular, Label, TotalLabelling, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatErrorKind {
    #[error("missing header")]
    MissingHeader,
    #[error("malformed header")]
    BadHeader,
    #[error("bad token {0:?}")]
    BadToken(String),
    #[error("expected {expected} fields, found {found}")]
    FieldCount { expected: usize, found: usize },
    #[error("header declares {declared} edges, file has {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} labelled twice")]
    DuplicateVertex(usize),
    #[error("vertex labels are not 0..{0}")]
    VertexGap(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct FormatError {
    /// 1-based; 0 when the problem is not tied to a line.
    pub line: usize,
    pub kind: FormatErrorKind,
}

fn err(line: usize, kind: FormatErrorKind) -> FormatError {
    FormatError { line, kind }
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let t = line.trim();
        (!t.is_empty() && !t.starts_with('#')).then(|| (i + 1, t.split_whitespace().collect()))
    })
}

fn number<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T, FormatError> {
    tok.parse().map_err(|_| err(line, FormatErrorKind::BadToken(tok.to_string())))
}

fn expect_fields(line: usize, fields: &[&str], expected: usize) -> Result<(), FormatError> {
    if fields.len() != expected {
        return Err(err(line, FormatErrorKind::FieldCount { expected, found: fields.len() }));
    }
    Ok(())
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(err(0, FormatErrorKind::MissingHeader))?;
    if header.len() != 2 {
        return Err(err(hline, FormatErrorKind::BadHeader));
    }
    let n: usize = number(hline, header[0])?;
    let m: usize = number(hline, header[1])?;

    let mut seen = BTreeSet::new();
    let mut pairs = Vec::with_capacity(m);
    for (line, fields) in lines {
        expect_fields(line, &fields, 2)?;
        let u: usize = number(line, fields[0])?;
        let v: usize = number(line, fields[1])?;
        if u >= n || v >= n {
            return Err(err(line, GraphError::OutOfRange { u, v, n }.into()));
        }
        if u == v {
            return Err(err(line, GraphError::Loop(u).into()));
        }
        let e = canonical(u, v);
        if !seen.insert(e) {
            return Err(err(line, GraphError::Duplicate(e.0, e.1).into()));
        }
        pairs.push(e);
    }
    if pairs.len() != m {
        return Err(err(0, FormatErrorKind::EdgeCount { declared: m, found: pairs.len() }));
    }
    Graph::from_edge_list(n, pairs).map_err(|e| err(0, e.into()))
}

pub fn emit_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<TotalLabelling, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(err(0, FormatErrorKind::MissingHeader))?;
    if header.len() != 1 {
        return Err(err(hline, FormatErrorKind::BadHeader));
    }
    let k: Label = number(hline, header[0])?;

    let mut vertices: BTreeMap<usize, Label> = BTreeMap::new();
    let mut edges = BTreeMap::new();
    for (line, fields) in lines {
        match fields[0] {
            "v" => {
                expect_fields(line, &fields, 3)?;
                let i: usize = number(line, fields[1])?;
                if vertices.insert(i, number(line, fields[2])?).is_some() {
                    return Err(err(line, FormatErrorKind::DuplicateVertex(i)));
                }
            }
            "e" => {
                expect_fields(line, &fields, 4)?;
                let u: usize = number(line, fields[1])?;
                let v: usize = number(line, fields[2])?;
                if u == v {
                    return Err(err(line, GraphError::Loop(u).into()));
                }
                let e = canonical(u, v);
                if edges.insert(e, number(line, fields[3])?).is_some() {
                    return Err(err(line, GraphError::Duplicate(e.0, e.1).into()));
                }
            }
            other => return Err(err(line, FormatErrorKind::BadToken(other.to_string()))),
        }
    }
    if vertices.keys().enumerate().any(|(i, &v)| i != v) {
        return Err(err(0, FormatErrorKind::VertexGap(vertices.len())));
    }
    Ok(TotalLabelling::new(vertices.into_values().collect(), edges, k))
}

pub fn emit_certificate(l: &TotalLabelling) -> String {
    let mut out = format!("{}\n", l.bound_k);
    for (i, x) in l.vertex_labels.iter().enumerate() {
        writeln!(out, "v {i} {x}").unwrap();
    }
    for (&(u, v), x) in &l.edge_labels {
        writeln!(out, "e {u} {v} {x}").unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("labelling is not edge irregular ({} violations)", .0.violations.len())]
pub struct UnverifiedLabelling(pub VerificationReport);

/// Dot rendering of a verified labelling: vertices captioned `v<i>:<label>`,
/// edges captioned `<label> (w=<weight>)`.
pub fn emit_labelled_dot(g: &Graph, l: &TotalLabelling) -> Result<String, UnverifiedLabelling> {
    let report = verify_irregular(g, l);
    if !report.ok() {
        return Err(UnverifiedLabelling(report));
    }
    let mut out = String::from("graph tes {\n");
    for (v, x) in l.vertex_labels.iter().enumerate() {
        writeln!(out, "  v{v} [label=\"v{v}:{x}\"];").unwrap();
    }
    for &(u, v) in g.edges() {
        let w = edge_weight(g, l, (u, v)).expect("verified");
        let x = l.edge_label(u, v).expect("verified");
        writeln!(out, "  v{u} -- v{v} [label=\"{x} (w={w})\"];").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
