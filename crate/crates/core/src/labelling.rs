//! Total labellings, edge weights and the irregularity verifier.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::{canonical, Edge, Graph, Vertex};

pub type Label = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabellingError {
    #[error("edge ({0}, {1}) is not in the graph")]
    UnknownEdge(Vertex, Vertex),
    #[error("edge ({0}, {1}) has no label")]
    MissingEdgeLabel(Vertex, Vertex),
    #[error("vertex {0} has no label")]
    MissingVertexLabel(Vertex),
}

/// Labels for every vertex and edge, together with the bound `k` they claim.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TotalLabelling {
    pub vertex_labels: Vec<Label>,
    pub edge_labels: BTreeMap<Edge, Label>,
    pub bound_k: Label,
}

impl TotalLabelling {
    pub fn new(vertex_labels: Vec<Label>, edge_labels: BTreeMap<Edge, Label>, bound_k: Label) -> Self {
        TotalLabelling { vertex_labels, edge_labels, bound_k }
    }

    /// Every vertex and edge of `g` labelled 1.
    pub fn all_ones(g: &Graph) -> Self {
        TotalLabelling {
            vertex_labels: vec![1; g.vertex_count()],
            edge_labels: g.edges().iter().map(|&e| (e, 1)).collect(),
            bound_k: 1,
        }
    }

    pub fn edge_label(&self, u: Vertex, v: Vertex) -> Option<Label> {
        self.edge_labels.get(&canonical(u, v)).copied()
    }

    /// Largest label actually used.
    pub fn max_label(&self) -> Label {
        self.vertex_labels.iter().chain(self.edge_labels.values()).copied().max().unwrap_or(0)
    }
}

/// wt(uv) = f(uv) + f(u) + f(v).
pub fn edge_weight(g: &Graph, l: &TotalLabelling, e: Edge) -> Result<u32, LabellingError> {
    let (u, v) = canonical(e.0, e.1);
    if !g.has_edge(u, v) {
        return Err(LabellingError::UnknownEdge(u, v));
    }
    let fe = l.edge_label(u, v).ok_or(LabellingError::MissingEdgeLabel(u, v))?;
    let fu = *l.vertex_labels.get(u).ok_or(LabellingError::MissingVertexLabel(u))?;
    let fv = *l.vertex_labels.get(v).ok_or(LabellingError::MissingVertexLabel(v))?;
    Ok(fe + fu + fv)
}

/// Sorted weights of all edges, duplicates kept.
pub fn weight_multiset(g: &Graph, l: &TotalLabelling) -> Result<Vec<u32>, LabellingError> {
    let mut w = g.edges().iter().map(|&e| edge_weight(g, l, e)).collect::<Result<Vec<_>, _>>()?;
    w.sort_unstable();
    Ok(w)
}

/// Something labelled: a vertex or an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Item {
    Vertex(Vertex),
    Edge(Edge),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    LabelOutOfRange {
        item: Item,
        label: Label,
    },
    DuplicateWeight {
        weight: u32,
        edges: Vec<Edge>,
    },
    MissingEdgeLabel(Edge),
    MissingVertexLabel(Vertex),
    /// A label for a pair that is not an edge of the graph.
    UnknownEdge(Edge),
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Vertex(v) => write!(f, "vertex {v}"),
            Item::Edge((u, v)) => write!(f, "edge {u}-{v}"),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LabelOutOfRange { item, label } => write!(f, "{item} has label {label} outside 1..=k"),
            Violation::DuplicateWeight { weight, edges } => {
                let list: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                write!(f, "weight {weight} shared by edges {}", list.join(", "))
            }
            Violation::MissingEdgeLabel((u, v)) => write!(f, "edge {u}-{v} has no label"),
            Violation::MissingVertexLabel(v) => write!(f, "vertex {v} has no label"),
            Violation::UnknownEdge((u, v)) => write!(f, "label given for non-edge {u}-{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `l` is an edge irregular total `bound_k`-labelling of `g`.
///
/// Never fails: every problem is collected, including every group of
/// edges that share a weight.
pub fn verify_irregular(g: &Graph, l: &TotalLabelling) -> VerificationReport {
    let mut violations = Vec::new();
    let in_range = |x: Label| (1..=l.bound_k).contains(&x);

    for v in 0..g.vertex_count() {
        match l.vertex_labels.get(v) {
            None => violations.push(Violation::MissingVertexLabel(v)),
            Some(&x) if !in_range(x) => violations.push(Violation::LabelOutOfRange { item: Item::Vertex(v), label: x }),
            _ => {}
        }
    }
    for (&e, &x) in &l.edge_labels {
        if !g.has_edge(e.0, e.1) {
            violations.push(Violation::UnknownEdge(e));
        } else if !in_range(x) {
            violations.push(Violation::LabelOutOfRange { item: Item::Edge(e), label: x });
        }
    }

    let mut by_weight: BTreeMap<u32, Vec<Edge>> = BTreeMap::new();
    for &e in g.edges() {
        match edge_weight(g, l, e) {
            Ok(w) => by_weight.entry(w).or_default().push(e),
            Err(LabellingError::MissingEdgeLabel(..)) => violations.push(Violation::MissingEdgeLabel(e)),
            // missing vertex labels were reported above
            Err(_) => {}
        }
    }
    for (weight, edges) in by_weight {
        if edges.len() > 1 {
            violations.push(Violation::DuplicateWeight { weight, edges });
        }
    }
    VerificationReport { violations }
}
