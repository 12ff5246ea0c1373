//! Closed-form bounds on the total edge irregularity strength and the
//! value the constructions are expected to achieve.

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("graph has no edges")]
    Edgeless,
    #[error("graph is not a tree")]
    NotATree,
}

/// `ceil(a / b)` for `b > 0`.
#[inline]
pub fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Lower bound from counting weights: `|E|` distinct values inside `[3, 3k]`.
#[inline]
pub fn edge_lower(edges: usize) -> usize {
    ceil_div(edges + 2, 3)
}

/// Lower bound from a vertex of degree `delta`: its incident weights are distinct.
#[inline]
pub fn degree_lower(delta: usize) -> usize {
    ceil_div(delta + 1, 2)
}

/// max(⌈(|E|+2)/3⌉, ⌈(Δ+1)/2⌉).
#[inline]
pub fn formula_tes(edges: usize, delta: usize) -> usize {
    edge_lower(edges).max(degree_lower(delta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsReport {
    pub edge_lower: usize,
    pub degree_lower: usize,
    pub trivial_upper: usize,
    /// `|E| - Δ`, reported whenever `Δ >= (|E| - 1) / 2`. Under this hypothesis it
    /// is not an upper bound in general: for K2 and every star it is 0.
    pub conditional_upper: Option<usize>,
}

pub fn bounds_report(g: &Graph) -> Result<BoundsReport, BoundsError> {
    let m = g.edge_count();
    if m == 0 {
        return Err(BoundsError::Edgeless);
    }
    let delta = g.max_degree().map_err(|_| BoundsError::Edgeless)?;
    Ok(BoundsReport {
        edge_lower: edge_lower(m),
        degree_lower: degree_lower(delta),
        trivial_upper: m,
        conditional_upper: (2 * delta + 1 >= m).then(|| m - delta),
    })
}

/// Vertices with at least one incident edge.
pub fn non_isolated(g: &Graph) -> Vec<Vertex> {
    (0..g.vertex_count()).filter(|&v| g.degree(v) > 0).collect()
}

/// True when the non-isolated part of `g` is exactly K5.
pub fn is_k5_core(g: &Graph) -> bool {
    g.edge_count() == 10 && g.induced_subgraph(&non_isolated(g)).is_k5()
}

/// The value the constructions target: [`formula_tes`], except 5 when the
/// edged part of the graph is K5. Isolated vertices never matter otherwise.
pub fn declared_tes(g: &Graph) -> Result<usize, BoundsError> {
    let m = g.edge_count();
    if m == 0 {
        return Err(BoundsError::Edgeless);
    }
    if is_k5_core(g) {
        return Ok(5);
    }
    let delta = g.max_degree().map_err(|_| BoundsError::Edgeless)?;
    Ok(formula_tes(m, delta))
}

/// λ = max(⌈(n+1)/3⌉, ⌈(Δ+1)/2⌉) for a tree on `n` vertices.
pub fn tree_lambda(t: &Graph) -> Result<usize, BoundsError> {
    if !t.is_tree() {
        return Err(BoundsError::NotATree);
    }
    if t.edge_count() == 0 {
        return Err(BoundsError::Edgeless);
    }
    let n = t.vertex_count();
    let delta = t.max_degree().map_err(|_| BoundsError::Edgeless)?;
    Ok(ceil_div(n + 1, 3).max(degree_lower(delta)))
}
